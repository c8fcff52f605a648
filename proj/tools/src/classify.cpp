#include "extopo_cli/classify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "extopo/random.hpp"

namespace extopo::cli {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, std::size_t row) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("feature CSV row " + std::to_string(row) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

LabeledTable read_feature_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("feature CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  LabeledTable t;
  for (auto col : split_commas(line)) t.columns.emplace_back(col);
  if (t.columns.size() < 2 || t.columns.back() != "label") {
    throw std::runtime_error("feature CSV header must end with a 'label' column");
  }
  t.columns.pop_back();
  const std::size_t d = t.columns.size();

  std::vector<std::vector<double>> rows;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_commas(line);
    if (cells.size() != d + 1) {
      throw std::runtime_error("feature CSV row " + std::to_string(row_no) + ": expected " + std::to_string(d + 1) +
                               " cells, found " + std::to_string(cells.size()));
    }
    std::vector<double> r(d);
    for (std::size_t c = 0; c < d; ++c) r[c] = parse_number<double>(cells[c], row_no);
    rows.push_back(std::move(r));
    t.labels.push_back(parse_number<int>(cells[d], row_no));
  }
  t.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < d; ++c) t.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
  }
  return t;
}

LabeledTable read_feature_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_feature_csv(in);
}

void LogisticModel::fit(const Eigen::MatrixXd& x, const std::vector<int>& y, int num_classes,
                        const LogisticOptions& options) {
  const Eigen::Index n = x.rows(), d = x.cols(), k = num_classes;
  if (n == 0 || static_cast<std::size_t>(n) != y.size()) throw std::invalid_argument("logistic fit: bad shapes");
  mean_ = x.colwise().mean();
  scale_ = ((x.rowwise() - mean_).array().square().colwise().mean()).sqrt().matrix();
  for (Eigen::Index c = 0; c < d; ++c) {
    if (!(scale_(c) > 1e-12)) scale_(c) = 1.0;
  }
  const Eigen::MatrixXd z = (x.rowwise() - mean_).array().rowwise() / scale_.array();

  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, k);
  for (Eigen::Index i = 0; i < n; ++i) onehot(i, y[static_cast<std::size_t>(i)]) = 1.0;

  weights_ = Eigen::MatrixXd::Zero(d, k);
  bias_ = Eigen::RowVectorXd::Zero(k);
  for (std::size_t it = 0; it < options.iterations; ++it) {
    Eigen::MatrixXd logits = z * weights_;
    logits.rowwise() += bias_;
    const Eigen::VectorXd top = logits.rowwise().maxCoeff();
    Eigen::MatrixXd p = (logits.colwise() - top).array().exp();
    p.array().colwise() /= p.rowwise().sum().array();
    const Eigen::MatrixXd diff = (p - onehot) / static_cast<double>(n);
    weights_ -= options.step * (z.transpose() * diff + options.l2 * weights_);
    bias_ -= options.step * diff.colwise().sum();
  }
}

std::vector<int> LogisticModel::predict(const Eigen::MatrixXd& x) const {
  const Eigen::MatrixXd z = (x.rowwise() - mean_).array().rowwise() / scale_.array();
  Eigen::MatrixXd logits = z * weights_;
  logits.rowwise() += bias_;
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::Index best = 0;
    logits.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& labels, std::size_t folds,
                                                       std::uint64_t seed, std::size_t* reshuffles) {
  if (folds < 2 || folds > labels.size()) throw std::invalid_argument("need 2 <= folds <= number of rows");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    Rng rng(derive_seed(seed, {attempt}));
    std::vector<std::vector<std::size_t>> out(folds);
    std::size_t next = 0;
    for (auto& [label, members] : by_class) {
      std::vector<std::size_t> shuffled = members;
      rng.shuffle(shuffled);
      for (std::size_t idx : shuffled) out[next++ % folds].push_back(idx);
    }
    bool ok = true;
    for (std::size_t f = 0; f < folds && ok; ++f) {
      std::map<int, std::size_t> train_classes;
      for (std::size_t g = 0; g < folds; ++g) {
        if (g == f) continue;
        for (std::size_t idx : out[g]) ++train_classes[labels[idx]];
      }
      ok = train_classes.size() >= 2;
    }
    if (ok) {
      for (auto& fold : out) std::sort(fold.begin(), fold.end());
      return out;
    }
    std::cerr << "warning: fold split with a single-class training part, reshuffling\n";
    if (reshuffles) ++*reshuffles;
  }
  throw std::runtime_error("cannot build folds with two classes in every training part");
}

CrossValidation cross_validate(const LabeledTable& table, std::size_t folds, std::uint64_t seed,
                               const LogisticOptions& options) {
  std::map<int, int> remap;
  for (int l : table.labels) remap.emplace(l, 0);
  if (remap.size() < 2) throw std::runtime_error("classification needs at least two classes");
  int next = 0;
  for (auto& [label, idx] : remap) idx = next++;
  std::vector<int> y;
  std::map<int, std::size_t> counts;
  for (int l : table.labels) {
    y.push_back(remap[l]);
    ++counts[l];
  }

  CrossValidation cv;
  std::size_t majority = 0;
  for (const auto& [l, c] : counts) majority = std::max(majority, c);
  cv.majority_rate = static_cast<double>(majority) / static_cast<double>(y.size());

  const auto split = stratified_folds(y, folds, seed, &cv.reshuffles);
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<Eigen::Index> train_idx, test_idx;
    for (std::size_t g = 0; g < folds; ++g) {
      for (std::size_t idx : split[g]) (g == f ? test_idx : train_idx).push_back(static_cast<Eigen::Index>(idx));
    }
    const Eigen::MatrixXd xtr = table.features(train_idx, Eigen::all);
    const Eigen::MatrixXd xte = table.features(test_idx, Eigen::all);
    std::vector<int> ytr;
    for (auto i : train_idx) ytr.push_back(y[static_cast<std::size_t>(i)]);

    LogisticModel model;
    model.fit(xtr, ytr, next, options);
    const auto pred = model.predict(xte);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == y[static_cast<std::size_t>(test_idx[i])];
    cv.fold_accuracy.push_back(test_idx.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(test_idx.size()));
  }
  double sum = 0.0;
  for (double a : cv.fold_accuracy) sum += a;
  cv.mean = sum / static_cast<double>(folds);
  double var = 0.0;
  for (double a : cv.fold_accuracy) var += (a - cv.mean) * (a - cv.mean);
  cv.stddev = std::sqrt(var / static_cast<double>(folds));
  return cv;
}

}  // namespace extopo::cli
