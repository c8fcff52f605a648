#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "extopo/contrastive.hpp"
#include "extopo/error.hpp"
#include "extopo/random.hpp"
#include "ntxent_eval.hpp"

namespace extopo {

EtlMlp::EtlMlp(std::vector<std::size_t> widths, std::uint64_t seed) : widths_(std::move(widths)) {
  if (widths_.size() < 2) throw LossError(LossErrorKind::shape, "an MLP needs at least input and output widths");
  for (std::size_t w : widths_) {
    if (w == 0) throw LossError(LossErrorKind::shape, "layer widths must be positive");
  }
  for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(widths_[l]), out = static_cast<Eigen::Index>(widths_[l + 1]);
    Rng rng(derive_seed(seed, {0x6d6c70u, l}));
    const double limit = std::sqrt(6.0 / static_cast<double>(in));
    Eigen::MatrixXd w(out, in);
    for (Eigen::Index r = 0; r < out; ++r) {
      for (Eigen::Index c = 0; c < in; ++c) w(r, c) = rng.uniform(-limit, limit);
    }
    weights_.push_back(std::move(w));
    biases_.push_back(Eigen::VectorXd::Zero(out));
  }
}

EtlMlp EtlMlp::zeros(std::vector<std::size_t> widths) {
  EtlMlp m(std::move(widths), 0);
  for (auto& w : m.weights_) w.setZero();
  return m;
}

EtlMlp EtlMlp::identity(std::size_t dim) {
  EtlMlp m = zeros({dim, dim});
  m.weights_[0].setIdentity();
  return m;
}

std::vector<std::size_t> EtlMlp::default_widths(std::size_t input_dim) { return {input_dim, 128, 128, 64, 64, 32}; }

std::size_t EtlMlp::parameter_count() const noexcept {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) n += static_cast<std::size_t>(weights_[l].size() + biases_[l].size());
  return n;
}

Eigen::VectorXd EtlMlp::parameters() const {
  Eigen::VectorXd theta(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) theta(k++) = weights_[l](r, c);
    }
    for (Eigen::Index r = 0; r < biases_[l].size(); ++r) theta(k++) = biases_[l](r);
  }
  return theta;
}

void EtlMlp::set_parameters(const Eigen::VectorXd& theta) {
  if (static_cast<std::size_t>(theta.size()) != parameter_count()) {
    throw LossError(LossErrorKind::shape, "parameter vector has the wrong length");
  }
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) weights_[l](r, c) = theta(k++);
    }
    for (Eigen::Index r = 0; r < biases_[l].size(); ++r) biases_[l](r) = theta(k++);
  }
}

namespace {

template <class S>
detail::Mat<S> forward_as(const std::vector<Eigen::MatrixXd>& weights, const std::vector<Eigen::VectorXd>& biases,
                          const detail::Mat<S>& x, std::vector<detail::Mat<S>>* pre = nullptr) {
  detail::Mat<S> h = x;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    detail::Mat<S> z = h * weights[l].cast<S>().transpose();
    z.rowwise() += biases[l].cast<S>().transpose();
    if (pre) pre->push_back(z);
    h = l + 1 < weights.size() ? detail::Mat<S>(z.cwiseMax(S(0))) : z;
  }
  return h;
}

}  // namespace

Eigen::MatrixXd EtlMlp::forward(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.cols()) != input_dim()) {
    throw LossError(LossErrorKind::shape, "feature width " + std::to_string(x.cols()) + " differs from MLP input " +
                                              std::to_string(input_dim()));
  }
  return forward_as<double>(weights_, biases_, x);
}

Eigen::VectorXd EtlMlp::backward(const Eigen::MatrixXd& x, const Eigen::MatrixXd& grad_out) const {
  if (static_cast<std::size_t>(x.cols()) != input_dim() || grad_out.rows() != x.rows() ||
      static_cast<std::size_t>(grad_out.cols()) != output_dim()) {
    throw LossError(LossErrorKind::shape, "backward shapes do not match the MLP");
  }
  std::vector<Eigen::MatrixXd> pre;
  forward_as<double>(weights_, biases_, x, &pre);

  std::vector<Eigen::MatrixXd> gw(weights_.size());
  std::vector<Eigen::VectorXd> gb(weights_.size());
  Eigen::MatrixXd delta = grad_out;
  for (std::size_t l = weights_.size(); l-- > 0;) {
    const Eigen::MatrixXd input = l == 0 ? x : Eigen::MatrixXd(pre[l - 1].cwiseMax(0.0));
    gw[l] = delta.transpose() * input;
    gb[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      delta = (delta * weights_[l]).cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
    }
  }

  Eigen::VectorXd grad(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (Eigen::Index r = 0; r < gw[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < gw[l].cols(); ++c) grad(k++) = gw[l](r, c);
    }
    for (Eigen::Index r = 0; r < gb[l].size(); ++r) grad(k++) = gb[l](r);
  }
  return grad;
}

void EtlMlp::save(std::ostream& out) const {
  out << "etl_mlp";
  for (std::size_t w : widths_) out << ' ' << w;
  out << '\n';
  const Eigen::VectorXd theta = parameters();
  char buf[40];
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g\n", theta(k));
    out << buf;
  }
}

EtlMlp EtlMlp::load(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("etl_mlp", 0) != 0) {
    throw LossError(LossErrorKind::shape, "not an MLP parameter file");
  }
  std::vector<std::size_t> widths;
  std::size_t pos = 7;
  while (pos < header.size()) {
    std::size_t used = 0;
    widths.push_back(std::stoul(header.substr(pos), &used));
    pos += used;
    while (pos < header.size() && header[pos] == ' ') ++pos;
  }
  EtlMlp m = zeros(widths);
  Eigen::VectorXd theta(static_cast<Eigen::Index>(m.parameter_count()));
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    if (!(in >> theta(k))) throw LossError(LossErrorKind::shape, "MLP parameter file is truncated");
  }
  m.set_parameters(theta);
  return m;
}

bool EtlMlp::operator==(const EtlMlp& other) const {
  if (widths_ != other.widths_) return false;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    if (weights_[l] != other.weights_[l] || biases_[l] != other.biases_[l]) return false;
  }
  return true;
}

EmbeddingBatch etl_forward(const EtlMlp& mlp, const FeatureBatch& features) {
  if (static_cast<std::size_t>(features.features.rows()) != features.view_of.size()) {
    throw LossError(LossErrorKind::shape, "feature rows and view map differ in length");
  }
  EmbeddingBatch out{mlp.forward(features.features), features.view_of};
  out.validate();
  return out;
}

namespace {

long double loss_at(const EtlMlp& base, const Eigen::VectorXd& theta, const FeatureBatch& fb,
                    const std::vector<std::size_t>& pos, long double zeta,
                    std::vector<Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>>* masks) {
  EtlMlp m = base;
  m.set_parameters(theta);
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;
  for (std::size_t l = 0; l < m.num_layers(); ++l) {
    w.push_back(m.weight(l));
    b.push_back(m.bias(l));
  }
  std::vector<detail::Mat<long double>> pre;
  const detail::Mat<long double> y = forward_as<long double>(w, b, fb.features.cast<long double>(), &pre);
  if (masks) {
    masks->clear();
    for (std::size_t l = 0; l + 1 < pre.size(); ++l) masks->push_back((pre[l].array() > 0.0L).matrix());
  }
  return detail::ntxent_per_anchor<long double>(y, pos, zeta).mean();
}

}  // namespace

long double finite_difference(const EtlMlp& mlp, const FeatureBatch& features, double zeta, std::size_t index,
                              long double h) {
  const EmbeddingBatch probe = etl_forward(mlp, features);
  const auto pos = probe.positives();
  const Eigen::VectorXd theta = mlp.parameters();
  // Perturb in long double, then round the shifted parameter once.
  Eigen::VectorXd plus = theta, minus = theta;
  plus(static_cast<Eigen::Index>(index)) = static_cast<double>(theta(static_cast<Eigen::Index>(index)) + h);
  minus(static_cast<Eigen::Index>(index)) = static_cast<double>(theta(static_cast<Eigen::Index>(index)) - h);
  const long double step = static_cast<long double>(plus(static_cast<Eigen::Index>(index))) -
                           static_cast<long double>(minus(static_cast<Eigen::Index>(index)));
  return (loss_at(mlp, plus, features, pos, zeta, nullptr) - loss_at(mlp, minus, features, pos, zeta, nullptr)) / step;
}

GradCheckReport grad_check(const EtlMlp& mlp, const FeatureBatch& features, const LossConfig& cfg,
                           const GradCheckOptions& options) {
  if (!(options.h > 0.0)) throw LossError(LossErrorKind::config, "grad_check needs h > 0");
  const EmbeddingBatch out = etl_forward(mlp, features);
  const auto pos = out.positives();
  Eigen::MatrixXd grad_rows;
  ntxent_loss(out, cfg.zeta, grad_rows);
  const Eigen::VectorXd analytic = mlp.backward(features.features, grad_rows);
  const Eigen::VectorXd theta = mlp.parameters();

  std::vector<Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>> base_mask, mask;
  loss_at(mlp, theta, features, pos, cfg.zeta, &base_mask);

  GradCheckReport report;
  Rng rng(options.seed);
  const std::size_t n = static_cast<std::size_t>(theta.size());
  const std::size_t max_draws = 20 * options.samples + 100;
  for (std::size_t draw = 0; draw < max_draws && report.checked < options.samples; ++draw) {
    const auto k = static_cast<Eigen::Index>(rng.uniform_index(n));
    Eigen::VectorXd plus = theta, minus = theta;
    plus(k) += options.h;
    minus(k) -= options.h;
    const long double lp = loss_at(mlp, plus, features, pos, cfg.zeta, &mask);
    const bool kink_plus = mask != base_mask;
    const long double lm = loss_at(mlp, minus, features, pos, cfg.zeta, &mask);
    if (kink_plus || mask != base_mask) {
      ++report.skipped_kinks;
      continue;
    }
    const long double step = static_cast<long double>(plus(k)) - static_cast<long double>(minus(k));
    const double numeric = static_cast<double>((lp - lm) / step);
    const double a = analytic(k);
    const double abs_err = std::abs(a - numeric);
    const double rel = abs_err / std::max({std::abs(a), std::abs(numeric), options.floor});
    report.max_abs_error = std::max(report.max_abs_error, abs_err);
    report.max_rel_error = std::max(report.max_rel_error, rel);
    ++report.checked;
  }
  return report;
}

}  // namespace extopo
