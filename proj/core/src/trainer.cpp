#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "extopo/augment.hpp"
#include "extopo/contrastive.hpp"
#include "extopo/error.hpp"
#include "extopo/random.hpp"

namespace extopo {

void TrainConfig::validate() const {
  loss.validate();
  if (!(step > 0.0) || !std::isfinite(step)) throw LossError(LossErrorKind::config, "step must be positive");
  if (!(augment_ratio >= 0.0 && augment_ratio < 1.0)) {
    throw LossError(LossErrorKind::config, "augment_ratio must lie in [0, 1)");
  }
  if (output_dim == 0) throw LossError(LossErrorKind::config, "output_dim must be positive");
  for (std::size_t h : hidden) {
    if (h == 0) throw LossError(LossErrorKind::config, "hidden widths must be positive");
  }
  if (encoder_width == 0) throw LossError(LossErrorKind::config, "encoder_width must be positive");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw LossError(LossErrorKind::config, "bad value for " + key + ": '" + value + "'");
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) bad_value(key, v);
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(key, v);
}

}  // namespace

TrainConfig parse_train_config(std::istream& in) {
  TrainConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw LossError(LossErrorKind::config, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "zeta") cfg.loss.zeta = to_double(key, value);
    else if (key == "alpha") cfg.loss.alpha = to_double(key, value);
    else if (key == "beta") cfg.loss.beta = to_double(key, value);
    else if (key == "mean") cfg.loss.mean = to_bool(key, value);
    else if (key == "step") cfg.step = to_double(key, value);
    else if (key == "epochs") cfg.epochs = to_uint(key, value);
    else if (key == "seed") cfg.seed = to_uint(key, value);
    else if (key == "augment_ratio") cfg.augment_ratio = to_double(key, value);
    else if (key == "filtrations") {
      cfg.features.filtrations = split_list(value);
      parse_centrality_list(cfg.features.filtrations);
    } else if (key == "summary") {
      const auto kind = parse_summary_kind(value);
      if (!kind) bad_value(key, value);
      cfg.features.summary = *kind;
    } else if (key == "k_max") cfg.features.k_max = to_uint(key, value);
    else if (key == "samples") cfg.features.samples = to_uint(key, value);
    else if (key == "image_rows") cfg.features.image_rows = to_uint(key, value);
    else if (key == "image_cols") cfg.features.image_cols = to_uint(key, value);
    else if (key == "sigma") cfg.features.sigma = to_double(key, value);
    else if (key == "hidden") {
      cfg.hidden.clear();
      for (const std::string& w : split_list(value)) cfg.hidden.push_back(to_uint(key, w));
    } else if (key == "output_dim") cfg.output_dim = to_uint(key, value);
    else if (key == "batch_size") cfg.batch_size = to_uint(key, value);
    else if (key == "encoder_rounds") cfg.encoder_rounds = to_uint(key, value);
    else if (key == "encoder_width") cfg.encoder_width = to_uint(key, value);
    else throw LossError(LossErrorKind::config, "unknown config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

TrainConfig read_train_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LossError(LossErrorKind::config, "cannot open config file " + path);
  return parse_train_config(in);
}

void write_train_config(std::ostream& out, const TrainConfig& cfg) {
  auto list = [](const auto& items) {
    std::string s;
    for (const auto& x : items) {
      if (!s.empty()) s += ',';
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::string>) s += x;
      else s += std::to_string(x);
    }
    return s;
  };
  auto real = [](double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  out << "zeta = " << real(cfg.loss.zeta) << '\n'
      << "alpha = " << real(cfg.loss.alpha) << '\n'
      << "beta = " << real(cfg.loss.beta) << '\n'
      << "mean = " << (cfg.loss.mean ? "true" : "false") << '\n'
      << "step = " << real(cfg.step) << '\n'
      << "epochs = " << cfg.epochs << '\n'
      << "seed = " << cfg.seed << '\n'
      << "augment_ratio = " << real(cfg.augment_ratio) << '\n'
      << "filtrations = " << list(cfg.features.filtrations) << '\n'
      << "summary = " << to_string(cfg.features.summary) << '\n'
      << "k_max = " << cfg.features.k_max << '\n'
      << "samples = " << cfg.features.samples << '\n'
      << "image_rows = " << cfg.features.image_rows << '\n'
      << "image_cols = " << cfg.features.image_cols << '\n';
  if (cfg.features.sigma) out << "sigma = " << real(*cfg.features.sigma) << '\n';
  out << "hidden = " << list(cfg.hidden) << '\n'
      << "output_dim = " << cfg.output_dim << '\n'
      << "batch_size = " << cfg.batch_size << '\n'
      << "encoder_rounds = " << cfg.encoder_rounds << '\n'
      << "encoder_width = " << cfg.encoder_width << '\n';
}

namespace {

constexpr std::uint64_t tag_init = 1, tag_shuffle = 2, tag_view = 3, tag_encoder = 4;

std::vector<std::vector<std::size_t>> make_batches(std::vector<std::size_t> order, std::size_t batch_size) {
  const std::size_t b = batch_size == 0 ? order.size() : batch_size;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < order.size(); i += b) {
    out.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                     order.begin() + static_cast<std::ptrdiff_t>(std::min(order.size(), i + b)));
  }
  // A single-graph batch has no negatives; fold it into its predecessor.
  if (out.size() > 1 && out.back().size() < 2) {
    out[out.size() - 2].insert(out[out.size() - 2].end(), out.back().begin(), out.back().end());
    out.pop_back();
  }
  return out;
}

}  // namespace

TrainResult train(const GraphDataset& ds, const TrainConfig& cfg, TrainMode mode) {
  cfg.validate();
  if (ds.size() < 2) throw LossError(LossErrorKind::shape, "training needs at least two graphs");
  const FeatureConfig& fc = cfg.features;

  std::vector<std::vector<ExtendedPersistenceDiagram>> diagrams;
  diagrams.reserve(ds.size());
  for (const Graph& g : ds.graphs) diagrams.push_back(epd_bundle(g, make_bundle(g, fc.filtrations, fc.bundle)));

  TrainResult result;
  result.space = fit_feature_space(diagrams, fc);
  const auto dim = static_cast<Eigen::Index>(result.space.dimension());

  Eigen::MatrixXd base(static_cast<Eigen::Index>(ds.size()), dim);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const FeatureVector fv = featurize_diagrams(diagrams[i], result.space);
    base.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(fv.values.data(), dim);
  }
  result.feature_mean = base.colwise().mean();
  result.feature_scale = ((base.rowwise() - result.feature_mean).array().square().colwise().mean()).sqrt().matrix();
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (!(result.feature_scale(c) > 1e-12)) result.feature_scale(c) = 1.0;
  }

  std::vector<std::size_t> widths{static_cast<std::size_t>(dim)};
  widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
  widths.push_back(cfg.output_dim);
  result.model = EtlMlp(widths, derive_seed(cfg.seed, {tag_init}));
  result.initial_model = result.model;

  Eigen::MatrixXd encoder_map;
  if (mode != TrainMode::topo) {
    for (const Graph& g : ds.graphs) {
      if (!g.has_features() || g.feature_dim() != ds.graphs.front().feature_dim()) {
        throw LossError(LossErrorKind::shape, "graph branch needs node features of one width on every graph");
      }
    }
    encoder_map = baseline_map(ds.graphs.front().feature_dim(), cfg.encoder_width, derive_seed(cfg.seed, {tag_encoder}));
  }

  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Eigen::VectorXd theta = result.model.parameters();

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(cfg.seed, {tag_shuffle, epoch}));
    shuffle_rng.shuffle(order);
    const auto batches = make_batches(order, cfg.batch_size);
    double epoch_loss = 0.0;

    for (const auto& batch : batches) {
      const auto b = static_cast<Eigen::Index>(batch.size());
      FeatureBatch fb{Eigen::MatrixXd(2 * b, dim), paired_layout(batch.size())};
      Eigen::MatrixXd graph_rows(mode == TrainMode::topo ? 0 : 2 * b, static_cast<Eigen::Index>(cfg.encoder_width));
      for (int v = 0; v < 2; ++v) {
        for (Eigen::Index i = 0; i < b; ++i) {
          const std::size_t gi = batch[static_cast<std::size_t>(i)];
          const Graph view = augment(ds.graphs[gi], {AugmentKind::node_drop, cfg.augment_ratio,
                                                     derive_seed(cfg.seed, {tag_view, epoch, gi, static_cast<std::uint64_t>(v)})});
          const Eigen::Index row = v * b + i;
          if (mode != TrainMode::graph) {
            const FeatureVector fv = featurize(view, result.space);
            fb.features.row(row) =
                (Eigen::Map<const Eigen::RowVectorXd>(fv.values.data(), dim) - result.feature_mean).cwiseQuotient(
                    result.feature_scale);
          }
          if (mode != TrainMode::topo) graph_rows.row(row) = encode_graph_baseline(view, cfg.encoder_rounds, encoder_map);
        }
      }

      double graph_term = 0.0;
      if (mode != TrainMode::topo) {
        const auto lg = ntxent_loss(EmbeddingBatch{graph_rows, fb.view_of}, cfg.loss.zeta);
        graph_term = cfg.loss.alpha * (cfg.loss.mean ? lg.per_anchor.mean() : lg.per_anchor.sum());
      }
      if (mode == TrainMode::graph) {
        epoch_loss += graph_term;
        continue;
      }

      const EmbeddingBatch topo = etl_forward(result.model, fb);
      Eigen::MatrixXd grad_rows;
      const auto lt = ntxent_loss(topo, cfg.loss.zeta, grad_rows);
      // grad_rows is the gradient of the mean; the summed objective needs 2B times it.
      const double scale = cfg.loss.mean ? 1.0 : static_cast<double>(2 * b);
      if (mode == TrainMode::topo) {
        epoch_loss += lt.loss / static_cast<double>(batches.size());
        grad_rows *= scale;
      } else {
        epoch_loss += graph_term + cfg.loss.beta * (cfg.loss.mean ? lt.loss : lt.per_anchor.sum());
        grad_rows *= cfg.loss.beta * scale;
      }
      theta -= cfg.step * result.model.backward(fb.features, grad_rows);
      result.model.set_parameters(theta);
    }
    result.loss_trace.push_back(epoch_loss);
  }
  return result;
}

TrainResult train_topo(const GraphDataset& ds, const TrainConfig& cfg) { return train(ds, cfg, TrainMode::topo); }

}  // namespace extopo
