#include <algorithm>
#include <cstdio>
#include <ostream>

#include "extopo/error.hpp"
#include "extopo/vectorization.hpp"

namespace extopo {

const char* to_string(SummaryKind kind) noexcept { return kind == SummaryKind::EPL ? "EPL" : "EPI"; }

std::optional<SummaryKind> parse_summary_kind(std::string_view token) noexcept {
  if (token == "EPL" || token == "epl") return SummaryKind::EPL;
  if (token == "EPI" || token == "epi") return SummaryKind::EPI;
  return std::nullopt;
}

std::size_t FeatureBlock::size() const noexcept {
  std::size_t n = 1;
  for (std::size_t s : shape) n *= s;
  return n;
}

std::vector<FeatureBlock> FeatureSpace::layout() const {
  std::vector<FeatureBlock> blocks;
  for (const std::string& name : config.filtrations) {
    FeatureBlock b{name, config.summary, {}};
    if (config.summary == SummaryKind::EPL) b.shape = {2, config.k_max, config.samples};
    else b.shape = {config.image_rows, config.image_cols};
    blocks.push_back(std::move(b));
  }
  return blocks;
}

std::size_t FeatureSpace::dimension() const noexcept {
  const std::size_t per = config.summary == SummaryKind::EPL ? 2 * config.k_max * config.samples
                                                             : config.image_rows * config.image_cols;
  return per * config.filtrations.size();
}

std::vector<std::string> FeatureSpace::column_names() const {
  std::vector<std::string> names;
  names.reserve(dimension());
  for (const FeatureBlock& b : layout()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      names.push_back(b.function_name + ":" + to_string(b.summary) + ":" + std::to_string(i));
    }
  }
  return names;
}

namespace {

void check_config(const FeatureConfig& c) {
  if (c.filtrations.empty()) throw VectorizeError(VectorizeErrorKind::params, "no filtrations configured");
  if (c.summary == SummaryKind::EPL && (c.k_max == 0 || c.samples == 0)) {
    throw VectorizeError(VectorizeErrorKind::params, "landscape needs k_max >= 1 and samples >= 1");
  }
  if (c.summary == SummaryKind::EPI && (c.image_rows == 0 || c.image_cols == 0)) {
    throw VectorizeError(VectorizeErrorKind::resolution, "image resolution must be at least 1x1");
  }
  if (c.sigma && !(*c.sigma > 0.0)) throw VectorizeError(VectorizeErrorKind::sigma, "image sigma must be positive");
}

}  // namespace

FeatureSpace fit_feature_space(const std::vector<std::vector<ExtendedPersistenceDiagram>>& diagrams,
                               const FeatureConfig& config) {
  check_config(config);
  const std::size_t q = config.filtrations.size();
  FeatureSpace space;
  space.config = config;
  for (std::size_t j = 0; j < q; ++j) {
    bool any = false;
    double lo = 0.0, hi = 0.0;
    std::vector<ExtendedPersistenceDiagram> nonzero;
    nonzero.reserve(diagrams.size());
    for (const auto& per_graph : diagrams) {
      if (per_graph.size() != q) throw VectorizeError(VectorizeErrorKind::params, "diagram count differs from filtration count");
      ExtendedPersistenceDiagram kept;
      for (const EpdPoint& p : per_graph[j].points) {
        if (!any) {
          lo = hi = p.birth;
          any = true;
        }
        lo = std::min({lo, p.birth, p.death});
        hi = std::max({hi, p.birth, p.death});
        if (p.birth != p.death) kept.points.push_back(p);
      }
      nonzero.push_back(std::move(kept));
    }
    space.landscape_ranges.emplace_back(lo, hi);

    const double sigma = config.sigma ? *config.sigma : default_sigma(nonzero);
    space.sigmas.push_back(sigma);
    const double pad = 3.0 * sigma;
    bool seen = false;
    ImageBounds box{};
    for (const auto& d : nonzero) {
      for (const EpdPoint& p : d.points) {
        if (!seen) {
          box = {p.birth, p.birth, p.death, p.death};
          seen = true;
        }
        box.b_min = std::min(box.b_min, p.birth);
        box.b_max = std::max(box.b_max, p.birth);
        box.d_min = std::min(box.d_min, p.death);
        box.d_max = std::max(box.d_max, p.death);
      }
    }
    if (!seen) box = {0.0, 0.0, 0.0, 0.0};
    space.image_bounds.push_back({box.b_min - pad, box.b_max + pad, box.d_min - pad, box.d_max + pad});
  }
  return space;
}

FeatureSpace fit_feature_space(std::span<const Graph> graphs, const FeatureConfig& config) {
  check_config(config);
  std::vector<std::vector<ExtendedPersistenceDiagram>> diagrams;
  diagrams.reserve(graphs.size());
  for (const Graph& g : graphs) {
    diagrams.push_back(epd_bundle(g, make_bundle(g, config.filtrations, config.bundle)));
  }
  return fit_feature_space(diagrams, config);
}

FeatureVector featurize_diagrams(std::span<const ExtendedPersistenceDiagram> diagrams, const FeatureSpace& space) {
  const FeatureConfig& c = space.config;
  if (diagrams.size() != c.filtrations.size() || space.landscape_ranges.size() != c.filtrations.size()) {
    throw VectorizeError(VectorizeErrorKind::params, "diagram count differs from filtration count");
  }
  FeatureVector out;
  out.layout = space.layout();
  out.values.reserve(space.dimension());
  for (std::size_t j = 0; j < diagrams.size(); ++j) {
    if (c.summary == SummaryKind::EPL) {
      const LandscapeSet ls = landscape(diagrams[j], c.k_max, UniformGrid{c.samples, space.landscape_ranges[j]});
      for (const Eigen::MatrixXd* m : {&ls.pos_levels, &ls.neg_levels}) {
        for (Eigen::Index r = 0; r < m->rows(); ++r) {
          for (Eigen::Index t = 0; t < m->cols(); ++t) out.values.push_back((*m)(r, t));
        }
      }
    } else {
      ImageParams params;
      params.rows = c.image_rows;
      params.cols = c.image_cols;
      params.sigma = space.sigmas[j];
      params.weight = c.weight;
      params.bounds = space.image_bounds[j];
      const PersistenceImage img = persistence_image(diagrams[j], params);
      for (Eigen::Index r = 0; r < img.pixels.rows(); ++r) {
        for (Eigen::Index col = 0; col < img.pixels.cols(); ++col) out.values.push_back(img.pixels(r, col));
      }
    }
  }
  return out;
}

FeatureVector featurize(const Graph& g, const FiltrationBundle& bundle, const FeatureSpace& space) {
  const auto diagrams = epd_bundle(g, bundle);
  return featurize_diagrams(diagrams, space);
}

FeatureVector featurize(const Graph& g, const FeatureSpace& space) {
  return featurize(g, make_bundle(g, space.config.filtrations, space.config.bundle), space);
}

void write_feature_csv(std::ostream& out, const FeatureSpace& space, std::span<const FeatureVector> rows,
                       std::span<const int> labels) {
  if (labels.size() != rows.size()) throw std::invalid_argument("write_feature_csv: label count differs from row count");
  for (const std::string& name : space.column_names()) out << name << ',';
  out << "label\n";
  char buf[40];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].values.size() != space.dimension()) {
      throw std::invalid_argument("write_feature_csv: feature length differs from the space dimension");
    }
    for (double v : rows[i].values) {
      std::snprintf(buf, sizeof buf, "%.9g,", v);
      out << buf;
    }
    out << labels[i] << '\n';
  }
}

}  // namespace extopo
