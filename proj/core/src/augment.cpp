#include "extopo/augment.hpp"

#include <cmath>
#include <string>

#include "extopo/error.hpp"
#include "extopo/random.hpp"

namespace extopo {

Graph augment(const Graph& g, const AugmentationSpec& spec) {
  if (g.empty()) throw AugmentError(AugmentErrorKind::empty, "augment: empty graph");
  if (!(spec.ratio >= 0.0 && spec.ratio < 1.0)) {
    throw AugmentError(AugmentErrorKind::ratio, "augment: ratio must lie in [0, 1)");
  }
  Rng rng(spec.seed);

  if (spec.kind == AugmentKind::edge_drop) {
    const auto m = g.num_edges();
    const auto drop = static_cast<std::size_t>(std::floor(spec.ratio * static_cast<double>(m)));
    std::vector<bool> removed(m, false);
    for (std::size_t i : rng.sample_without_replacement(m, drop)) removed[i] = true;
    std::vector<Edge> kept;
    kept.reserve(m - drop);
    for (std::size_t i = 0; i < m; ++i) {
      if (!removed[i]) kept.push_back(g.edges()[i]);
    }
    return Graph(g.num_vertices(), std::move(kept), g.node_features(), g.graph_label());
  }

  const auto n = g.num_vertices();
  const auto drop = static_cast<std::size_t>(std::floor(spec.ratio * static_cast<double>(n)));
  constexpr VertexId gone = static_cast<VertexId>(-1);
  std::vector<VertexId> new_id(n, 0);
  for (std::size_t v : rng.sample_without_replacement(n, drop)) new_id[v] = gone;
  VertexId next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (new_id[v] != gone) new_id[v] = next++;
  }

  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (new_id[e.u] != gone && new_id[e.v] != gone) kept.push_back({new_id[e.u], new_id[e.v]});
  }
  std::optional<FeatureMatrix> features;
  if (g.node_features()) {
    const FeatureMatrix& x = *g.node_features();
    FeatureMatrix y(static_cast<Eigen::Index>(next), x.cols());
    for (std::size_t v = 0; v < n; ++v) {
      if (new_id[v] != gone) y.row(new_id[v]) = x.row(static_cast<Eigen::Index>(v));
    }
    features = std::move(y);
  }
  return Graph(next, std::move(kept), std::move(features), g.graph_label());
}

GraphDataset inject_feature_noise(const GraphDataset& ds, double fraction, double mean, double stddev,
                                  std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw NoiseError(NoiseErrorKind::fraction, "inject_feature_noise: fraction must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!ds.graphs[i].has_features()) {
      throw NoiseError(NoiseErrorKind::no_features,
                       "inject_feature_noise: graph " + std::to_string(i) + " has no node features");
    }
  }
  Rng rng(seed);
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ds.size())));
  GraphDataset out = ds;
  for (std::size_t i : rng.sample_without_replacement(ds.size(), count)) {
    FeatureMatrix x = *ds.graphs[i].node_features();
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) x(r, c) += rng.normal(mean, stddev);
    }
    out.graphs[i] = ds.graphs[i].with_features(std::move(x));
  }
  return out;
}

}  // namespace extopo
