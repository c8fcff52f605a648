#include <cmath>
#include <stdexcept>

#include "extopo/contrastive.hpp"
#include "extopo/random.hpp"

namespace extopo {

Eigen::MatrixXd baseline_map(std::size_t feature_dim, std::size_t width, std::uint64_t seed) {
  if (feature_dim == 0 || width == 0) throw std::invalid_argument("baseline_map: dimensions must be positive");
  Rng rng(seed);
  const double sd = 1.0 / std::sqrt(static_cast<double>(feature_dim));
  Eigen::MatrixXd map(static_cast<Eigen::Index>(feature_dim), static_cast<Eigen::Index>(width));
  for (Eigen::Index r = 0; r < map.rows(); ++r) {
    for (Eigen::Index c = 0; c < map.cols(); ++c) map(r, c) = rng.normal(0.0, sd);
  }
  return map;
}

Eigen::RowVectorXd encode_graph_baseline(const Graph& g, std::size_t rounds, const Eigen::MatrixXd& map) {
  if (!g.has_features()) throw std::invalid_argument("encode_graph_baseline: graph has no node features");
  if (static_cast<std::size_t>(map.rows()) != g.feature_dim()) {
    throw std::invalid_argument("encode_graph_baseline: map rows differ from the feature dimension");
  }
  if (g.num_vertices() == 0) return Eigen::RowVectorXd::Zero(map.cols());

  Eigen::MatrixXd h = *g.node_features();
  for (std::size_t round = 0; round < rounds; ++round) {
    Eigen::MatrixXd next(h.rows(), h.cols());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      Eigen::RowVectorXd acc = h.row(v);
      for (VertexId w : g.neighbors(v)) acc += h.row(w);
      next.row(v) = acc / static_cast<double>(g.degree(v) + 1);
    }
    h = std::move(next);
  }
  const Eigen::MatrixXd z = (h * map).cwiseMax(0.0);
  return z.colwise().mean();
}

Eigen::RowVectorXd encode_graph_baseline(const Graph& g, std::size_t rounds, std::size_t width, std::uint64_t seed) {
  if (!g.has_features()) throw std::invalid_argument("encode_graph_baseline: graph has no node features");
  return encode_graph_baseline(g, rounds, baseline_map(g.feature_dim(), width, seed));
}

}  // namespace extopo
