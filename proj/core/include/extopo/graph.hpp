#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace extopo {

class Rng;

using VertexId = std::uint32_t;
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Undirected edge, stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected graph on vertices 0..n-1 with optional node
/// features (n x F) and an optional class label.
///
/// The constructor flips edges into (min, max) orientation and rejects
/// self-loops, duplicates and out-of-range endpoints with
/// std::invalid_argument. Edge order is otherwise preserved.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t num_vertices, std::vector<Edge> edges = {},
                 std::optional<FeatureMatrix> node_features = std::nullopt,
                 std::optional<int> graph_label = std::nullopt);

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return num_vertices_ == 0; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  bool has_features() const noexcept { return features_.has_value(); }
  const std::optional<FeatureMatrix>& node_features() const noexcept { return features_; }
  std::size_t feature_dim() const noexcept { return features_ ? static_cast<std::size_t>(features_->cols()) : 0; }
  const std::optional<int>& graph_label() const noexcept { return label_; }

  Graph with_features(FeatureMatrix features) const;
  Graph with_label(std::optional<int> label) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void build_adjacency();

  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> adjacency_;
  std::optional<FeatureMatrix> features_;
  std::optional<int> label_;
};

struct GraphDataset {
  std::vector<Graph> graphs;
  std::string name;
  std::size_t num_classes = 0;

  std::size_t size() const noexcept { return graphs.size(); }
  /// Throws std::invalid_argument when a label falls outside [0, num_classes).
  void validate() const;

  friend bool operator==(const GraphDataset&, const GraphDataset&) = default;
};

/// Component id per vertex, numbered 0.. in order of first appearance.
std::vector<std::size_t> connected_components(const Graph& g, std::size_t* count = nullptr);
std::size_t count_components(const Graph& g);

/// G(n, p) with seeded coin flips over pairs (u < v) in lexicographic order.
Graph erdos_renyi(std::size_t n, double p, Rng& rng);

/// Random spanning tree on n vertices plus extra random edges up to
/// num_edges in total. Used for large connected benchmark graphs.
Graph random_connected(std::size_t n, std::size_t num_edges, Rng& rng);

/// Vertex v of g becomes vertex perm[v] of the result. Features follow their
/// vertex; edges are emitted in the original order.
Graph permute_vertices(const Graph& g, std::span<const VertexId> perm);

}  // namespace extopo
