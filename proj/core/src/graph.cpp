#include "extopo/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "extopo/random.hpp"

namespace extopo {

namespace {

std::uint64_t edge_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

}  // namespace

Graph::Graph(std::size_t num_vertices, std::vector<Edge> edges,
             std::optional<FeatureMatrix> node_features, std::optional<int> graph_label)
    : num_vertices_(num_vertices),
      edges_(std::move(edges)),
      features_(std::move(node_features)),
      label_(graph_label) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  for (Edge& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(e.u));
    if (e.v >= num_vertices_) throw std::invalid_argument("graph: edge endpoint out of range");
    if (!seen.insert(edge_key(e)).second) {
      throw std::invalid_argument("graph: duplicate edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ")");
    }
  }
  if (features_ && static_cast<std::size_t>(features_->rows()) != num_vertices_) {
    throw std::invalid_argument("graph: feature rows do not match vertex count");
  }
  build_adjacency();
}

void Graph::build_adjacency() {
  offsets_.assign(num_vertices_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.assign(offsets_.back(), 0);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < num_vertices_; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

Graph Graph::with_features(FeatureMatrix features) const {
  return Graph(num_vertices_, edges_, std::move(features), label_);
}

Graph Graph::with_label(std::optional<int> label) const {
  Graph out = *this;
  out.label_ = label;
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.num_vertices_ != b.num_vertices_ || a.edges_ != b.edges_ || a.label_ != b.label_) return false;
  if (a.features_.has_value() != b.features_.has_value()) return false;
  if (!a.features_) return true;
  return a.features_->rows() == b.features_->rows() && a.features_->cols() == b.features_->cols() &&
         *a.features_ == *b.features_;
}

void GraphDataset::validate() const {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& label = graphs[i].graph_label();
    if (label && (*label < 0 || static_cast<std::size_t>(*label) >= num_classes)) {
      throw std::invalid_argument("dataset: graph " + std::to_string(i) + " label out of range");
    }
  }
}

std::vector<std::size_t> connected_components(const Graph& g, std::size_t* count) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(g.num_vertices(), unset);
  std::vector<VertexId> stack;
  std::size_t next = 0;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(v)) {
        if (comp[w] == unset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

std::size_t count_components(const Graph& g) {
  std::size_t count = 0;
  connected_components(g, &count);
  return count;
}

Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

Graph random_connected(std::size_t n, std::size_t num_edges, Rng& rng) {
  std::vector<Edge> edges;
  edges.reserve(num_edges);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(num_edges * 2);
  for (VertexId v = 1; v < n; ++v) {
    Edge e{static_cast<VertexId>(rng.uniform_index(v)), v};
    seen.insert(edge_key(e));
    edges.push_back(e);
  }
  const std::size_t max_edges = n < 2 ? 0 : n * (n - 1) / 2;
  const std::size_t target = std::min(num_edges, max_edges);
  while (edges.size() < target) {
    VertexId a = static_cast<VertexId>(rng.uniform_index(n));
    VertexId b = static_cast<VertexId>(rng.uniform_index(n));
    if (a == b) continue;
    Edge e{std::min(a, b), std::max(a, b)};
    if (seen.insert(edge_key(e)).second) edges.push_back(e);
  }
  return Graph(n, std::move(edges));
}

Graph permute_vertices(const Graph& g, std::span<const VertexId> perm) {
  if (perm.size() != g.num_vertices()) throw std::invalid_argument("permute_vertices: size mismatch");
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  std::optional<FeatureMatrix> features;
  if (g.node_features()) {
    const FeatureMatrix& x = *g.node_features();
    FeatureMatrix y(x.rows(), x.cols());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) y.row(perm[v]) = x.row(static_cast<Eigen::Index>(v));
    features = std::move(y);
  }
  return Graph(g.num_vertices(), std::move(edges), std::move(features), g.graph_label());
}

}  // namespace extopo
