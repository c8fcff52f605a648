#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "extopo/graph.hpp"

namespace extopo {

/// A finite real value per vertex: one filtration function.
class VertexFunction {
 public:
  VertexFunction() = default;
  /// Throws FiltrationError(non_finite) if any value is NaN or infinite.
  VertexFunction(std::vector<double> values, std::string name);

  const std::vector<double>& values() const noexcept { return values_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t v) const noexcept { return values_[v]; }

 private:
  std::vector<double> values_;
  std::string name_;
};

struct FiltrationBundle {
  std::vector<VertexFunction> functions;
  std::size_t size() const noexcept { return functions.size(); }
};

enum class Centrality { degree, betweenness, closeness, subgraph };

std::optional<Centrality> parse_centrality(std::string_view name) noexcept;
const char* to_string(Centrality c) noexcept;

/// Raw vertex degree.
VertexFunction degree_centrality(const Graph& g);

/// Exact shortest-path betweenness (Brandes accumulation, unweighted),
/// counting each unordered pair once and dividing by (N-1)(N-2)/2.
/// Zero for N < 3.
VertexFunction betweenness_centrality(const Graph& g);

/// (r - 1) / sum of distances to the r - 1 other vertices reachable from v,
/// i.e. closeness inside v's own component. Isolated vertices get 0.
VertexFunction closeness_centrality(const Graph& g);

struct SubgraphOptions {
  std::size_t max_vertices = 20000;
  int terms = 30;  ///< K: the series is summed for k = 0..K
};

/// diag(exp(A)) truncated to sum_{k=0..K} (A^k)_vv / k!, accumulated by one
/// sparse matrix-vector product per term and basis vector.
///
/// Truncation error per vertex is at most rho^(K+1) / (K+1)! * e^rho where
/// rho is the spectral radius of A (rho <= max degree). For K = 30 this is
/// below 1e-8 when rho <= 6, but is not small for dense graphs of degree 10.
///
/// Throws FiltrationError(too_large) above options.max_vertices.
VertexFunction subgraph_centrality(const Graph& g, const SubgraphOptions& options = {});

/// Sublevel edge value max(f[u], f[v]).
double edge_value_sublevel(const VertexFunction& f, const Edge& e);
/// Superlevel edge value min(f[u], f[v]).
double edge_value_superlevel(const VertexFunction& f, const Edge& e);

VertexFunction compute_centrality(const Graph& g, Centrality c, const SubgraphOptions& options = {});

/// Rescales values to [0, 1]; constant functions map to all zeros.
VertexFunction min_max_normalized(const VertexFunction& f);

struct BundleOptions {
  bool min_max_normalize = false;
  SubgraphOptions subgraph;
};

/// One function per name, in the given order. Names are
/// degree | betweenness | closeness | subgraph.
/// Throws FiltrationError(empty | unknown | duplicate).
FiltrationBundle make_bundle(const Graph& g, std::span<const std::string> names,
                             const BundleOptions& options = {});

/// Validates a list of centrality names without computing anything.
std::vector<Centrality> parse_centrality_list(std::span<const std::string> names);

/// Total orders used by every sweep over a vertex-filtered graph.
///
/// Vertices ascend by (value, id); the descending order is the exact reverse.
/// Edges ascend by (max endpoint value, larger id, smaller id) and descend by
/// (min endpoint value, larger id, smaller id) read in decreasing
/// lexicographic order. Both persistence engines use these orders, which is
/// what makes their pairings (not just their diagrams) coincide.
struct SweepOrder {
  std::vector<VertexId> vertices_ascending;
  std::vector<std::size_t> edges_ascending;   ///< indices into g.edges()
  std::vector<std::size_t> edges_descending;  ///< indices into g.edges()
};

SweepOrder sweep_order(const Graph& g, const VertexFunction& f);

}  // namespace extopo
