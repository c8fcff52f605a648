#include <cstdint>
#include <numeric>

#include "extopo/error.hpp"
#include "extopo/persistence.hpp"
#include "link_cut_tree.hpp"

namespace extopo {

namespace {

/// Union-find whose roots remember the representative vertex chosen by a
/// caller-supplied "older than" relation.
class ElderUnionFind {
 public:
  explicit ElderUnionFind(std::size_t n) : parent_(n), oldest_(n), newest_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    std::iota(oldest_.begin(), oldest_.end(), VertexId{0});
    std::iota(newest_.begin(), newest_.end(), VertexId{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  VertexId oldest(std::size_t root) const { return oldest_[root]; }
  VertexId newest(std::size_t root) const { return newest_[root]; }

  /// Attaches `younger` below `elder`; rank is the birth position per vertex.
  /// The elder root keeps its oldest vertex.
  void merge_into(std::size_t younger, std::size_t elder, const std::vector<std::size_t>& rank) {
    parent_[younger] = elder;
    if (rank[newest_[younger]] > rank[newest_[elder]]) newest_[elder] = newest_[younger];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<VertexId> oldest_;
  std::vector<VertexId> newest_;
};

}  // namespace

ExtendedPersistenceDiagram epd_fast(const Graph& g, const VertexFunction& f) {
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  if (f.size() != n) {
    throw PersistenceError(PersistenceErrorKind::shape,
                           "epd: function has " + std::to_string(f.size()) + " values for " + std::to_string(n) +
                               " vertices");
  }
  const auto& edges = g.edges();
  const SweepOrder order = sweep_order(g, f);

  std::vector<std::size_t> vrank(n);
  for (std::size_t i = 0; i < n; ++i) vrank[order.vertices_ascending[i]] = i;
  std::vector<std::size_t> erank(m);
  for (std::size_t i = 0; i < m; ++i) erank[order.edges_ascending[i]] = i;

  ExtendedPersistenceDiagram out;
  out.function_name = f.name();
  out.points.reserve(2 * n + m);

  // Ascending sweep: Ord0 merges, then one Ext0 (min, max) per component.
  {
    ElderUnionFind uf(n);
    for (std::size_t e : order.edges_ascending) {
      std::size_t a = uf.find(edges[e].u);
      std::size_t b = uf.find(edges[e].v);
      if (a == b) continue;
      if (vrank[uf.oldest(a)] < vrank[uf.oldest(b)]) std::swap(a, b);
      out.points.push_back({f[uf.oldest(a)], edge_value_sublevel(f, edges[e]), PointKind::Ord0});
      uf.merge_into(a, b, vrank);
    }
    for (VertexId v : order.vertices_ascending) {
      if (uf.find(v) == v) out.points.push_back({f[uf.oldest(v)], f[uf.newest(v)], PointKind::Ext0});
    }
  }

  // Descending sweep. Birth order is reversed: larger vrank is older.
  {
    std::vector<std::size_t> desc_rank(n);
    for (std::size_t v = 0; v < n; ++v) desc_rank[v] = n - 1 - vrank[v];
    ElderUnionFind uf(n);

    std::vector<std::int64_t> keys(n + m, -1);
    for (std::size_t e = 0; e < m; ++e) keys[n + e] = static_cast<std::int64_t>(erank[e]);
    detail::LinkCutForest forest(std::move(keys));
    auto link_edge = [&](std::size_t e) {
      const int node = static_cast<int>(n + e);
      forest.link(static_cast<int>(edges[e].u), node);
      forest.link(node, static_cast<int>(edges[e].v));
    };

    for (std::size_t e : order.edges_descending) {
      const Edge& edge = edges[e];
      const double death = edge_value_superlevel(f, edge);
      std::size_t a = uf.find(edge.u);
      std::size_t b = uf.find(edge.v);
      if (a != b) {
        if (desc_rank[uf.oldest(a)] < desc_rank[uf.oldest(b)]) std::swap(a, b);
        out.points.push_back({f[uf.oldest(a)], death, PointKind::Rel1});
        uf.merge_into(a, b, desc_rank);
        link_edge(e);
        continue;
      }
      const int heaviest = forest.path_max(static_cast<int>(edge.u), static_cast<int>(edge.v));
      const std::size_t rival = static_cast<std::size_t>(heaviest) - n;
      const std::size_t birth_edge = erank[e] > erank[rival] ? e : rival;
      out.points.push_back({edge_value_sublevel(f, edges[birth_edge]), death, PointKind::Ext1});
      if (erank[e] < erank[rival]) {
        forest.cut(static_cast<int>(edges[rival].u), heaviest);
        forest.cut(heaviest, static_cast<int>(edges[rival].v));
        link_edge(e);
      }
    }
  }
  return out;
}

std::vector<ExtendedPersistenceDiagram> epd_bundle(const Graph& g, const FiltrationBundle& bundle) {
  std::vector<ExtendedPersistenceDiagram> out;
  out.reserve(bundle.size());
  for (const VertexFunction& f : bundle.functions) out.push_back(epd_fast(g, f));
  return out;
}

}  // namespace extopo
