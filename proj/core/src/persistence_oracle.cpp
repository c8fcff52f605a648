#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "extopo/error.hpp"
#include "extopo/persistence.hpp"

namespace extopo {

namespace {

enum class CellType { cone_apex, vertex, edge, cone_edge, cone_triangle };

struct Cell {
  CellType type;
  int dim;
  double value;
  std::size_t index;  // vertex id or edge index in g.edges()
};

/// Z/2 column as a sorted list of row positions; low() is the last entry.
using Column = std::vector<std::size_t>;

void add_into(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

ExtendedPersistenceDiagram epd_reduction_oracle(const Graph& g, const VertexFunction& f,
                                                const OracleOptions& options) {
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  if (f.size() != n) throw PersistenceError(PersistenceErrorKind::shape, "oracle: function/vertex count mismatch");
  if (n > options.max_vertices) {
    throw PersistenceError(PersistenceErrorKind::too_large,
                           "oracle: " + std::to_string(n) + " vertices exceeds cap " +
                               std::to_string(options.max_vertices));
  }
  const auto& edges = g.edges();

  // Ascending half: lower-star cells ordered by (value, dim, tie), where the
  // tie is the vertex id or the edge's (larger id, smaller id).
  std::vector<Cell> up;
  up.reserve(n + m);
  for (std::size_t v = 0; v < n; ++v) up.push_back({CellType::vertex, 0, f[v], v});
  for (std::size_t e = 0; e < m; ++e) {
    up.push_back({CellType::edge, 1, std::max(f[edges[e].u], f[edges[e].v]), e});
  }
  auto tie_key = [&](const Cell& c) {
    if (c.dim == 0 || c.type == CellType::cone_edge) return std::pair<std::size_t, std::size_t>{c.index, 0};
    return std::pair<std::size_t, std::size_t>{edges[c.index].v, edges[c.index].u};
  };
  std::sort(up.begin(), up.end(), [&](const Cell& a, const Cell& b) {
    return std::make_tuple(a.value, a.dim, tie_key(a)) < std::make_tuple(b.value, b.dim, tie_key(b));
  });

  // Descending half: cones over vertices (edges to the apex) and over edges
  // (triangles), by decreasing value, faces first, larger tie first.
  std::vector<Cell> down;
  down.reserve(n + m);
  for (std::size_t v = 0; v < n; ++v) down.push_back({CellType::cone_edge, 1, f[v], v});
  for (std::size_t e = 0; e < m; ++e) {
    down.push_back({CellType::cone_triangle, 2, std::min(f[edges[e].u], f[edges[e].v]), e});
  }
  std::sort(down.begin(), down.end(), [&](const Cell& a, const Cell& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return tie_key(a) > tie_key(b);
  });

  std::vector<Cell> cells;
  cells.reserve(1 + 2 * (n + m));
  cells.push_back({CellType::cone_apex, 0, 0.0, 0});
  cells.insert(cells.end(), up.begin(), up.end());
  cells.insert(cells.end(), down.begin(), down.end());

  std::vector<std::size_t> pos_vertex(n), pos_edge(m), pos_cone_edge(n);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    if (c.type == CellType::vertex) pos_vertex[c.index] = i;
    if (c.type == CellType::edge) pos_edge[c.index] = i;
    if (c.type == CellType::cone_edge) pos_cone_edge[c.index] = i;
  }

  std::vector<Column> columns(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    Column& col = columns[i];
    switch (c.type) {
      case CellType::cone_apex:
      case CellType::vertex: break;
      case CellType::edge: col = {pos_vertex[edges[c.index].u], pos_vertex[edges[c.index].v]}; break;
      case CellType::cone_edge: col = {0, pos_vertex[c.index]}; break;
      case CellType::cone_triangle:
        col = {pos_edge[c.index], pos_cone_edge[edges[c.index].u], pos_cone_edge[edges[c.index].v]};
        break;
    }
    std::sort(col.begin(), col.end());
  }

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> column_with_low(cells.size(), none);
  Column scratch;
  ExtendedPersistenceDiagram out;
  out.function_name = f.name();
  std::vector<bool> paired(cells.size(), false);

  for (std::size_t j = 0; j < cells.size(); ++j) {
    Column& col = columns[j];
    while (!col.empty() && column_with_low[col.back()] != none) {
      add_into(col, columns[column_with_low[col.back()]], scratch);
    }
    if (col.empty()) continue;
    const std::size_t i = col.back();
    column_with_low[i] = j;
    paired[i] = paired[j] = true;

    const Cell& birth = cells[i];
    const Cell& death = cells[j];
    if (birth.type == CellType::vertex && death.type == CellType::edge) {
      out.points.push_back({birth.value, death.value, PointKind::Ord0});
    } else if (birth.type == CellType::vertex && death.type == CellType::cone_edge) {
      out.points.push_back({birth.value, death.value, PointKind::Ext0});
    } else if (birth.type == CellType::edge && death.type == CellType::cone_triangle) {
      out.points.push_back({birth.value, death.value, PointKind::Ext1});
    } else if (birth.type == CellType::cone_edge && death.type == CellType::cone_triangle) {
      out.points.push_back({birth.value, death.value, PointKind::Rel1});
    } else {
      throw std::logic_error("oracle: unexpected pairing between cells " + std::to_string(i) + " and " +
                             std::to_string(j));
    }
  }
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (!paired[i]) throw std::logic_error("oracle: unpaired cell " + std::to_string(i));
  }
  return out;
}

}  // namespace extopo
