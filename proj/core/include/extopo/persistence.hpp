#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extopo/filtration.hpp"
#include "extopo/graph.hpp"

namespace extopo {

/// Ord0: component born and merged in the ascending sweep.
/// Ext0: component essential in the ascending sweep, killed by the cone (min, max).
/// Ext1: cycle born in the ascending sweep, killed in the descending sweep (death <= birth).
/// Rel1: relative class of the descending sweep (death <= birth).
enum class PointKind { Ord0, Ext0, Ext1, Rel1 };

inline constexpr PointKind all_point_kinds[] = {PointKind::Ord0, PointKind::Ext0, PointKind::Ext1,
                                                PointKind::Rel1};

const char* to_string(PointKind kind) noexcept;
std::optional<PointKind> parse_point_kind(std::string_view token) noexcept;

/// True for the kinds that must be matched to each other (never to the diagonal).
constexpr bool is_essential(PointKind kind) noexcept {
  return kind == PointKind::Ext0 || kind == PointKind::Ext1;
}

struct EpdPoint {
  double birth = 0.0;
  double death = 0.0;
  PointKind kind = PointKind::Ord0;

  double persistence() const noexcept { return death > birth ? death - birth : birth - death; }

  friend bool operator==(const EpdPoint&, const EpdPoint&) = default;
  friend auto operator<=>(const EpdPoint&, const EpdPoint&) = default;
};

/// Finite coordinates and the orientation required by the point's kind.
bool is_well_formed(const EpdPoint& p) noexcept;

struct ExtendedPersistenceDiagram {
  std::vector<EpdPoint> points;
  std::string function_name;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t count(PointKind kind) const noexcept;
  std::vector<EpdPoint> of_kind(PointKind kind) const;
  /// Points sorted by (kind, birth, death): the canonical multiset form.
  ExtendedPersistenceDiagram canonical() const;
  ExtendedPersistenceDiagram shifted(double c) const;
};

/// Exact multiset equality (kind and both coordinates), order-insensitive.
bool same_multiset(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b);

/// Extended persistence of the lower-star / upper-star filtration of f.
///
/// Ord0 and Ext0 come from an ascending union-find sweep (elder rule on
/// vertex birth order). Rel1 comes from the mirrored descending sweep. Each
/// edge that closes a cycle in the descending sweep is an Ext1 death; its
/// birth is the ascending-latest edge of the min-max cycle through it in the
/// already-swept superlevel graph, found with a link-cut tree that maintains
/// the minimum spanning forest of that graph keyed by ascending edge rank.
/// O(|E| log |V|) overall.
///
/// Zero-persistence points are kept. Throws PersistenceError(shape) if f
/// does not have one value per vertex.
ExtendedPersistenceDiagram epd_fast(const Graph& g, const VertexFunction& f);

struct OracleOptions {
  std::size_t max_vertices = 2000;
};

/// Reference implementation: builds the coned filtration (ascending
/// lower-star cells, then cone cells in descending upper-star order),
/// reduces the boundary matrix over Z/2 left to right and classifies each
/// pair by where its two cells live. Quadratic-or-worse; for verification.
///
/// Throws PersistenceError(too_large | shape).
ExtendedPersistenceDiagram epd_reduction_oracle(const Graph& g, const VertexFunction& f,
                                                const OracleOptions& options = {});

/// One diagram per function of the bundle, in bundle order.
std::vector<ExtendedPersistenceDiagram> epd_bundle(const Graph& g, const FiltrationBundle& bundle);

/// Text form: one "kind birth death" line per point, reals as %.9g.
void write_diagram(std::ostream& out, const ExtendedPersistenceDiagram& d);
std::string format_diagram(const ExtendedPersistenceDiagram& d);
/// Blank lines and lines starting with '#' are skipped.
/// Throws PersistenceError(parse).
ExtendedPersistenceDiagram read_diagram(std::istream& in, std::string function_name = {});
ExtendedPersistenceDiagram read_diagram_file(const std::filesystem::path& path);
void write_diagram_file(const std::filesystem::path& path, const ExtendedPersistenceDiagram& d);

}  // namespace extopo
