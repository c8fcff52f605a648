#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "extopo/persistence.hpp"
#include "extopo/vectorization.hpp"

namespace extopo {

inline constexpr double infinity_norm = std::numeric_limits<double>::infinity();

/// Sup-norm distance between two points.
double linf_distance(const EpdPoint& a, const EpdPoint& b) noexcept;
/// Sup-norm distance from a point to the diagonal, |d - b| / 2.
double diagonal_distance(const EpdPoint& p) noexcept;

/// One matched pair: an index into each side, or nullopt for the diagonal.
struct MatchedPair {
  std::optional<std::size_t> a;
  std::optional<std::size_t> b;
  bool operator==(const MatchedPair&) const = default;
};

struct MatchingResult {
  double cost = 0.0;
  std::vector<MatchedPair> pairs;
};

/// Bottleneck matching between two point sets. Without diagonal projection
/// the sets must have equal size (MetricError(essential_mismatch)).
MatchingResult bottleneck_matching(std::span<const EpdPoint> a, std::span<const EpdPoint> b, bool allow_diagonal);

/// Optimal assignment minimizing sum of distance^q, with cost reported as
/// (sum distance^q)^(1/q). Throws MetricError(parameter) for q < 1.
MatchingResult wasserstein_matching(std::span<const EpdPoint> a, std::span<const EpdPoint> b, double q,
                                    bool allow_diagonal);

struct MatchOptions {
  /// Lets Ext0/Ext1 points match the diagonal too. Needed to compare
  /// diagrams of different graphs, whose Betti numbers may differ.
  bool essential_to_diagonal = false;
};

/// Diagonal projection is allowed for Ord0 and Rel1 only, unless the
/// options relax it for essential classes.
constexpr bool allows_diagonal(PointKind k, const MatchOptions& options = {}) noexcept {
  return !is_essential(k) || options.essential_to_diagonal;
}

MatchingResult bottleneck_kind(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b, PointKind kind,
                               const MatchOptions& options = {});
MatchingResult wasserstein_kind(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b,
                                PointKind kind, double q, const MatchOptions& options = {});

/// Max over kinds of the per-kind bottleneck distance.
double bottleneck(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b,
                  const MatchOptions& options = {});
/// (sum over kinds of cost_kind^q)^(1/q).
double wasserstein(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b, double q,
                   const MatchOptions& options = {});

/// Norm of the difference of all level functions. Finite p uses trapezoid
/// weights along t; p = infinity_norm takes the max. Sets on different grids
/// are linearly resampled onto the one with more samples; a missing level
/// counts as zero. Throws MetricError(grid | parameter).
double landscape_distance(const LandscapeSet& a, const LandscapeSet& b, double p);

/// All coordinates of both diagrams plus the midpoint of every pair of them.
/// Every landscape level of either diagram is linear between consecutive
/// entries, so the sup distance is attained on this grid.
std::vector<double> critical_union_grid(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b);

/// Exact sup distance between the full landscapes of two diagrams.
double landscape_sup_distance(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b);

struct StabilityReport {
  double lhs = 0.0;  ///< sup landscape distance
  double mid = 0.0;  ///< bottleneck distance
  double rhs = 0.0;  ///< sup norm of the perturbation
  double tolerance = 0.0;
  std::array<double, 4> per_kind{};  ///< bottleneck per kind, indexed by PointKind
  bool pass = false;
};

/// Perturbs every vertex value by an independent uniform draw in
/// [-epsilon, epsilon], then checks lhs <= mid + tol and mid <= rhs + tol with
/// tol = 1e-9 * max(1, value range). Throws std::invalid_argument for
/// negative epsilon.
StabilityReport stability_trial(const Graph& g, const VertexFunction& f, double epsilon, std::uint64_t seed);
/// Same check for an explicit second function on the same graph.
StabilityReport stability_compare(const Graph& g, const VertexFunction& f, const VertexFunction& h);

}  // namespace extopo
