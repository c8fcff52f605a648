#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extopo/metrics.hpp"
#include "extopo/random.hpp"

namespace extopo {

StabilityReport stability_compare(const Graph& g, const VertexFunction& f, const VertexFunction& h) {
  if (f.size() != g.num_vertices() || h.size() != g.num_vertices()) {
    throw std::invalid_argument("stability_compare: function length differs from vertex count");
  }
  const auto d1 = epd_fast(g, f);
  const auto d2 = epd_fast(g, h);

  StabilityReport r;
  double lo = 0.0, hi = 0.0;
  for (std::size_t v = 0; v < f.size(); ++v) {
    r.rhs = std::max(r.rhs, std::abs(f[v] - h[v]));
    if (v == 0) lo = hi = f[v];
    lo = std::min({lo, f[v], h[v]});
    hi = std::max({hi, f[v], h[v]});
  }
  r.tolerance = 1e-9 * std::max(1.0, hi - lo);
  for (PointKind k : all_point_kinds) {
    r.per_kind[static_cast<std::size_t>(k)] = bottleneck_kind(d1, d2, k).cost;
    r.mid = std::max(r.mid, r.per_kind[static_cast<std::size_t>(k)]);
  }
  r.lhs = landscape_sup_distance(d1, d2);
  r.pass = r.lhs <= r.mid + r.tolerance && r.mid <= r.rhs + r.tolerance;
  return r;
}

StabilityReport stability_trial(const Graph& g, const VertexFunction& f, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("stability_trial: epsilon must be finite and non-negative");
  }
  Rng rng(seed);
  std::vector<double> values(f.values().begin(), f.values().end());
  if (epsilon > 0.0) {
    for (double& v : values) v += rng.uniform(-epsilon, epsilon);
  }
  return stability_compare(g, f, VertexFunction(std::move(values), f.name()));
}

}  // namespace extopo
