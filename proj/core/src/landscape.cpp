#include <algorithm>
#include <cmath>
#include <functional>

#include "extopo/error.hpp"
#include "extopo/vectorization.hpp"

namespace extopo {

double tent(const EpdPoint& p, double t) noexcept {
  if (p.birth < p.death) return std::max(0.0, std::min(t - p.birth, p.death - t));
  if (p.death < p.birth) return -std::max(0.0, std::min(t - p.death, p.birth - t));
  return 0.0;
}

std::vector<double> make_grid(const ExtendedPersistenceDiagram& d, const GridSpec& spec) {
  std::vector<double> grid;
  if (const auto* uniform = std::get_if<UniformGrid>(&spec)) {
    if (uniform->samples == 0) throw VectorizeError(VectorizeErrorKind::grid, "uniform grid with zero samples");
    double lo = 0.0, hi = 0.0;
    if (uniform->range) {
      std::tie(lo, hi) = *uniform->range;
    } else if (!d.points.empty()) {
      lo = hi = d.points.front().birth;
      for (const EpdPoint& p : d.points) {
        lo = std::min({lo, p.birth, p.death});
        hi = std::max({hi, p.birth, p.death});
      }
    }
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw VectorizeError(VectorizeErrorKind::grid, "invalid grid range");
    }
    grid.resize(uniform->samples);
    const double step = uniform->samples > 1 ? (hi - lo) / static_cast<double>(uniform->samples - 1) : 0.0;
    for (std::size_t i = 0; i < uniform->samples; ++i) grid[i] = lo + step * static_cast<double>(i);
    if (uniform->samples > 1) grid.back() = hi;
    return grid;
  }

  std::vector<double> coords;
  for (const EpdPoint& p : d.points) {
    coords.push_back(p.birth);
    coords.push_back(p.death);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  if (coords.empty()) throw VectorizeError(VectorizeErrorKind::grid, "critical grid of an empty diagram");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i > 0) grid.push_back(0.5 * (coords[i - 1] + coords[i]));
    grid.push_back(coords[i]);
  }
  return grid;
}

LandscapeSet landscape_on_grid(const ExtendedPersistenceDiagram& d, std::size_t k_max, std::vector<double> t_grid) {
  if (k_max == 0) throw VectorizeError(VectorizeErrorKind::params, "landscape needs k_max >= 1");
  if (t_grid.empty()) throw VectorizeError(VectorizeErrorKind::grid, "empty landscape grid");

  std::vector<EpdPoint> above, below;
  for (const EpdPoint& p : d.points) {
    if (p.birth < p.death) above.push_back(p);
    else if (p.death < p.birth) below.push_back(p);
  }

  LandscapeSet out;
  out.k_max = k_max;
  const auto n = static_cast<Eigen::Index>(t_grid.size());
  const auto k = static_cast<Eigen::Index>(k_max);
  out.pos_levels = Eigen::MatrixXd::Zero(k, n);
  out.neg_levels = Eigen::MatrixXd::Zero(k, n);

  std::vector<double> values;
  values.reserve(std::max(above.size(), below.size()));
  for (Eigen::Index c = 0; c < n; ++c) {
    const double t = t_grid[static_cast<std::size_t>(c)];

    values.clear();
    for (const EpdPoint& p : above) {
      const double v = tent(p, t);
      if (v > 0.0) values.push_back(v);
    }
    const std::size_t top = std::min(values.size(), k_max);
    std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(top), values.end(),
                      std::greater<>());
    for (std::size_t i = 0; i < top; ++i) out.pos_levels(static_cast<Eigen::Index>(i), c) = values[i];

    values.clear();
    for (const EpdPoint& p : below) {
      const double v = tent(p, t);
      if (v < 0.0) values.push_back(v);
    }
    const std::size_t bottom = std::min(values.size(), k_max);
    std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(bottom), values.end());
    for (std::size_t i = 0; i < bottom; ++i) out.neg_levels(static_cast<Eigen::Index>(i), c) = values[i];
  }
  out.t_grid = std::move(t_grid);
  return out;
}

LandscapeSet landscape(const ExtendedPersistenceDiagram& d, std::size_t k_max, const GridSpec& grid) {
  return landscape_on_grid(d, k_max, make_grid(d, grid));
}

}  // namespace extopo
