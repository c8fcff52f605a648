#include <algorithm>
#include <cmath>

#include "extopo/error.hpp"
#include "extopo/metrics.hpp"

namespace extopo {

MatchingResult bottleneck_kind(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b,
                               PointKind kind, const MatchOptions& options) {
  const auto pa = a.of_kind(kind), pb = b.of_kind(kind);
  try {
    return bottleneck_matching(pa, pb, allows_diagonal(kind, options));
  } catch (const MetricError& e) {
    throw MetricError(e.kind(), std::string(to_string(kind)) + ": " + e.what());
  }
}

MatchingResult wasserstein_kind(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b,
                                PointKind kind, double q, const MatchOptions& options) {
  const auto pa = a.of_kind(kind), pb = b.of_kind(kind);
  try {
    return wasserstein_matching(pa, pb, q, allows_diagonal(kind, options));
  } catch (const MetricError& e) {
    throw MetricError(e.kind(), std::string(to_string(kind)) + ": " + e.what());
  }
}

double bottleneck(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b,
                  const MatchOptions& options) {
  double out = 0.0;
  for (PointKind k : all_point_kinds) out = std::max(out, bottleneck_kind(a, b, k, options).cost);
  return out;
}

double wasserstein(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b, double q,
                   const MatchOptions& options) {
  if (!(q >= 1.0) || std::isinf(q)) throw MetricError(MetricErrorKind::parameter, "wasserstein needs finite q >= 1");
  double acc = 0.0;
  for (PointKind k : all_point_kinds) acc += std::pow(wasserstein_kind(a, b, k, q, options).cost, q);
  return std::pow(acc, 1.0 / q);
}

namespace {

void check_grid(const std::vector<double>& t) {
  if (t.empty()) throw MetricError(MetricErrorKind::grid, "landscape with an empty grid");
  if (!std::is_sorted(t.begin(), t.end())) throw MetricError(MetricErrorKind::grid, "landscape grid is not sorted");
}

// Piecewise-linear interpolation of row values on `from`, zero outside it.
Eigen::MatrixXd resample(const Eigen::MatrixXd& m, const std::vector<double>& from, const std::vector<double>& to) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows(), static_cast<Eigen::Index>(to.size()));
  for (std::size_t c = 0; c < to.size(); ++c) {
    const double t = to[c];
    if (t < from.front() || t > from.back()) continue;
    auto it = std::lower_bound(from.begin(), from.end(), t);
    const auto hi = static_cast<Eigen::Index>(it - from.begin());
    if (*it == t || hi == 0) {
      out.col(static_cast<Eigen::Index>(c)) = m.col(hi);
      continue;
    }
    const double t0 = from[static_cast<std::size_t>(hi - 1)], t1 = *it;
    const double w = (t - t0) / (t1 - t0);
    out.col(static_cast<Eigen::Index>(c)) = (1.0 - w) * m.col(hi - 1) + w * m.col(hi);
  }
  return out;
}

Eigen::MatrixXd padded(const Eigen::MatrixXd& m, Eigen::Index rows) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, m.cols());
  out.topRows(m.rows()) = m;
  return out;
}

}  // namespace

double landscape_distance(const LandscapeSet& a, const LandscapeSet& b, double p) {
  if (!(p >= 1.0)) throw MetricError(MetricErrorKind::parameter, "landscape distance needs p >= 1");
  check_grid(a.t_grid);
  check_grid(b.t_grid);
  if (a.pos_levels.cols() != static_cast<Eigen::Index>(a.t_grid.size()) ||
      b.pos_levels.cols() != static_cast<Eigen::Index>(b.t_grid.size()) ||
      a.neg_levels.cols() != a.pos_levels.cols() || b.neg_levels.cols() != b.pos_levels.cols()) {
    throw MetricError(MetricErrorKind::grid, "landscape level matrices do not match their grid");
  }

  const std::vector<double>& grid = b.t_grid.size() > a.t_grid.size() ? b.t_grid : a.t_grid;
  auto on_grid = [&](const LandscapeSet& s, const Eigen::MatrixXd& m) {
    return s.t_grid == grid ? m : resample(m, s.t_grid, grid);
  };
  const Eigen::Index levels = static_cast<Eigen::Index>(std::max(a.k_max, b.k_max));
  const Eigen::MatrixXd diff_pos = padded(on_grid(a, a.pos_levels), levels) - padded(on_grid(b, b.pos_levels), levels);
  const Eigen::MatrixXd diff_neg = padded(on_grid(a, a.neg_levels), levels) - padded(on_grid(b, b.neg_levels), levels);

  if (std::isinf(p)) {
    return std::max(diff_pos.cwiseAbs().maxCoeff(), diff_neg.cwiseAbs().maxCoeff());
  }
  const std::size_t n = grid.size();
  Eigen::VectorXd w = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i > 0 ? grid[i] - grid[i - 1] : 0.0;
      const double right = i + 1 < n ? grid[i + 1] - grid[i] : 0.0;
      w(static_cast<Eigen::Index>(i)) = 0.5 * (left + right);
    }
  }
  double acc = 0.0;
  for (const Eigen::MatrixXd* d : {&diff_pos, &diff_neg}) {
    acc += (d->cwiseAbs().array().pow(p).matrix() * w).sum();
  }
  return std::pow(acc, 1.0 / p);
}

std::vector<double> critical_union_grid(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b) {
  std::vector<double> coords;
  for (const auto* d : {&a, &b}) {
    for (const EpdPoint& p : d->points) {
      if (p.birth == p.death) continue;
      coords.push_back(p.birth);
      coords.push_back(p.death);
    }
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  std::vector<double> grid = coords;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = i + 1; j < coords.size(); ++j) grid.push_back(0.5 * (coords[i] + coords[j]));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double landscape_sup_distance(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b) {
  std::vector<double> grid = critical_union_grid(a, b);
  if (grid.empty()) return 0.0;
  std::size_t levels = 1;
  for (const auto* d : {&a, &b}) {
    std::size_t above = 0, below = 0;
    for (const EpdPoint& p : d->points) {
      above += p.birth < p.death;
      below += p.death < p.birth;
    }
    levels = std::max({levels, above, below});
  }
  const LandscapeSet la = landscape_on_grid(a, levels, grid);
  const LandscapeSet lb = landscape_on_grid(b, levels, std::move(grid));
  return landscape_distance(la, lb, infinity_norm);
}

}  // namespace extopo
