#include <algorithm>
#include <cmath>

#include "extopo/error.hpp"
#include "extopo/vectorization.hpp"

namespace extopo {

namespace {

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Gaussian mass of N(mu, sigma) inside each of the n cells [lo + i h, lo + (i+1) h).
Eigen::VectorXd axis_mass(double mu, double sigma, double lo, double hi, std::size_t n) {
  Eigen::VectorXd mass(static_cast<Eigen::Index>(n));
  const double h = (hi - lo) / static_cast<double>(n);
  double prev = normal_cdf((lo - mu) / sigma);
  for (std::size_t i = 0; i < n; ++i) {
    const double edge = i + 1 == n ? hi : lo + h * static_cast<double>(i + 1);
    const double cur = normal_cdf((edge - mu) / sigma);
    mass(static_cast<Eigen::Index>(i)) = std::max(0.0, cur - prev);
    prev = cur;
  }
  return mass;
}

bool keep(const EpdPoint& p, bool include_zero) noexcept { return include_zero || p.birth != p.death; }

}  // namespace

double default_sigma(std::span<const ExtendedPersistenceDiagram> diagrams) {
  bool any = false;
  double b_lo = 0, b_hi = 0, d_lo = 0, d_hi = 0;
  for (const auto& d : diagrams) {
    for (const EpdPoint& p : d.points) {
      if (!any) {
        b_lo = b_hi = p.birth;
        d_lo = d_hi = p.death;
        any = true;
      }
      b_lo = std::min(b_lo, p.birth);
      b_hi = std::max(b_hi, p.birth);
      d_lo = std::min(d_lo, p.death);
      d_hi = std::max(d_hi, p.death);
    }
  }
  double spread = std::max(b_hi - b_lo, d_hi - d_lo);
  if (!(spread > 0.0)) spread = 1.0;
  return 0.05 * spread;
}

PersistenceImage persistence_image(const ExtendedPersistenceDiagram& d, const ImageParams& params) {
  if (params.rows == 0 || params.cols == 0) {
    throw VectorizeError(VectorizeErrorKind::resolution, "image resolution must be at least 1x1");
  }
  std::vector<EpdPoint> pts;
  for (const EpdPoint& p : d.points) {
    if (keep(p, params.include_zero_persistence)) pts.push_back(p);
  }

  double sigma = 0.0;
  if (params.sigma) {
    sigma = *params.sigma;
  } else {
    ExtendedPersistenceDiagram kept;
    kept.points = pts;
    sigma = default_sigma(std::span(&kept, 1));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw VectorizeError(VectorizeErrorKind::sigma, "image sigma must be positive");
  }

  PersistenceImage img;
  img.rows = params.rows;
  img.cols = params.cols;
  img.sigma_x = img.sigma_y = sigma;
  if (params.bounds) {
    img.bounds = *params.bounds;
  } else {
    const double pad = params.pad_sigmas * sigma;
    if (pts.empty()) {
      img.bounds = {-pad, pad, -pad, pad};
    } else {
      ImageBounds box{pts[0].birth, pts[0].birth, pts[0].death, pts[0].death};
      for (const EpdPoint& p : pts) {
        box.b_min = std::min(box.b_min, p.birth);
        box.b_max = std::max(box.b_max, p.birth);
        box.d_min = std::min(box.d_min, p.death);
        box.d_max = std::max(box.d_max, p.death);
      }
      img.bounds = {box.b_min - pad, box.b_max + pad, box.d_min - pad, box.d_max + pad};
    }
  }
  const ImageBounds& bb = img.bounds;
  if (!(bb.b_min < bb.b_max) || !(bb.d_min < bb.d_max)) {
    throw VectorizeError(VectorizeErrorKind::resolution, "image bounds must have positive extent");
  }

  img.pixels = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(params.rows), static_cast<Eigen::Index>(params.cols));
  for (const EpdPoint& p : pts) {
    const double w = params.weight == ImageWeight::persistence ? std::abs(p.death - p.birth) : 1.0;
    if (w == 0.0) continue;
    const Eigen::VectorXd mx = axis_mass(p.birth, img.sigma_x, bb.b_min, bb.b_max, params.cols);
    const Eigen::VectorXd my = axis_mass(p.death, img.sigma_y, bb.d_min, bb.d_max, params.rows);
    img.pixels.noalias() += w * my * mx.transpose();
  }
  return img;
}

}  // namespace extopo
