// Acceptance criteria that need no external dataset.

#include <algorithm>
#include <cmath>
#include <iostream>

#include "extopo/contrastive.hpp"
#include "extopo/metrics.hpp"
#include "extopo/persistence.hpp"
#include "extopo/random.hpp"
#include "extopo/vectorization.hpp"
#include "oracles.hpp"
#include "report.hpp"

using namespace extopo;
using acceptance::fmt;

namespace {

struct Finiteness {
  std::size_t diagrams = 0;
  std::size_t points = 0;
  std::size_t non_finite = 0;

  void add(const ExtendedPersistenceDiagram& d) {
    ++diagrams;
    for (const EpdPoint& p : d.points) {
      ++points;
      non_finite += !(std::isfinite(p.birth) && std::isfinite(p.death));
    }
  }
};

struct HandCase {
  Graph g;
  std::vector<double> f;
};

std::vector<HandCase> hand_cases() {
  Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  Graph path(3, {{0, 1}, {1, 2}});
  Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Graph two_edges(4, {{0, 1}, {2, 3}});
  Graph bowtie(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  return {
      {triangle, {1, 2, 3}},
      {Graph(1), {0.5}},
      {path, {0, 5, 1}},
      {two_edges, {0, 1, 2, 3}},
      {square, {0, 1, 2, 3}},
      {square, {2, 2, 2, 2}},
      {bowtie, {3, 1, 0, 2, 4}},
      {k4, {1, 1, 2, 2}},
      {Graph(5, {{0, 1}, {3, 4}}), {4, 0, 1, 1, 3}},
  };
}

ExtendedPersistenceDiagram random_diagram(std::size_t max_points, Rng& rng) {
  ExtendedPersistenceDiagram d;
  const std::size_t n = rng.uniform_index(max_points + 1);
  for (std::size_t i = 0; i < n; ++i) {
    double x = rng.uniform(-2, 5), y = rng.uniform(-2, 5);
    PointKind k = all_point_kinds[rng.uniform_index(4)];
    bool up = k == PointKind::Ord0 || k == PointKind::Ext0;
    if (up != (x <= y)) std::swap(x, y);
    d.points.push_back({x, y, k});
  }
  return d;
}

EpdPoint random_point(PointKind k, Rng& rng) {
  double x = rng.uniform(0, 6), y = rng.uniform(0, 6);
  bool up = k == PointKind::Ord0 || k == PointKind::Ext0;
  if (up != (x <= y)) std::swap(x, y);
  return {x, y, k};
}

/// Diagram with fixed essential counts so any pair is comparable.
ExtendedPersistenceDiagram comparable_diagram(std::size_t ext0, std::size_t ext1, Rng& rng) {
  ExtendedPersistenceDiagram d;
  for (std::size_t i = 0; i < ext0; ++i) d.points.push_back(random_point(PointKind::Ext0, rng));
  for (std::size_t i = 0; i < ext1; ++i) d.points.push_back(random_point(PointKind::Ext1, rng));
  for (PointKind k : {PointKind::Ord0, PointKind::Rel1}) {
    for (std::size_t i = rng.uniform_index(6); i > 0; --i) d.points.push_back(random_point(k, rng));
  }
  return d;
}

void oracle_equivalence(acceptance::Report& report, Finiteness& fin) {
  acceptance::Stopwatch clock;
  Rng rng(20240601);
  std::size_t pairs = 0, mismatches = 0;
  for (int trial = 0; trial < 1200; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(12);
    Graph g = erdos_renyi(n, 0.3, rng);
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(rng.uniform_index(6));
    VertexFunction f(v, "int");
    auto fast = epd_fast(g, f);
    fin.add(fast);
    mismatches += !same_multiset(fast, epd_reduction_oracle(g, f));
    ++pairs;
  }
  std::size_t hand = 0;
  for (const HandCase& c : hand_cases()) {
    VertexFunction f(c.f, "hand");
    auto fast = epd_fast(c.g, f);
    fin.add(fast);
    mismatches += !same_multiset(fast, epd_reduction_oracle(c.g, f));
    ++hand;
  }
  const double t = clock.seconds();
  report.record(1, "fast engine equals reduction oracle", mismatches == 0 && t <= 60.0,
                std::to_string(pairs) + " random + " + std::to_string(hand) + " hand cases, " +
                    std::to_string(mismatches) + " mismatches, " + fmt(t) + " s (limit 60 s)");
}

void stability(acceptance::Report& report, Finiteness& fin) {
  acceptance::Stopwatch clock;
  Rng rng(777);
  std::size_t chain_fail = 0, kind_fail = 0;
  double worst_kind_excess = -INFINITY;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(12);
    Graph g = trial % 2 == 0 ? erdos_renyi(n, 0.3, rng) : random_connected(n, std::min(n * (n - 1) / 2, n + 3), rng);
    std::vector<double> v(n);
    const bool integer = rng.bernoulli(0.5);
    for (double& x : v) x = integer ? static_cast<double>(rng.uniform_index(5)) : rng.uniform(0, 5);
    VertexFunction f(v, "f");
    const double eps = rng.uniform(0.0, 1.0);
    const std::uint64_t seed = rng.next_u64();
    StabilityReport r = stability_trial(g, f, eps, seed);
    chain_fail += !(r.lhs <= r.mid + r.tolerance && r.mid <= r.rhs + r.tolerance);
    for (double k : r.per_kind) {
      worst_kind_excess = std::max(worst_kind_excess, k - eps);
      kind_fail += k > eps + r.tolerance;
    }

    // Same perturbation as the trial, kept for the finiteness census.
    Rng pert(seed);
    std::vector<double> h = v;
    for (double& x : h) x += pert.uniform(-eps, eps);
    fin.add(epd_fast(g, f));
    fin.add(epd_fast(g, VertexFunction(h, "h")));
  }
  const double t = clock.seconds();
  report.record(2, "landscape sup <= bottleneck <= perturbation", chain_fail == 0 && t <= 120.0,
                std::to_string(trials) + " trials, " + std::to_string(chain_fail) + " failures, " + fmt(t) +
                    " s (limit 120 s)");
  report.record(3, "per-kind bottleneck <= epsilon", kind_fail == 0,
                std::to_string(kind_fail) + " violations over " + std::to_string(4 * trials) +
                    " kind comparisons, max (d_B - eps) = " + fmt(worst_kind_excess));
}

void landscapes(acceptance::Report& report) {
  Rng rng(5);
  double worst = 0;
  std::size_t order_fail = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto d = random_diagram(10, rng);
    std::vector<double> ts(100);
    for (double& t : ts) t = rng.uniform(-3, 6);
    std::sort(ts.begin(), ts.end());
    const std::size_t k_max = 5;
    auto l = landscape_on_grid(d, k_max, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t k = 0; k < k_max; ++k) {
        worst = std::max(worst, std::abs(l.pos_levels(k, i) - oracle::kth_positive(d, k + 1, ts[i])));
        worst = std::max(worst, std::abs(l.neg_levels(k, i) - oracle::kth_negative(d, k + 1, ts[i])));
        if (k + 1 < k_max) {
          order_fail += l.pos_levels(k, i) < l.pos_levels(k + 1, i);
          order_fail += l.neg_levels(k, i) > l.neg_levels(k + 1, i);
        }
      }
    }
  }
  report.record(5, "landscape equals k-th largest tent oracle", worst <= 1e-12 && order_fail == 0,
                "200 diagrams x 100 samples, max |diff| = " + fmt(worst) + " (tol 1e-12), ordering violations " +
                    std::to_string(order_fail));
}

void image_mass(acceptance::Report& report) {
  Rng rng(6);
  double worst = 0;
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    auto d = random_diagram(12, rng);
    ImageParams params;
    params.weight = ImageWeight::constant;
    params.pad_sigmas = 5.0;
    params.sigma = rng.uniform(0.05, 0.5);
    auto img = persistence_image(d, params);
    double n = 0;
    for (const EpdPoint& p : d.points) n += p.birth != p.death;
    const double err = std::abs(img.pixels.sum() - n);
    ok = ok && err <= 1e-3 * n;
    if (n > 0) worst = std::max(worst, err / n);
  }
  report.record(6, "image mass conservation", ok,
                "100 diagrams, 5 sigma padding, max relative mass error = " + fmt(worst) + " (tol 1e-3)");
}

void metrics(acceptance::Report& report) {
  Rng rng(7);
  std::size_t sym_fail = 0, tri_fail = 0;
  const double tol = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t e0 = 1 + rng.uniform_index(2), e1 = rng.uniform_index(3);
    auto a = comparable_diagram(e0, e1, rng), b = comparable_diagram(e0, e1, rng), c = comparable_diagram(e0, e1, rng);
    auto check = [&](auto dist) {
      double ab = dist(a, b), ba = dist(b, a), bc = dist(b, c), ac = dist(a, c);
      sym_fail += std::abs(ab - ba) > tol;
      tri_fail += ac > ab + bc + tol;
    };
    check([](const auto& x, const auto& y) { return bottleneck(x, y); });
    check([](const auto& x, const auto& y) { return wasserstein(x, y, 1.0); });
    check([](const auto& x, const auto& y) { return wasserstein(x, y, 2.0); });
    check([](const auto& x, const auto& y) { return landscape_sup_distance(x, y); });
    std::vector<double> grid(200);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -0.5 + 7.0 * static_cast<double>(i) / 199.0;
    for (double p : {1.0, 2.0}) {
      check([&](const auto& x, const auto& y) {
        return landscape_distance(landscape_on_grid(x, 3, grid), landscape_on_grid(y, 3, grid), p);
      });
    }
  }

  std::size_t brute_fail = 0, brute_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    for (PointKind k : all_point_kinds) {
      const bool diag = !is_essential(k);
      const std::size_t na = rng.uniform_index(7), nb = diag ? rng.uniform_index(7) : na;
      ExtendedPersistenceDiagram a, b;
      for (std::size_t i = 0; i < na; ++i) a.points.push_back(random_point(k, rng));
      for (std::size_t i = 0; i < nb; ++i) b.points.push_back(random_point(k, rng));
      double fast = bottleneck_kind(a, b, k).cost;
      double brute = oracle::brute_bottleneck(a.points, b.points, diag);
      brute_fail += std::abs(fast - brute) > 1e-12;
      ++brute_cases;
    }
  }
  report.record(7, "metric symmetry, triangle inequality, bottleneck vs brute force",
                sym_fail == 0 && tri_fail == 0 && brute_fail == 0,
                "100 triples x 6 distances: " + std::to_string(sym_fail) + " asymmetric, " + std::to_string(tri_fail) +
                    " triangle violations; " + std::to_string(brute_cases) + " brute-force comparisons, " +
                    std::to_string(brute_fail) + " mismatches");
}

void gradients(acceptance::Report& report) {
  Rng rng(8);
  const std::size_t input = 400;
  double worst = 0;
  std::size_t checked = 0;
  for (int batch = 0; batch < 10; ++batch) {
    const std::size_t graphs = 4 + rng.uniform_index(5);
    FeatureBatch fb{Eigen::MatrixXd(2 * graphs, input), paired_layout(graphs)};
    for (Eigen::Index i = 0; i < fb.features.rows(); ++i) {
      for (Eigen::Index j = 0; j < fb.features.cols(); ++j) fb.features(i, j) = rng.normal();
    }
    EtlMlp mlp(EtlMlp::default_widths(input), rng.next_u64());
    GradCheckOptions opts;
    opts.h = 1e-5;
    opts.samples = 50;
    opts.seed = rng.next_u64();
    auto r = grad_check(mlp, fb, LossConfig{}, opts);
    worst = std::max(worst, r.max_rel_error);
    checked += r.checked;
  }
  report.record(8, "gradient check on the default architecture", worst <= 1e-4,
                "10 batches, " + std::to_string(checked) + " parameters, h = 1e-5, max relative error = " + fmt(worst) +
                    " (tol 1e-4)");
}

void closed_forms(acceptance::Report& report) {
  double worst = 0;
  std::string sizes;
  for (std::size_t y : {2u, 4u, 8u}) {
    Eigen::MatrixXd same = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(y), 6, 0.3);
    auto r = ntxent_loss(make_batch(same, same), 0.2);
    const double expected = std::log(static_cast<double>(2 * y - 1));
    for (Eigen::Index i = 0; i < r.per_anchor.size(); ++i) worst = std::max(worst, std::abs(r.per_anchor(i) - expected));
    sizes += (sizes.empty() ? "" : ",") + std::to_string(y);
  }
  report.record(9, "identical embeddings give log(2Y-1)", worst <= 1e-12,
                "Y in {" + sizes + "}, max |diff| = " + fmt(worst) + " (tol 1e-12)");
}

void performance(acceptance::Report& report) {
  Rng rng(12);
  Graph g = random_connected(50000, 100000, rng);
  std::vector<double> v(g.num_vertices());
  for (double& x : v) x = rng.uniform01();
  VertexFunction f(v, "uniform");
  acceptance::Stopwatch clock;
  auto d = epd_fast(g, f);
  const double t = clock.seconds();
  Finiteness fin;
  fin.add(d);
  const bool counts = d.count(PointKind::Ext1) == 50001 && d.count(PointKind::Ext0) == 1;
  report.record(12, "fast engine on 50k vertices / 100k edges", t <= 2.0 && counts && fin.non_finite == 0,
                fmt(t) + " s (limit 2 s), " + std::to_string(d.size()) + " points");
}

}  // namespace

int main() {
  acceptance::Report report;
  Finiteness fin;
  oracle_equivalence(report, fin);
  stability(report, fin);
  report.record(4, "finite coordinates (criteria 1-3 diagrams; MUTAG part in acceptance_mutag)",
                fin.non_finite == 0,
                std::to_string(fin.diagrams) + " diagrams so far, " + std::to_string(fin.points) + " points, " +
                    std::to_string(fin.non_finite) + " non-finite");
  landscapes(report);
  image_mass(report);
  metrics(report);
  gradients(report);
  closed_forms(report);
  performance(report);
  return report.exit_code();
}
