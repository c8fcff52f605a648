#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

namespace extopo::oracle {

std::vector<std::vector<int>> bfs_distances(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<VertexId> q;
    dist[s][s] = 0;
    q.push(static_cast<VertexId>(s));
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      for (VertexId w : g.neighbors(u)) {
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][u] + 1;
          q.push(w);
        }
      }
    }
  }
  return dist;
}

namespace {

// Number of shortest paths between every pair, from distances alone.
std::vector<std::vector<double>> path_counts(const Graph& g, const std::vector<std::vector<int>>& dist) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[s][v] >= 0) order.push_back(v);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[s][a] < dist[s][b]; });
    sigma[s][s] = 1.0;
    for (std::size_t v : order) {
      if (v == s) continue;
      for (VertexId w : g.neighbors(static_cast<VertexId>(v))) {
        if (dist[s][w] == dist[s][v] - 1) sigma[s][v] += sigma[s][w];
      }
    }
  }
  return sigma;
}

}  // namespace

std::vector<double> betweenness(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<double> out(n, 0.0);
  if (n < 3) return out;
  const auto dist = bfs_distances(g);
  const auto sigma = path_counts(g, dist);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      if (dist[s][t] < 0) continue;
      for (std::size_t v = 0; v < n; ++v) {
        if (v == s || v == t || dist[s][v] < 0 || dist[v][t] < 0) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t]) out[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
  }
  const double norm = static_cast<double>((n - 1) * (n - 2)) / 2.0;
  for (double& x : out) x /= norm;
  return out;
}

std::vector<double> closeness(const Graph& g) {
  const auto dist = bfs_distances(g);
  std::vector<double> out(g.num_vertices(), 0.0);
  for (std::size_t v = 0; v < out.size(); ++v) {
    double total = 0.0;
    std::size_t reach = 0;
    for (int d : dist[v]) {
      if (d > 0) {
        total += d;
        ++reach;
      }
    }
    out[v] = reach ? static_cast<double>(reach) / total : 0.0;
  }
  return out;
}

std::vector<double> subgraph_exact(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const Eigen::VectorXd ev = es.eigenvalues().array().exp();
  std::vector<double> out(g.num_vertices());
  for (Eigen::Index v = 0; v < n; ++v) {
    out[static_cast<std::size_t>(v)] = (es.eigenvectors().row(v).array().square().transpose() * ev.array()).sum();
  }
  return out;
}

double tent(double b, double d, double t) {
  const double lo = std::min(b, d), hi = std::max(b, d);
  if (lo == hi || t <= lo || t >= hi) return 0.0;
  const double mid = (lo + hi) / 2.0;
  const double height = t <= mid ? t - lo : hi - t;
  return b < d ? height : -height;
}

double kth_positive(const ExtendedPersistenceDiagram& d, std::size_t k, double t) {
  std::vector<double> v;
  for (const EpdPoint& p : d.points) {
    if (p.birth < p.death) v.push_back(tent(p.birth, p.death, t));
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  return k <= v.size() ? v[k - 1] : 0.0;
}

double kth_negative(const ExtendedPersistenceDiagram& d, std::size_t k, double t) {
  std::vector<double> v;
  for (const EpdPoint& p : d.points) {
    if (p.death < p.birth) v.push_back(tent(p.birth, p.death, t));
  }
  std::sort(v.begin(), v.end());
  return k <= v.size() ? v[k - 1] : 0.0;
}

namespace {

double sup(const EpdPoint& a, const EpdPoint& b) {
  return std::max(std::fabs(a.birth - b.birth), std::fabs(a.death - b.death));
}

// Walks every assignment of each a-point to an unused b-point or (when
// allowed) the diagonal; leftover b-points go to the diagonal.
template <class Combine>
double enumerate(const std::vector<EpdPoint>& a, const std::vector<EpdPoint>& b, bool diagonal, Combine combine) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> used(b.size(), 0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double acc) {
    if (i == a.size()) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!used[j]) {
          if (!diagonal) return;
          acc = combine(acc, std::fabs(b[j].death - b[j].birth) / 2.0);
        }
      }
      best = std::min(best, acc);
      return;
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      rec(i + 1, combine(acc, sup(a[i], b[j])));
      used[j] = 0;
    }
    if (diagonal) rec(i + 1, combine(acc, std::fabs(a[i].death - a[i].birth) / 2.0));
  };
  rec(0, 0.0);
  return best;
}

}  // namespace

double brute_bottleneck(const std::vector<EpdPoint>& a, const std::vector<EpdPoint>& b, bool diagonal) {
  return enumerate(a, b, diagonal, [](double acc, double c) { return std::max(acc, c); });
}

double brute_wasserstein_power(const std::vector<EpdPoint>& a, const std::vector<EpdPoint>& b, double q,
                               bool diagonal) {
  return enumerate(a, b, diagonal, [q](double acc, double c) { return acc + std::pow(c, q); });
}

std::vector<long double> ntxent(const Eigen::MatrixXd& rows, const std::vector<std::size_t>& positive, double zeta) {
  const std::size_t m = static_cast<std::size_t>(rows.rows());
  auto cosine = [&](std::size_t i, std::size_t j) {
    long double dot = 0, ni = 0, nj = 0;
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      const long double x = rows(static_cast<Eigen::Index>(i), c), y = rows(static_cast<Eigen::Index>(j), c);
      dot += x * y;
      ni += x * x;
      nj += y * y;
    }
    return dot / std::sqrt(ni * nj);
  };
  std::vector<long double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    long double denom = 0;
    for (std::size_t g = 0; g < m; ++g) {
      if (g != i) denom += std::exp(cosine(i, g) / zeta);
    }
    out[i] = -std::log(std::exp(cosine(i, positive[i]) / zeta) / denom);
  }
  return out;
}

}  // namespace extopo::oracle
