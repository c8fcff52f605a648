#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "extopo/error.hpp"
#include "extopo/metrics.hpp"

namespace extopo {

double linf_distance(const EpdPoint& a, const EpdPoint& b) noexcept {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_distance(const EpdPoint& p) noexcept { return std::abs(p.death - p.birth) / 2.0; }

namespace {

constexpr int unmatched = -1;

// Maximum bipartite matching, left and right sides of equal size n.
class HopcroftKarp {
 public:
  explicit HopcroftKarp(std::vector<std::vector<int>> adj)
      : adj_(std::move(adj)), n_(static_cast<int>(adj_.size())), match_l_(n_, unmatched),
        match_r_(n_, unmatched), dist_(n_) {}

  int run() {
    int size = 0;
    while (bfs()) {
      for (int u = 0; u < n_; ++u) {
        if (match_l_[u] == unmatched && dfs(u)) ++size;
      }
    }
    return size;
  }

  const std::vector<int>& match_left() const { return match_l_; }

 private:
  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < n_; ++u) {
      if (match_l_[u] == unmatched) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = -1;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[u]) {
        const int w = match_r_[v];
        if (w == unmatched) found = true;
        else if (dist_[w] < 0) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj_[u]) {
      const int w = match_r_[v];
      if (w == unmatched || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = v;
        match_r_[v] = u;
        return true;
      }
    }
    dist_[u] = -1;
    return false;
  }

  std::vector<std::vector<int>> adj_;
  int n_;
  std::vector<int> match_l_, match_r_, dist_;
};

// Left = a (na) then diagonal copies of b (nb); right = b (nb) then diagonal
// copies of a (na). Without the diagonal both sides are just a and b.
struct Augmented {
  std::span<const EpdPoint> a, b;
  bool diagonal;

  int size() const { return static_cast<int>(diagonal ? a.size() + b.size() : a.size()); }

  // Cost of pairing left l with right r, or nullopt when forbidden.
  std::optional<double> cost(int l, int r) const {
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    if (l < na && r < nb) return linf_distance(a[l], b[r]);
    if (!diagonal) return std::nullopt;
    if (l < na) return r - nb == l ? std::optional(diagonal_distance(a[l])) : std::nullopt;
    if (r < nb) return l - na == r ? std::optional(diagonal_distance(b[r])) : std::nullopt;
    return 0.0;
  }

  MatchingResult pairs_from(const std::vector<int>& match_left, double q) const {
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    MatchingResult out;
    double acc = 0.0;
    for (int l = 0; l < size(); ++l) {
      const int r = match_left[l];
      MatchedPair p;
      if (l < na) p.a = static_cast<std::size_t>(l);
      if (r < nb) p.b = static_cast<std::size_t>(r);
      if (!p.a && !p.b) continue;
      out.pairs.push_back(p);
      const double c = *cost(l, r);
      if (std::isinf(q)) acc = std::max(acc, c);
      else acc += std::pow(c, q);
    }
    out.cost = std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
    return out;
  }
};

void check_sizes(std::span<const EpdPoint> a, std::span<const EpdPoint> b, bool allow_diagonal) {
  if (!allow_diagonal && a.size() != b.size()) {
    throw MetricError(MetricErrorKind::essential_mismatch,
                      "essential classes differ in count (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
}

}  // namespace

MatchingResult bottleneck_matching(std::span<const EpdPoint> a, std::span<const EpdPoint> b, bool allow_diagonal) {
  check_sizes(a, b, allow_diagonal);
  const Augmented aug{a, b, allow_diagonal};
  const int n = aug.size();
  if (n == 0) return {};

  std::vector<double> candidates{0.0};
  for (int l = 0; l < n; ++l) {
    for (int r = 0; r < n; ++r) {
      if (auto c = aug.cost(l, r)) candidates.push_back(*c);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto attempt = [&](double delta) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
      for (int r = 0; r < n; ++r) {
        if (auto c = aug.cost(l, r); c && *c <= delta) adj[static_cast<std::size_t>(l)].push_back(r);
      }
    }
    HopcroftKarp hk(std::move(adj));
    const bool perfect = hk.run() == n;
    return std::make_pair(perfect, hk.match_left());
  };

  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (attempt(candidates[mid]).first) hi = mid;
    else lo = mid + 1;
  }
  const auto [ok, match] = attempt(candidates[lo]);
  if (!ok) throw std::logic_error("bottleneck_matching: no perfect matching at the largest candidate");
  return aug.pairs_from(match, std::numeric_limits<double>::infinity());
}

MatchingResult wasserstein_matching(std::span<const EpdPoint> a, std::span<const EpdPoint> b, double q,
                                    bool allow_diagonal) {
  if (!(q >= 1.0) || std::isinf(q)) throw MetricError(MetricErrorKind::parameter, "wasserstein needs finite q >= 1");
  check_sizes(a, b, allow_diagonal);
  const Augmented aug{a, b, allow_diagonal};
  const int n = aug.size();
  if (n == 0) return {};

  // Forbidden cells get a cost larger than any feasible assignment.
  std::vector<double> cost(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  double total = 0.0;
  for (int l = 0; l < n; ++l) {
    for (int r = 0; r < n; ++r) {
      const auto c = aug.cost(l, r);
      const double v = c ? std::pow(*c, q) : -1.0;
      cost[static_cast<std::size_t>(l) * n + r] = v;
      if (v > 0) total += v;
    }
  }
  const double forbidden = 2.0 * total + 1.0;
  for (double& v : cost) {
    if (v < 0) v = forbidden;
  }

  // Shortest augmenting path Hungarian method with potentials, 1-based.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> match_left(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) match_left[static_cast<std::size_t>(p[j] - 1)] = j - 1;
  return aug.pairs_from(match_left, q);
}

}  // namespace extopo
