#include "extopo/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

#include "extopo/error.hpp"

namespace extopo {

VertexFunction::VertexFunction(std::vector<double> values, std::string name)
    : values_(std::move(values)), name_(std::move(name)) {
  for (std::size_t v = 0; v < values_.size(); ++v) {
    if (!std::isfinite(values_[v])) {
      throw FiltrationError(FiltrationErrorKind::non_finite,
                            "vertex function '" + name_ + "': non-finite value at vertex " + std::to_string(v));
    }
  }
}

std::optional<Centrality> parse_centrality(std::string_view name) noexcept {
  if (name == "degree") return Centrality::degree;
  if (name == "betweenness") return Centrality::betweenness;
  if (name == "closeness") return Centrality::closeness;
  if (name == "subgraph") return Centrality::subgraph;
  return std::nullopt;
}

const char* to_string(Centrality c) noexcept {
  switch (c) {
    case Centrality::degree: return "degree";
    case Centrality::betweenness: return "betweenness";
    case Centrality::closeness: return "closeness";
    case Centrality::subgraph: return "subgraph";
  }
  return "unknown";
}

VertexFunction degree_centrality(const Graph& g) {
  std::vector<double> values(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) values[v] = static_cast<double>(g.degree(v));
  return VertexFunction(std::move(values), "degree");
}

VertexFunction betweenness_centrality(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<double> score(n, 0.0);
  std::vector<double> sigma(n), delta(n);
  std::vector<long long> dist(n);
  std::vector<VertexId> order;
  order.reserve(n);
  std::vector<VertexId> queue(n);

  for (VertexId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const VertexId v = queue[head++];
      order.push_back(v);
      for (VertexId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const VertexId w = *it;
      for (VertexId v : g.neighbors(w)) {
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) score[w] += delta[w];
    }
  }

  if (n < 3) {
    std::fill(score.begin(), score.end(), 0.0);
  } else {
    // Each unordered pair was accumulated from both endpoints.
    const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
    for (double& x : score) x = x / 2.0 / pairs;
  }
  return VertexFunction(std::move(score), "betweenness");
}

VertexFunction closeness_centrality(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<double> values(n, 0.0);
  std::vector<long long> dist(n);
  std::vector<VertexId> queue(n);
  for (VertexId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    long long total = 0;
    while (head < tail) {
      const VertexId v = queue[head++];
      total += dist[v];
      for (VertexId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
      }
    }
    const std::size_t reachable = tail;
    values[s] = total > 0 ? static_cast<double>(reachable - 1) / static_cast<double>(total) : 0.0;
  }
  return VertexFunction(std::move(values), "closeness");
}

VertexFunction subgraph_centrality(const Graph& g, const SubgraphOptions& options) {
  const std::size_t n = g.num_vertices();
  if (n > options.max_vertices) {
    throw FiltrationError(FiltrationErrorKind::too_large,
                          "subgraph centrality: " + std::to_string(n) + " vertices exceeds cap " +
                              std::to_string(options.max_vertices));
  }
  std::vector<double> values(n, 0.0);
  std::vector<double> x(n), y(n);
  for (VertexId v = 0; v < n; ++v) {
    std::fill(x.begin(), x.end(), 0.0);
    x[v] = 1.0;
    double acc = 1.0;
    for (int k = 1; k <= options.terms; ++k) {
      // y = A x / k, so x holds A^k e_v / k! after step k.
      const double inv_k = 1.0 / static_cast<double>(k);
      for (VertexId u = 0; u < n; ++u) {
        double s = 0.0;
        for (VertexId w : g.neighbors(u)) s += x[w];
        y[u] = s * inv_k;
      }
      std::swap(x, y);
      acc += x[v];
    }
    values[v] = acc;
  }
  return VertexFunction(std::move(values), "subgraph");
}

double edge_value_sublevel(const VertexFunction& f, const Edge& e) { return std::max(f[e.u], f[e.v]); }

double edge_value_superlevel(const VertexFunction& f, const Edge& e) { return std::min(f[e.u], f[e.v]); }

VertexFunction compute_centrality(const Graph& g, Centrality c, const SubgraphOptions& options) {
  switch (c) {
    case Centrality::degree: return degree_centrality(g);
    case Centrality::betweenness: return betweenness_centrality(g);
    case Centrality::closeness: return closeness_centrality(g);
    case Centrality::subgraph: return subgraph_centrality(g, options);
  }
  throw FiltrationError(FiltrationErrorKind::unknown, "unknown centrality");
}

VertexFunction min_max_normalized(const VertexFunction& f) {
  if (f.size() == 0) return f;
  const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  const double span = *hi - *lo;
  std::vector<double> out(f.size(), 0.0);
  if (span > 0) {
    for (std::size_t v = 0; v < f.size(); ++v) out[v] = (f[v] - *lo) / span;
  }
  return VertexFunction(std::move(out), f.name());
}

std::vector<Centrality> parse_centrality_list(std::span<const std::string> names) {
  if (names.empty()) throw FiltrationError(FiltrationErrorKind::empty, "no filtration functions requested");
  std::vector<Centrality> out;
  for (const std::string& name : names) {
    const auto c = parse_centrality(name);
    if (!c) {
      throw FiltrationError(FiltrationErrorKind::unknown,
                            "unknown filtration '" + name + "' (expected degree|betweenness|closeness|subgraph)");
    }
    if (std::find(out.begin(), out.end(), *c) != out.end()) {
      throw FiltrationError(FiltrationErrorKind::duplicate, "filtration '" + name + "' listed twice");
    }
    out.push_back(*c);
  }
  return out;
}

FiltrationBundle make_bundle(const Graph& g, std::span<const std::string> names, const BundleOptions& options) {
  FiltrationBundle bundle;
  for (Centrality c : parse_centrality_list(names)) {
    VertexFunction f = compute_centrality(g, c, options.subgraph);
    bundle.functions.push_back(options.min_max_normalize ? min_max_normalized(f) : std::move(f));
  }
  return bundle;
}

SweepOrder sweep_order(const Graph& g, const VertexFunction& f) {
  SweepOrder order;
  const auto& edges = g.edges();
  order.vertices_ascending.resize(g.num_vertices());
  std::iota(order.vertices_ascending.begin(), order.vertices_ascending.end(), VertexId{0});
  std::sort(order.vertices_ascending.begin(), order.vertices_ascending.end(),
            [&](VertexId a, VertexId b) { return std::make_pair(f[a], a) < std::make_pair(f[b], b); });

  order.edges_ascending.resize(edges.size());
  std::iota(order.edges_ascending.begin(), order.edges_ascending.end(), std::size_t{0});
  order.edges_descending = order.edges_ascending;

  std::sort(order.edges_ascending.begin(), order.edges_ascending.end(), [&](std::size_t a, std::size_t b) {
    const Edge& ea = edges[a];
    const Edge& eb = edges[b];
    const double va = edge_value_sublevel(f, ea);
    const double vb = edge_value_sublevel(f, eb);
    return std::tie(va, ea.v, ea.u) < std::tie(vb, eb.v, eb.u);
  });
  std::sort(order.edges_descending.begin(), order.edges_descending.end(), [&](std::size_t a, std::size_t b) {
    const Edge& ea = edges[a];
    const Edge& eb = edges[b];
    const double va = edge_value_superlevel(f, ea);
    const double vb = edge_value_superlevel(f, eb);
    return std::tie(va, ea.v, ea.u) > std::tie(vb, eb.v, eb.u);
  });
  return order;
}

}  // namespace extopo
