#include <doctest.h>

#include <cmath>
#include <sstream>

#include "extopo/error.hpp"
#include "extopo/filtration.hpp"
#include "extopo/persistence.hpp"
#include "extopo/random.hpp"
#include "synthetic.hpp"

using namespace extopo;

namespace {

ExtendedPersistenceDiagram diagram(std::vector<EpdPoint> points) {
  ExtendedPersistenceDiagram d;
  d.points = std::move(points);
  return d;
}

constexpr PointKind Ord0 = PointKind::Ord0;
constexpr PointKind Ext0 = PointKind::Ext0;
constexpr PointKind Ext1 = PointKind::Ext1;
constexpr PointKind Rel1 = PointKind::Rel1;

VertexFunction random_integer_function(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(rng.uniform_index(5));
  return VertexFunction(v, "int");
}

void check_cardinalities(const Graph& g, const ExtendedPersistenceDiagram& d) {
  std::size_t comps = count_components(g);
  std::size_t beta1 = g.num_edges() + comps - g.num_vertices();
  CHECK(d.count(Ext0) == comps);
  CHECK(d.count(Ext1) == beta1);
  CHECK(d.count(Ord0) == g.num_vertices() - comps);
  CHECK(d.count(Rel1) == g.num_vertices() - comps);
  for (const EpdPoint& p : d.points) CHECK(is_well_formed(p));
}

}  // namespace

TEST_CASE("triangle f = (1,2,3)") {
  Graph g(3, {{0, 1}, {1, 2}, {0, 2}});
  VertexFunction f({1, 2, 3}, "f");
  auto expected = diagram({{2, 2, Ord0}, {3, 3, Ord0}, {1, 3, Ext0}, {3, 1, Ext1}, {2, 2, Rel1}, {1, 1, Rel1}});
  CHECK(same_multiset(epd_reduction_oracle(g, f), expected));
  CHECK(same_multiset(epd_fast(g, f), expected));
}

TEST_CASE("single vertex") {
  auto d = epd_fast(Graph(1), VertexFunction({4.5}, "f"));
  CHECK(same_multiset(d, diagram({{4.5, 4.5, Ext0}})));
}

TEST_CASE("path of three with f = (0,5,1)") {
  Graph g(3, {{0, 1}, {1, 2}});
  VertexFunction f({0, 5, 1}, "f");
  auto expected = diagram({{5, 5, Ord0}, {1, 5, Ord0}, {0, 5, Ext0}, {1, 1, Rel1}, {0, 0, Rel1}});
  CHECK(same_multiset(epd_reduction_oracle(g, f), expected));
  CHECK(same_multiset(epd_fast(g, f), expected));
}

TEST_CASE("two disjoint edges") {
  Graph g(4, {{0, 1}, {2, 3}});
  VertexFunction f({0, 1, 2, 3}, "f");
  auto d = epd_reduction_oracle(g, f);
  CHECK(d.count(Ext1) == 0);
  auto ext0 = d.of_kind(Ext0);
  CHECK(same_multiset(diagram(ext0), diagram({{0, 1, Ext0}, {2, 3, Ext0}})));
  for (const EpdPoint& p : d.of_kind(Ord0)) CHECK(p.birth == p.death);
  CHECK(same_multiset(epd_fast(g, f), d));
}

TEST_CASE("four-cycle contains Ext1 (3, 0)") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  VertexFunction f({0, 1, 2, 3}, "f");
  auto d = epd_reduction_oracle(g, f);
  auto ext1 = d.of_kind(Ext1);
  REQUIRE(ext1.size() == 1);
  CHECK(ext1[0] == EpdPoint{3, 0, Ext1});
  CHECK(same_multiset(epd_fast(g, f), d));
}

TEST_CASE("constant function") {
  Graph g(5, {{0, 1}, {1, 2}, {3, 4}});
  auto d = epd_fast(g, VertexFunction(std::vector<double>(5, 2.0), "c"));
  for (const EpdPoint& p : d.of_kind(Ord0)) CHECK(p.birth == p.death);
  CHECK(same_multiset(diagram(d.of_kind(Ext0)), diagram({{2, 2, Ext0}, {2, 2, Ext0}})));
}

TEST_CASE("shape errors") {
  Graph g(3, {{0, 1}});
  VertexFunction f({1, 2}, "f");
  try {
    epd_fast(g, f);
    FAIL("expected PersistenceError");
  } catch (const PersistenceError& e) {
    CHECK(e.kind() == PersistenceErrorKind::shape);
  }
  CHECK_THROWS_AS(epd_reduction_oracle(g, f), PersistenceError);
  OracleOptions small;
  small.max_vertices = 2;
  try {
    epd_reduction_oracle(g, VertexFunction({1, 2, 3}, "f"), small);
    FAIL("expected PersistenceError");
  } catch (const PersistenceError& e) {
    CHECK(e.kind() == PersistenceErrorKind::too_large);
  }
}

TEST_CASE("bundle gives one diagram per function in order") {
  Graph g = testing::synthetic_molecules(1, 3).graphs[0];
  std::vector<std::string> names{"degree", "betweenness", "closeness", "subgraph"};
  FiltrationBundle b = make_bundle(g, names);
  auto ds = epd_bundle(g, b);
  REQUIRE(ds.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(ds[i].function_name == names[i]);
    check_cardinalities(g, ds[i]);
  }
  std::vector<std::string> one{"degree"};
  CHECK(epd_bundle(g, make_bundle(g, one)).size() == 1);
}

TEST_CASE("property: fast engine equals the reduction oracle") {
  Rng rng(31337);
  for (int trial = 0; trial < 1500; ++trial) {
    std::size_t n = 1 + rng.uniform_index(12);
    Graph g = erdos_renyi(n, 0.3, rng);
    VertexFunction f = trial % 2 == 0 ? random_integer_function(n, rng) : [&] {
      std::vector<double> v(n);
      for (double& x : v) x = rng.uniform(-1, 1);
      return VertexFunction(v, "real");
    }();
    auto fast = epd_fast(g, f);
    auto slow = epd_reduction_oracle(g, f);
    CHECK(same_multiset(fast, slow));
    check_cardinalities(g, fast);
  }
}

TEST_CASE("property: denser graphs also agree") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng.uniform_index(20);
    Graph g = erdos_renyi(n, rng.uniform(0.3, 0.9), rng);
    auto f = random_integer_function(n, rng);
    CHECK(same_multiset(epd_fast(g, f), epd_reduction_oracle(g, f)));
  }
}

TEST_CASE("property: shift equivariance") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.uniform_index(12);
    Graph g = erdos_renyi(n, 0.3, rng);
    auto f = random_integer_function(n, rng);
    double c = static_cast<double>(rng.uniform_index(9)) - 4.0;
    std::vector<double> shifted = f.values();
    for (double& x : shifted) x += c;
    CHECK(same_multiset(epd_fast(g, VertexFunction(shifted, "s")), epd_fast(g, f).shifted(c)));
  }
}

TEST_CASE("property: every coordinate is a value of f") {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.uniform_index(12);
    Graph g = erdos_renyi(n, 0.4, rng);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(0, 10);
    auto d = epd_fast(g, VertexFunction(v, "r"));
    for (const EpdPoint& p : d.points) {
      CHECK(std::isfinite(p.birth));
      CHECK(std::isfinite(p.death));
      CHECK(std::find(v.begin(), v.end(), p.birth) != v.end());
      CHECK(std::find(v.begin(), v.end(), p.death) != v.end());
    }
  }
}

TEST_CASE("serialization round-trips and rejects garbage") {
  auto d = diagram({{0.125, 3, Ext0}, {2, 1, Ext1}, {1.5, 1.5, Ord0}, {0.3333333333, 0.1, Rel1}});
  std::string text = format_diagram(d);
  CHECK(text.find("Ext0 0.125 3\n") != std::string::npos);
  std::istringstream in("# header\n\n" + text);
  auto back = read_diagram(in);
  CHECK(back.size() == 4);
  CHECK(back.points[3].birth == doctest::Approx(0.3333333333).epsilon(1e-9));
  std::istringstream bad("Ext2 1 2\n");
  CHECK_THROWS_AS(read_diagram(bad), PersistenceError);
  std::istringstream wrong_orientation("Ext1 0 1\n");
  CHECK_THROWS_AS(read_diagram(wrong_orientation), PersistenceError);
}

TEST_CASE("canonical and shifted helpers") {
  auto d = diagram({{3, 1, Ext1}, {0, 2, Ord0}});
  auto c = d.canonical();
  CHECK(c.points[0].kind == Ord0);
  auto s = d.shifted(1.5);
  CHECK(s.points[0] == EpdPoint{4.5, 2.5, Ext1});
}
