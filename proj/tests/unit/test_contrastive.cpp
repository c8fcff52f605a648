#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "extopo/contrastive.hpp"
#include "extopo/error.hpp"
#include "extopo/random.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace extopo;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

EmbeddingBatch random_batch(std::size_t graphs, Eigen::Index dim, Rng& rng) {
  return make_batch(random_matrix(static_cast<Eigen::Index>(graphs), dim, rng),
                    random_matrix(static_cast<Eigen::Index>(graphs), dim, rng));
}

FeatureBatch random_features(std::size_t graphs, Eigen::Index dim, Rng& rng) {
  return {random_matrix(static_cast<Eigen::Index>(2 * graphs), dim, rng), paired_layout(graphs)};
}

Graph induced(const Graph& g, const std::vector<VertexId>& keep) {
  std::vector<int> index(g.num_vertices(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (index[e.u] >= 0 && index[e.v] >= 0) {
      edges.push_back({static_cast<VertexId>(index[e.u]), static_cast<VertexId>(index[e.v])});
    }
  }
  FeatureMatrix x(keep.size(), g.feature_dim());
  for (std::size_t i = 0; i < keep.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = g.node_features()->row(keep[i]);
  return Graph(keep.size(), edges, x);
}

TrainConfig small_config() {
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.seed = 5;
  cfg.hidden = {16, 8};
  cfg.output_dim = 4;
  cfg.batch_size = 4;
  cfg.features.samples = 10;
  return cfg;
}

}  // namespace

TEST_CASE("ntxent: identical rows give log 3") {
  Eigen::MatrixXd same = Eigen::MatrixXd::Ones(2, 3);
  auto r = ntxent_loss(make_batch(same, same), 0.2);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(r.per_anchor(i) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(r.loss == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("ntxent: orthogonal negatives at zeta 1") {
  Eigen::MatrixXd v0(2, 2), v1(2, 2);
  v0 << 1, 0, 0, 1;
  v1 = v0;
  auto r = ntxent_loss(make_batch(v0, v1), 1.0);
  const double e = std::exp(1.0);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(r.per_anchor(i) == doctest::Approx(-std::log(e / (e + 2))).epsilon(1e-12));
}

TEST_CASE("ntxent matches the long double oracle") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto b = random_batch(2 + rng.uniform_index(6), 3 + static_cast<Eigen::Index>(rng.uniform_index(5)), rng);
    double zeta = rng.uniform(0.1, 2.0);
    auto r = ntxent_loss(b, zeta);
    auto ref = oracle::ntxent(b.rows, b.positives(), zeta);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(r.per_anchor(static_cast<Eigen::Index>(i)) == doctest::Approx(static_cast<double>(ref[i])).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: ntxent invariant under scaling and common permutation") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t y = 2 + rng.uniform_index(5);
    auto b = random_batch(y, 4, rng);
    double base = ntxent_loss(b, 0.2).loss;

    EmbeddingBatch scaled = b;
    for (Eigen::Index i = 0; i < scaled.rows.rows(); ++i) scaled.rows.row(i) *= rng.uniform(0.1, 10.0);
    CHECK(ntxent_loss(scaled, 0.2).loss == doctest::Approx(base).epsilon(1e-12));
    CHECK(ntxent_loss(EmbeddingBatch{5.0 * b.rows, b.view_of}, 0.2).loss == doctest::Approx(base).epsilon(1e-12));

    std::vector<std::size_t> perm(2 * y);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    EmbeddingBatch permuted{Eigen::MatrixXd(b.rows.rows(), b.rows.cols()), std::vector<ViewRef>(2 * y)};
    for (std::size_t i = 0; i < perm.size(); ++i) {
      permuted.rows.row(static_cast<Eigen::Index>(perm[i])) = b.rows.row(static_cast<Eigen::Index>(i));
      permuted.view_of[perm[i]] = b.view_of[i];
    }
    CHECK(ntxent_loss(permuted, 0.2).loss == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("property: ntxent lower bound") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t y = 2 + rng.uniform_index(6);
    double zeta = rng.uniform(0.05, 1.0);
    auto r = ntxent_loss(random_batch(y, 3, rng), zeta);
    double bound = ntxent_lower_bound(y, zeta);
    for (Eigen::Index i = 0; i < r.per_anchor.size(); ++i) CHECK(r.per_anchor(i) >= bound - 1e-9);
  }
  const double zeta = 0.2, e = std::exp(1 / zeta), en = std::exp(-1 / zeta);
  CHECK(ntxent_lower_bound(3, zeta) == doctest::Approx(-std::log(e / (e + 4 * en))).epsilon(1e-12));
  Eigen::MatrixXd v0(2, 1), v1(2, 1);
  v0 << 1, -1;
  v1 << 1, -1;
  CHECK(ntxent_loss(make_batch(v0, v1), zeta).loss == doctest::Approx(ntxent_lower_bound(2, zeta)).epsilon(1e-12));
}

TEST_CASE("batch validation") {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 3);
  Eigen::MatrixXd o = Eigen::MatrixXd::Ones(2, 3);
  try {
    ntxent_loss(make_batch(z, o), 0.2);
    FAIL("expected LossError");
  } catch (const LossError& e) {
    CHECK(e.kind() == LossErrorKind::degenerate);
  }
  EmbeddingBatch bad{Eigen::MatrixXd::Ones(4, 2), {{0, 0}, {0, 0}, {1, 0}, {1, 1}}};
  CHECK_THROWS_AS(bad.validate(), LossError);
  EmbeddingBatch odd{Eigen::MatrixXd::Ones(3, 2), {{0, 0}, {0, 1}, {1, 0}}};
  CHECK_THROWS_AS(odd.validate(), LossError);
}

TEST_CASE("combined loss") {
  Rng rng(4);
  auto g = random_batch(4, 5, rng);
  auto t = random_batch(4, 3, rng);
  double sg = ntxent_loss(g, 0.2).per_anchor.sum();
  double st = ntxent_loss(t, 0.2).per_anchor.sum();

  LossConfig cfg;
  cfg.alpha = 1.3;
  cfg.beta = 0.0;
  CHECK(combined_loss(g, t, cfg) == 1.3 * sg);
  cfg.alpha = cfg.beta = 0.7;
  CHECK(combined_loss(g, g, cfg) == doctest::Approx(2 * 0.7 * sg).epsilon(1e-14));
  cfg.alpha = cfg.beta = 0.5;
  CHECK(combined_loss(g, t, cfg) == doctest::Approx(0.5 * sg + 0.5 * st).epsilon(1e-14));
  cfg.mean = true;
  CHECK(combined_loss(g, t, cfg) == doctest::Approx((0.5 * sg + 0.5 * st) / 8).epsilon(1e-14));

  auto other = random_batch(3, 3, rng);
  try {
    combined_loss(g, other, cfg);
    FAIL("expected LossError");
  } catch (const LossError& e) {
    CHECK(e.kind() == LossErrorKind::alignment);
  }
  LossConfig zero;
  zero.alpha = zero.beta = 0;
  CHECK_THROWS_AS(zero.validate(), LossError);
  LossConfig cold;
  cold.zeta = 0;
  CHECK_THROWS_AS(cold.validate(), LossError);
}

TEST_CASE("etl forward examples") {
  Rng rng(5);
  auto fb = random_features(3, 4, rng);
  auto id = EtlMlp::identity(4);
  CHECK(id.forward(fb.features) == fb.features);
  CHECK(etl_forward(id, fb).rows == fb.features);

  auto zero = EtlMlp::zeros({4, 3});
  try {
    etl_forward(zero, fb);
    FAIL("expected LossError");
  } catch (const LossError& e) {
    CHECK(e.kind() == LossErrorKind::degenerate);
  }

  EtlMlp a(EtlMlp::default_widths(4), 9), b(EtlMlp::default_widths(4), 9);
  CHECK(a == b);
  CHECK(a.forward(fb.features) == b.forward(fb.features));
  CHECK(a.num_layers() == 5);
  CHECK(a.output_dim() == 32);
  try {
    a.forward(Eigen::MatrixXd::Ones(2, 5));
    FAIL("expected LossError");
  } catch (const LossError& e) {
    CHECK(e.kind() == LossErrorKind::shape);
  }
}

TEST_CASE("etl parameters and persistence round-trip") {
  EtlMlp m({3, 4, 2}, 11);
  CHECK(m.parameter_count() == 3 * 4 + 4 + 4 * 2 + 2);
  auto theta = m.parameters();
  CHECK(theta(1) == m.weight(0)(0, 1));
  CHECK(theta(12) == m.bias(0)(0));
  EtlMlp copy = m;
  copy.set_parameters(theta);
  CHECK(copy == m);
  std::stringstream io;
  m.save(io);
  CHECK(EtlMlp::load(io) == m);
}

TEST_CASE("grad check on a linear layer") {
  Rng rng(6);
  auto fb = random_features(3, 5, rng);
  EtlMlp lin({5, 4}, 1);
  auto rep = grad_check(lin, fb, LossConfig{});
  CHECK(rep.checked >= 20);
  CHECK(rep.max_rel_error <= 1e-4);
}

TEST_CASE("grad check on shipped architectures") {
  Rng rng(7);
  for (std::size_t in : {400u, 20u}) {
    auto fb = random_features(4, static_cast<Eigen::Index>(in), rng);
    EtlMlp mlp(EtlMlp::default_widths(in), 3);
    GradCheckOptions opts;
    opts.samples = 50;
    auto rep = grad_check(mlp, fb, LossConfig{}, opts);
    CHECK(rep.checked == 50);
    CHECK(rep.max_rel_error <= 1e-4);
  }
}

TEST_CASE("grad check in a constant region relies on the absolute floor") {
  Eigen::MatrixXd same = Eigen::MatrixXd::Ones(4, 3);
  FeatureBatch fb{same, paired_layout(2)};
  auto rep = grad_check(EtlMlp({3, 2}, 2), fb, LossConfig{});
  CHECK(rep.max_abs_error <= 1e-8);
  CHECK(rep.max_rel_error <= 1e-4);
}

TEST_CASE("central difference error shrinks quadratically in h") {
  Rng rng(8);
  auto fb = random_features(3, 4, rng);
  EtlMlp lin({4, 3}, 4);
  Eigen::MatrixXd grad;
  ntxent_loss(etl_forward(lin, fb), 0.2, grad);
  Eigen::VectorXd analytic = lin.backward(fb.features, grad);
  int checked = 0;
  for (std::size_t idx = 0; idx < lin.parameter_count(); ++idx) {
    long double e1 = std::abs(finite_difference(lin, fb, 0.2, idx, 1e-2L) - analytic(idx));
    long double e2 = std::abs(finite_difference(lin, fb, 0.2, idx, 2e-2L) - analytic(idx));
    if (e1 < 1e-9L) continue;
    ++checked;
    double ratio = static_cast<double>(e2 / e1);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
  CHECK(checked > 0);
}

TEST_CASE("encoder examples") {
  auto ds = testing::synthetic_molecules(3, 1);
  const Graph& g = ds.graphs[0];
  auto f = static_cast<Eigen::Index>(g.feature_dim());
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(f, f);
  Eigen::RowVectorXd mean = g.node_features()->colwise().mean();
  CHECK((encode_graph_baseline(g, 0, id) - mean).cwiseAbs().maxCoeff() <= 1e-15);

  Rng rng(2);
  std::vector<VertexId> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  auto a = encode_graph_baseline(g, 2, 16, 4);
  auto b = encode_graph_baseline(permute_vertices(g, perm), 2, 16, 4);
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(a == encode_graph_baseline(g, 2, 16, 4));
}

TEST_CASE("encoder on a disconnected graph is the size-weighted mix of components") {
  auto ds = testing::synthetic_molecules(2, 9);
  const Graph& g1 = ds.graphs[0];
  const Graph& g2 = ds.graphs[1];
  std::size_t n1 = g1.num_vertices(), n2 = g2.num_vertices();
  std::vector<Edge> edges = g1.edges();
  for (const Edge& e : g2.edges()) {
    edges.push_back({static_cast<VertexId>(e.u + n1), static_cast<VertexId>(e.v + n1)});
  }
  FeatureMatrix x(n1 + n2, g1.feature_dim());
  x << *g1.node_features(), *g2.node_features();
  Graph both(n1 + n2, edges, x);

  std::vector<std::size_t> comp = connected_components(both);
  std::vector<VertexId> first, second;
  for (std::size_t v = 0; v < both.num_vertices(); ++v) (comp[v] == comp[0] ? first : second).push_back(static_cast<VertexId>(v));
  Eigen::MatrixXd map = baseline_map(both.feature_dim(), 8, 3);
  auto whole = encode_graph_baseline(both, 2, map);
  auto e1 = encode_graph_baseline(induced(both, first), 2, map);
  auto e2 = encode_graph_baseline(induced(both, second), 2, map);
  double w1 = static_cast<double>(first.size()) / static_cast<double>(both.num_vertices());
  CHECK((whole - (w1 * e1 + (1 - w1) * e2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("trainer: zero epochs returns the initial model") {
  auto ds = testing::synthetic_molecules(8, 2);
  auto cfg = small_config();
  cfg.epochs = 0;
  auto r = train_topo(ds, cfg);
  CHECK(r.loss_trace.empty());
  CHECK(r.model == r.initial_model);
  CHECK(train_topo(ds, cfg).model == r.model);
}

TEST_CASE("trainer: same seed gives identical traces") {
  auto ds = testing::synthetic_molecules(10, 3);
  auto cfg = small_config();
  for (TrainMode mode : {TrainMode::topo, TrainMode::joint, TrainMode::graph}) {
    auto a = train(ds, cfg, mode);
    auto b = train(ds, cfg, mode);
    REQUIRE(a.loss_trace.size() == cfg.epochs);
    CHECK(a.loss_trace == b.loss_trace);
    CHECK(a.model == b.model);
  }
  auto other = cfg;
  other.seed = 6;
  CHECK(train_topo(ds, other).loss_trace != train_topo(ds, cfg).loss_trace);
}

TEST_CASE("trainer: graph-only mode never updates and joint with beta 0 matches it") {
  auto ds = testing::synthetic_molecules(10, 4);
  auto cfg = small_config();
  auto graph = train(ds, cfg, TrainMode::graph);
  CHECK(graph.model == graph.initial_model);
  cfg.loss.beta = 0;
  auto joint = train(ds, cfg, TrainMode::joint);
  CHECK(joint.loss_trace == graph.loss_trace);
}

TEST_CASE("trainer: the loss decreases on separable data") {
  auto ds = testing::synthetic_molecules(24, 5);
  auto cfg = small_config();
  cfg.epochs = 15;
  cfg.hidden = {32, 32};
  cfg.output_dim = 8;
  auto r = train_topo(ds, cfg);
  CHECK(r.loss_trace.back() < r.loss_trace.front());
}

TEST_CASE("train config parsing and round trip") {
  std::istringstream in(
      "# comment\nzeta = 0.5\nfiltrations = degree, closeness\nhidden = 8,4\nepochs = 7\nsummary = EPI\nmean = true\n");
  auto cfg = parse_train_config(in);
  CHECK(cfg.loss.zeta == 0.5);
  CHECK(cfg.features.filtrations == std::vector<std::string>{"degree", "closeness"});
  CHECK(cfg.hidden == std::vector<std::size_t>{8, 4});
  CHECK(cfg.epochs == 7);
  CHECK(cfg.features.summary == SummaryKind::EPI);
  CHECK(cfg.loss.mean);

  std::stringstream io;
  write_train_config(io, cfg);
  auto back = parse_train_config(io);
  std::stringstream again;
  write_train_config(again, back);
  std::stringstream first;
  write_train_config(first, cfg);
  CHECK(first.str() == again.str());

  std::istringstream unknown("learning_rate = 3\n");
  try {
    parse_train_config(unknown);
    FAIL("expected LossError");
  } catch (const LossError& e) {
    CHECK(e.kind() == LossErrorKind::config);
  }
  std::istringstream bad("zeta = -1\n");
  CHECK_THROWS_AS(parse_train_config(bad), LossError);
}
