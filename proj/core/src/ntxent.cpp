#include <algorithm>
#include <array>
#include <cmath>

#include "extopo/contrastive.hpp"
#include "extopo/error.hpp"
#include "ntxent_eval.hpp"

namespace extopo {

std::vector<ViewRef> paired_layout(std::size_t graphs) {
  std::vector<ViewRef> out;
  out.reserve(2 * graphs);
  for (int v = 0; v < 2; ++v) {
    for (std::size_t g = 0; g < graphs; ++g) out.push_back({g, v});
  }
  return out;
}

namespace {

// Partner row of every row; throws LossError(shape) unless each graph has
// exactly views 0 and 1.
std::vector<std::size_t> partner_rows(const std::vector<ViewRef>& view_of) {
  std::vector<std::array<std::ptrdiff_t, 2>> seen;
  for (std::size_t r = 0; r < view_of.size(); ++r) {
    const ViewRef& ref = view_of[r];
    if (ref.view != 0 && ref.view != 1) throw LossError(LossErrorKind::shape, "view index must be 0 or 1");
    if (ref.graph >= seen.size()) seen.resize(ref.graph + 1, {-1, -1});
    auto& slot = seen[ref.graph][static_cast<std::size_t>(ref.view)];
    if (slot >= 0) {
      throw LossError(LossErrorKind::shape, "graph " + std::to_string(ref.graph) + " has a repeated view");
    }
    slot = static_cast<std::ptrdiff_t>(r);
  }
  std::vector<std::size_t> partner(view_of.size());
  for (std::size_t r = 0; r < view_of.size(); ++r) {
    const auto& pair = seen[view_of[r].graph];
    if (pair[0] < 0 || pair[1] < 0) {
      throw LossError(LossErrorKind::shape, "graph " + std::to_string(view_of[r].graph) + " lacks its second view");
    }
    partner[r] = static_cast<std::size_t>(pair[static_cast<std::size_t>(1 - view_of[r].view)]);
  }
  return partner;
}

}  // namespace

void EmbeddingBatch::validate() const {
  if (static_cast<std::size_t>(rows.rows()) != view_of.size()) {
    throw LossError(LossErrorKind::shape, "embedding rows and view map differ in length");
  }
  if (view_of.size() < 2) throw LossError(LossErrorKind::shape, "batch needs at least one graph");
  (void)partner_rows(view_of);
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    const double n = rows.row(r).norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw LossError(LossErrorKind::degenerate, "embedding row " + std::to_string(r) + " has zero or non-finite norm");
    }
  }
}

std::vector<std::size_t> EmbeddingBatch::positives() const { return partner_rows(view_of); }

EmbeddingBatch make_batch(const Eigen::MatrixXd& first, const Eigen::MatrixXd& second) {
  if (first.rows() != second.rows() || first.cols() != second.cols()) {
    throw LossError(LossErrorKind::shape, "views differ in shape");
  }
  EmbeddingBatch b;
  b.rows.resize(first.rows() * 2, first.cols());
  b.rows.topRows(first.rows()) = first;
  b.rows.bottomRows(second.rows()) = second;
  b.view_of = paired_layout(static_cast<std::size_t>(first.rows()));
  return b;
}

void LossConfig::validate() const {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw LossError(LossErrorKind::config, "zeta must be positive");
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw LossError(LossErrorKind::config, "alpha and beta must be non-negative");
  if (alpha == 0.0 && beta == 0.0) throw LossError(LossErrorKind::config, "alpha and beta cannot both be zero");
}

NtXentResult ntxent_loss(const EmbeddingBatch& batch, double zeta) {
  if (!(zeta > 0.0)) throw LossError(LossErrorKind::config, "zeta must be positive");
  batch.validate();
  NtXentResult r;
  r.per_anchor = detail::ntxent_per_anchor<double>(batch.rows, batch.positives(), zeta);
  r.loss = r.per_anchor.mean();
  return r;
}

NtXentResult ntxent_loss(const EmbeddingBatch& batch, double zeta, Eigen::MatrixXd& grad_rows) {
  if (!(zeta > 0.0)) throw LossError(LossErrorKind::config, "zeta must be positive");
  batch.validate();
  const auto pos = batch.positives();
  Eigen::MatrixXd prob;
  NtXentResult r;
  r.per_anchor = detail::ntxent_per_anchor<double>(batch.rows, pos, zeta, &prob);
  r.loss = r.per_anchor.mean();

  // dL/ds_ij = (P_ij - [j = pos(i)]) / m, s_ij = u_i . u_j / zeta.
  const Eigen::Index m = batch.rows.rows();
  Eigen::MatrixXd g = prob;
  for (Eigen::Index i = 0; i < m; ++i) g(i, static_cast<Eigen::Index>(pos[static_cast<std::size_t>(i)])) -= 1.0;
  g /= static_cast<double>(m);
  const Eigen::MatrixXd u = detail::row_normalized<double>(batch.rows);
  const Eigen::MatrixXd du = ((g + g.transpose()) * u) / zeta;

  grad_rows.resize(m, batch.rows.cols());
  for (Eigen::Index i = 0; i < m; ++i) {
    const double norm = batch.rows.row(i).norm();
    grad_rows.row(i) = (du.row(i) - u.row(i) * u.row(i).dot(du.row(i))) / norm;
  }
  return r;
}

double ntxent_lower_bound(std::size_t graphs, double zeta) {
  const double others = 2.0 * static_cast<double>(graphs) - 2.0;
  // -log(e^{1/z} / (e^{1/z} + others e^{-1/z})) = log(1 + others e^{-2/z})
  return std::log1p(others * std::exp(-2.0 / zeta));
}

double combined_loss(const EmbeddingBatch& graph_batch, const EmbeddingBatch& topo_batch, const LossConfig& cfg) {
  cfg.validate();
  if (graph_batch.view_of != topo_batch.view_of) {
    throw LossError(LossErrorKind::alignment, "graph and topological batches are not aligned");
  }
  const auto lg = ntxent_loss(graph_batch, cfg.zeta);
  const auto lt = ntxent_loss(topo_batch, cfg.zeta);
  if (cfg.mean) return cfg.alpha * lg.per_anchor.mean() + cfg.beta * lt.per_anchor.mean();
  return cfg.alpha * lg.per_anchor.sum() + cfg.beta * lt.per_anchor.sum();
}

}  // namespace extopo
