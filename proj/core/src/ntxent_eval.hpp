#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace extopo::detail {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
Mat<S> row_normalized(const Mat<S>& rows) {
  Mat<S> u = rows;
  for (Eigen::Index r = 0; r < u.rows(); ++r) u.row(r) /= rows.row(r).norm();
  return u;
}

// Per-anchor losses. With `prob`, row i holds the softmax over j != i.
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, 1> ntxent_per_anchor(const Mat<S>& rows, const std::vector<std::size_t>& pos,
                                                      S zeta, Mat<S>* prob = nullptr) {
  using std::exp;
  using std::log;
  const Mat<S> u = row_normalized(rows);
  const Mat<S> s = (u * u.transpose()) / zeta;
  const Eigen::Index m = rows.rows();
  Eigen::Matrix<S, Eigen::Dynamic, 1> loss(m);
  if (prob) *prob = Mat<S>::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    S top = -std::numeric_limits<S>::infinity();
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j != i && s(i, j) > top) top = s(i, j);
    }
    S denom = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j != i) denom += exp(s(i, j) - top);
    }
    const S lse = top + log(denom);
    loss(i) = lse - s(i, static_cast<Eigen::Index>(pos[static_cast<std::size_t>(i)]));
    if (prob) {
      for (Eigen::Index j = 0; j < m; ++j) {
        if (j != i) (*prob)(i, j) = exp(s(i, j) - lse);
      }
    }
  }
  return loss;
}

}  // namespace extopo::detail
