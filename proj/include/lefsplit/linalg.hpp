#pragma once

// Dense exact linear algebra, templated on the field.
//
// Convention: a matrix M of shape (m x n) acts on column vectors of length n.
// Spanning sets of subspaces are stored as matrix rows.

#include "lefsplit/scalar.hpp"

#include <optional>
#include <vector>

namespace lefsplit {

using Index = Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;
using MatG = Mat<GaussianRational>;
using VecG = Vec<GaussianRational>;

template <class S>
Mat<S> zeros(Index rows, Index cols) {
  return Mat<S>::Constant(rows, cols, S(0));
}

template <class S>
Mat<S> identity(Index n) {
  Mat<S> m = zeros<S>(n, n);
  for (Index k = 0; k < n; ++k) m(k, k) = S(1);
  return m;
}

template <class Derived>
bool isZero(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      if (m(r, c) != S(0)) return false;
  return true;
}

/// Shape-aware equality (Eigen's operator== requires equal shapes).
template <class A, class B>
bool sameMatrix(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

/// Reduced row-echelon form with zero rows removed, plus pivot columns.
template <class S>
struct Echelon {
  Mat<S> rows;
  std::vector<Index> pivots;
};

template <class S>
Echelon<S> echelon(Mat<S> m) {
  std::vector<Index> pivots;
  Index lead = 0;
  for (Index c = 0; c < m.cols() && lead < m.rows(); ++c) {
    Index p = lead;
    while (p < m.rows() && m(p, c) == S(0)) ++p;
    if (p == m.rows()) continue;
    if (p != lead) m.row(p).swap(m.row(lead));
    const S inv = S(1) / m(lead, c);
    for (Index k = c; k < m.cols(); ++k) m(lead, k) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == S(0)) continue;
      const S f = m(r, c);
      for (Index k = c; k < m.cols(); ++k) m(r, k) -= f * m(lead, k);
    }
    pivots.push_back(c);
    ++lead;
  }
  return {Mat<S>(m.topRows(lead)), std::move(pivots)};
}

template <class S>
Mat<S> rref(const Mat<S>& m) {
  return echelon(m).rows;
}

template <class S>
Index rank(const Mat<S>& m) {
  return static_cast<Index>(echelon(m).pivots.size());
}

/// Rows spanning {v : m v = 0}, in reduced row-echelon form.
template <class S>
Mat<S> nullSpace(const Mat<S>& m) {
  const Echelon<S> e = echelon(m);
  const Index n = m.cols();
  std::vector<bool> isPivot(static_cast<std::size_t>(n), false);
  for (Index p : e.pivots) isPivot[static_cast<std::size_t>(p)] = true;
  Mat<S> basis = zeros<S>(n - static_cast<Index>(e.pivots.size()), n);
  Index row = 0;
  for (Index f = 0; f < n; ++f) {
    if (isPivot[static_cast<std::size_t>(f)]) continue;
    basis(row, f) = S(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis(row, e.pivots[r]) = -e.rows(static_cast<Index>(r), f);
    ++row;
  }
  return rref(basis);
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Index n = m.rows();
  Mat<S> aug(n, 2 * n);
  aug << m, identity<S>(n);
  const Echelon<S> e = echelon(aug);
  if (e.rows.rows() < n || (n > 0 && e.pivots[static_cast<std::size_t>(n - 1)] != n - 1))
    return std::nullopt;
  return Mat<S>(e.rows.rightCols(n));
}

/// Solves x^T a = b^T for a row vector x, i.e. expresses b as a combination
/// of the rows of a. Returns nullopt when b is not in the row space.
template <class S>
std::optional<Vec<S>> solveRows(const Mat<S>& a, const Vec<S>& b) {
  // Columns of [a^T | b]: the last one must not become a pivot.
  Mat<S> aug(a.cols(), a.rows() + 1);
  aug << a.transpose(), b;
  const Echelon<S> e = echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.rows()) return std::nullopt;
  Vec<S> x = Vec<S>::Constant(a.rows(), S(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    x(e.pivots[r]) = e.rows(static_cast<Index>(r), a.rows());
  return x;
}

template <class S>
Mat<S> vstack(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows() + b.rows(), a.rows() > 0 ? a.cols() : b.cols());
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  if (b.rows() > 0) out.bottomRows(b.rows()) = b;
  return out;
}

inline MatG complexify(const MatQ& m) {
  MatG out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out(r, c) = GaussianRational(m(r, c));
  return out;
}

inline MatQ conj(const MatQ& m) { return m; }
inline MatG conj(const MatG& m) {
  MatG out = m;
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out(r, c) = conj(m(r, c));
  return out;
}

}  // namespace lefsplit
