#pragma once

// Subspaces of a coordinate space, stored by their reduced row-echelon basis.
// Two subspaces are equal exactly when their canonical bases are identical.

#include "lefsplit/linalg.hpp"

#include <stdexcept>
#include <string>

namespace lefsplit {

template <class S>
class Subspace {
 public:
  Subspace() : basis_(0, 0) {}

  /// Span of the rows of `rows`.
  static Subspace span(const Mat<S>& rows) {
    Subspace s;
    s.ambient_ = rows.cols();
    Echelon<S> e = echelon(rows);
    s.basis_ = std::move(e.rows);
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace span(const Mat<S>& rows, Index ambient) {
    if (rows.rows() == 0) return zero(ambient);
    if (rows.cols() != ambient) throw std::invalid_argument("span: ambient dimension mismatch");
    return span(rows);
  }
  static Subspace zero(Index ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat<S>(0, ambient);
    return s;
  }
  static Subspace full(Index ambient) { return span(identity<S>(ambient)); }

  Index ambientDim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  bool isZero() const { return dim() == 0; }
  bool isFull() const { return dim() == ambient_; }
  const Mat<S>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// v minus its expansion along the pivot coordinates; zero iff v lies in the subspace.
  Vec<S> reduce(Vec<S> v) const {
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      const S f = v(pivots_[r]);
      if (f != S(0)) v -= f * basis_.row(static_cast<Index>(r)).transpose();
    }
    return v;
  }
  bool contains(const Vec<S>& v) const { return lefsplit::isZero(reduce(v)); }

  /// Coordinates of v (assumed to lie in the subspace) in the canonical basis.
  Vec<S> coordinates(const Vec<S>& v) const {
    Vec<S> x(dim());
    for (std::size_t r = 0; r < pivots_.size(); ++r) x(static_cast<Index>(r)) = v(pivots_[r]);
    return x;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() &&
           a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Index ambient_ = 0;
  Mat<S> basis_;
  std::vector<Index> pivots_;
};

using SubQ = Subspace<Rational>;
using SubG = Subspace<GaussianRational>;

namespace detail {
inline void requireSameAmbient(Index a, Index b, const char* op) {
  if (a != b)
    throw std::invalid_argument(std::string(op) + ": ambient dimensions " + std::to_string(a) +
                                " and " + std::to_string(b) + " differ");
}
}  // namespace detail

/// {v : m v = 0}
template <class S>
Subspace<S> kernel(const Mat<S>& m) {
  return Subspace<S>::span(nullSpace(m), m.cols());
}

/// Column space of m.
template <class S>
Subspace<S> image(const Mat<S>& m) {
  return Subspace<S>::span(Mat<S>(m.transpose()), m.rows());
}

template <class S>
Subspace<S> image(const Mat<S>& m, const Subspace<S>& s) {
  detail::requireSameAmbient(m.cols(), s.ambientDim(), "image");
  if (s.isZero()) return Subspace<S>::zero(m.rows());
  return Subspace<S>::span(Mat<S>(s.basis() * m.transpose()), m.rows());
}

/// Rows whose common kernel is exactly s (bilinear annihilator, no conjugation).
template <class S>
Mat<S> annihilator(const Subspace<S>& s) {
  if (s.isZero()) return identity<S>(s.ambientDim());
  return nullSpace(s.basis());
}

template <class S>
Subspace<S> sum(const Subspace<S>& a, const Subspace<S>& b) {
  detail::requireSameAmbient(a.ambientDim(), b.ambientDim(), "sum");
  return Subspace<S>::span(vstack(a.basis(), b.basis()), a.ambientDim());
}

template <class S>
Subspace<S> intersect(const Subspace<S>& a, const Subspace<S>& b) {
  detail::requireSameAmbient(a.ambientDim(), b.ambientDim(), "intersect");
  return kernel(vstack(annihilator(a), annihilator(b)));
}

/// {v : m v in s}
template <class S>
Subspace<S> preimage(const Mat<S>& m, const Subspace<S>& s) {
  detail::requireSameAmbient(m.rows(), s.ambientDim(), "preimage");
  if (s.isFull()) return Subspace<S>::full(m.cols());
  return kernel(Mat<S>(annihilator(s) * m));
}

/// b is a subspace of a.
template <class S>
bool contains(const Subspace<S>& a, const Subspace<S>& b) {
  detail::requireSameAmbient(a.ambientDim(), b.ambientDim(), "contains");
  for (Index r = 0; r < b.dim(); ++r)
    if (!a.contains(b.basis().row(r).transpose())) return false;
  return true;
}

/// First basis row of b outside a, if any.
template <class S>
std::optional<Vec<S>> containmentWitness(const Subspace<S>& a, const Subspace<S>& b) {
  for (Index r = 0; r < b.dim(); ++r) {
    Vec<S> v = b.basis().row(r).transpose();
    if (!a.contains(v)) return v;
  }
  return std::nullopt;
}

/// The quotient a/b with a recorded basis.
///
/// `projection` (dim(a/b) x ambient) sends a vector of a to its quotient
/// coordinates; `lifts` holds one representative in a per quotient basis
/// vector. The representatives are the rows of a's canonical basis that are
/// not pivots of b expressed in a's coordinates, so the choice depends only
/// on the pair (a, b).
template <class S>
struct Quotient {
  Mat<S> projection;
  Mat<S> lifts;
  Index dim() const { return lifts.rows(); }
};

template <class S>
Quotient<S> quotient(const Subspace<S>& a, const Subspace<S>& b) {
  detail::requireSameAmbient(a.ambientDim(), b.ambientDim(), "quotient");
  if (!contains(a, b)) throw std::invalid_argument("quotient: denominator is not contained in numerator");
  const Index n = a.ambientDim();
  const Index ka = a.dim();
  // Coordinates in a: x = sel * v.
  Mat<S> sel = zeros<S>(ka, n);
  for (Index r = 0; r < ka; ++r) sel(r, a.pivots()[static_cast<std::size_t>(r)]) = S(1);
  const Echelon<S> eb = echelon(Mat<S>(b.basis() * sel.transpose()));
  std::vector<bool> isPivot(static_cast<std::size_t>(ka), false);
  for (Index p : eb.pivots) isPivot[static_cast<std::size_t>(p)] = true;

  // reduce(x) = x - R^T x[P]
  Mat<S> reduceOp = identity<S>(ka);
  for (std::size_t r = 0; r < eb.pivots.size(); ++r)
    reduceOp.col(eb.pivots[r]) -= eb.rows.row(static_cast<Index>(r)).transpose();

  const Index q = ka - static_cast<Index>(eb.pivots.size());
  Mat<S> take = zeros<S>(q, ka);
  Mat<S> lifts(q, n);
  Index row = 0;
  for (Index c = 0; c < ka; ++c) {
    if (isPivot[static_cast<std::size_t>(c)]) continue;
    take(row, c) = S(1);
    lifts.row(row) = a.basis().row(c);
    ++row;
  }
  return {Mat<S>(take * reduceOp * sel), std::move(lifts)};
}

inline SubG complexify(const SubQ& s) {
  return SubG::span(complexify(s.basis()), s.ambientDim());
}

inline SubG conj(const SubG& s) { return SubG::span(conj(s.basis()), s.ambientDim()); }

/// The rational subspace, when s is defined over Q (s == conj(s)).
inline std::optional<SubQ> realForm(const SubG& s) {
  if (conj(s) != s) return std::nullopt;
  // A conjugation-stable canonical basis has rational entries.
  MatQ rows(s.dim(), s.ambientDim());
  for (Index r = 0; r < s.dim(); ++r)
    for (Index c = 0; c < s.ambientDim(); ++c) rows(r, c) = s.basis()(r, c).re;
  return SubQ::span(rows, s.ambientDim());
}

}  // namespace lefsplit
