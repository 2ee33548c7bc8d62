#pragma once

// Graded spaces, graded maps, increasing filtrations and their graded pieces.

#include "lefsplit/error.hpp"
#include "lefsplit/subspace.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lefsplit {

using Slot = std::pair<int, int>;

/// Finite-dimensional Z-graded space V = sum_d V^d with optional basis labels.
struct GradedSpace {
  std::map<int, Index> dims;
  std::map<int, std::vector<std::string>> labels;

  Index dim(int d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
  }
  /// Degrees with nonzero dimension, ascending.
  std::vector<int> degrees() const;
  Index totalDim() const;
  /// Offset of V^d inside the total space (degrees ascending).
  Index offset(int d) const;
  std::string label(int d, Index k) const;

  friend bool operator==(const GradedSpace&, const GradedSpace&) = default;
};

/// Map V -> V of fixed degree; missing blocks are zero.
struct GradedMap {
  int shift = 0;
  std::map<int, MatQ> blocks;

  /// Block V^d -> V^(d+shift).
  MatQ block(const GradedSpace& v, int d) const;
  /// f^k : V^d -> V^(d + k*shift).
  MatQ power(const GradedSpace& v, int d, int k) const;
  /// The total-space matrix (requires shift-compatible degrees).
  MatQ total(const GradedSpace& v) const;

  friend bool operator==(const GradedMap& a, const GradedMap& b);
};

/// a o b
GradedMap compose(const GradedMap& a, const GradedMap& b, const GradedSpace& v);

/// Increasing filtration W_(<=i) V^d, stored sparsely by jump position.
///
/// A query below the first stored step is the zero subspace; a query at or
/// above a stored step returns the last stored step at or below it.
class Filtration {
 public:
  void set(int d, int i, SubQ step);
  SubQ at(const GradedSpace& v, int d, int i) const;
  /// Stored steps for degree d (jump position -> subspace).
  const std::map<int, SubQ>& steps(int d) const;
  const std::map<int, std::map<int, SubQ>>& allSteps() const { return steps_; }
  /// Drops steps equal to their predecessor (or zero steps with no predecessor).
  void normalize();

  friend bool operator==(const Filtration& a, const Filtration& b);

 private:
  std::map<int, std::map<int, SubQ>> steps_;
};

struct FiltrationReport {
  std::map<int, std::pair<int, int>> range;  // d -> (i_min, i_max) of nonzero Gr_i
  int amplitude = 0;                          // max |i| with some Gr_i != 0
};

/// Checks monotone, exhaustive, bounded. Throws InputError "non-monotone at (d,i)".
FiltrationReport validateFiltration(const GradedSpace& v, const Filtration& w);

struct CompatibilityReport {
  bool ok = true;
  int d = 0;
  int i = 0;
  VecQ witness;
};

/// eta(W_(<=i) V^d) inside W_(<=i+2) V^(d+2) for all (d, i).
CompatibilityReport checkStrictCompatibility(const GradedSpace& v, const Filtration& w,
                                             const GradedMap& eta);

struct GradedPiece {
  SubQ lower;  // W_(<=i-1)
  SubQ upper;  // W_(<=i)
  Quotient<Rational> quotient;
  Index dim() const { return quotient.dim(); }
};

/// Gr_i V^d with induced blocks e : Gr_i V^d -> Gr_(i+2) V^(d+2).
class GradedPieces {
 public:
  GradedPieces(const GradedSpace& v, const Filtration& w, const GradedMap& eta);

  const GradedSpace& space() const { return space_; }
  Index dim(int d, int i) const;
  const GradedPiece* piece(int d, int i) const;
  /// Nonzero slots (d, i), sorted.
  std::vector<Slot> slots() const;
  int amplitude() const { return report_.amplitude; }
  const FiltrationReport& filtrationReport() const { return report_; }

  /// Induced e : Gr_i V^d -> Gr_(i+2) V^(d+2); correctly shaped zero when absent.
  MatQ e(int d, int i) const;
  /// e^k : Gr_i V^d -> Gr_(i+2k) V^(d+2k).
  MatQ ePower(int d, int i, int k) const;
  /// Quotient coordinates of v in W_(<=i) V^d.
  VecQ project(int d, int i, const VecQ& v) const;
  /// Representative in V^d of a vector of Gr_i V^d.
  VecQ lift(int d, int i, const VecQ& coords) const;

 private:
  GradedSpace space_;
  FiltrationReport report_;
  std::map<Slot, GradedPiece> pieces_;
  std::map<Slot, MatQ> e_;
};

/// Monodromy weight filtration of a nilpotent N centered at `center`:
/// N W_(<=i) in W_(<=i-2) and N^j : Gr_(center+j) -> Gr_(center-j) iso.
/// Returned as jump position -> step. Throws InputError if N is not nilpotent.
std::map<int, SubQ> weightFiltration(const MatQ& n, int center);

bool isNilpotent(const MatQ& n);

struct WeightAxiomReport {
  bool pass = true;
  std::string failure;  // first violated axiom
};

/// Checks the two defining properties of a weight filtration given by its jumps.
WeightAxiomReport checkWeightAxioms(const MatQ& n, const std::map<int, SubQ>& jumps, int center);

}  // namespace lefsplit
