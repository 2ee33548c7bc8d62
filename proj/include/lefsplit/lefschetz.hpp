#pragma once

// Hard Lefschetz on graded pieces, primitive subspaces, Lefschetz
// decompositions, and split model instances built from sl2-strings.

#include "lefsplit/instance.hpp"

#include <cstdint>

namespace lefsplit {

struct HardLefschetzReport {
  bool pass = true;
  int checked = 0;
  // First failing (i, d): e^i : Gr_(-i) V^d -> Gr_i V^(d+2i) not an isomorphism.
  int i = 0;
  int d = 0;
  Index sourceDim = 0;
  Index targetDim = 0;
  VecQ witness;  // kernel vector in Gr_(-i) V^d coordinates; empty if injective
};

HardLefschetzReport checkHardLefschetz(const GradedPieces& gp);

/// (i, d) -> P^(-i,d) inside Gr_(-i) V^d (quotient coordinates).
using PrimitiveTable = std::map<Slot, SubQ>;

/// P^(-i,d) = Ker e^(i+1). Throws HardLefschetzFailure when HL fails.
PrimitiveTable primitives(const GradedPieces& gp);

struct LefschetzDecomposition {
  // (k, d) -> [(j, e^j P^(-(2j-k), d-2j))] inside Gr_k V^d.
  std::map<Slot, std::vector<std::pair<int, SubQ>>> summands;
  bool direct = true;
  std::vector<Slot> failures;
};

LefschetzDecomposition lefschetzDecomposition(const GradedPieces& gp, const PrimitiveTable& pt);

/// `multiplicity` strings p, e p, ..., e^i p with p of perverse index -i in
/// degree d. When p != q the strings carry a Hodge type: copies come in pairs
/// (x, y) with x + iy of type (p, q) at the bottom.
struct StringEntry {
  int length = 0;  // i
  int degree = 0;  // d
  int multiplicity = 1;
  std::optional<Bidegree> hodgeType;
  friend bool operator==(const StringEntry&, const StringEntry&) = default;
};
using StringSpec = std::vector<StringEntry>;

enum class HodgeMode { none, tate, typed };

struct SplitModelOptions {
  int center = 0;
  bool pairing = false;
  HodgeMode hodge = HodgeMode::none;
};

/// Split instance with its ground truth.
struct SplitModel {
  Instance instance;
  std::map<Slot, SubQ> layers;   // (k, d) -> span of basis vectors of perverse index k
  std::map<Slot, SubQ> bottoms;  // (i, d) -> span of string bottoms of length i
  std::map<int, std::vector<int>> perverseIndex;  // per degree, per basis vector
};

SplitModel buildSplitModel(const StringSpec& spec, const SplitModelOptions& options = {});

struct Twist {
  Instance instance;
  std::map<int, MatQ> u;
};

/// Conjugates by a seeded unipotent u with u = id on every Gr piece; the
/// strictly lower part has integer entries in [-bound, bound] in the basis of
/// graded-piece lifts.
Twist twistModel(const Instance& inst, std::uint64_t seed, int bound);

}  // namespace lefsplit
