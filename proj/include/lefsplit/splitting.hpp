#pragma once

// The canonical splitting: embedded primitive subspaces E^(-i,d) of V^d and
// the assembled graded decomposition G_k V^d.

#include "lefsplit/lefschetz.hpp"

namespace lefsplit {

/// One step of the iterated-kernel schedule: eta^power, then projection to
/// Gr_target; `dim` is the dimension of the kernel after the step.
struct PsiStep {
  int step = 0;
  int power = 0;
  int target = 0;
  Index dim = 0;
  friend bool operator==(const PsiStep&, const PsiStep&) = default;
};

struct PsiFragment {
  SubQ space;
  std::vector<PsiStep> log;
};

/// Iterated kernels for slot (i, d), stopping at t = r - i.
///
///   S_0 = { v in W_(<=-i) : eta^(i+1) v in W_(<=i+1) }
///   S_t = { v in S_(t-1) : eta^(i+t) v in W_(<=i+t-1) },  after asserting
///         eta^(i+t) S_(t-1) lies in W_(<=i+t).
///
/// Throws ContainmentViolation when an assertion fails.
PsiFragment psiSchedule(const Instance& inst, int amplitude, int i, int d);
PsiFragment psiSchedule(const Instance& inst, int i, int d);

/// W_(<=-i) V^d intersected with { v : eta^s v in W_(<=s-1) } for i < s <= r, in one pass.
SubQ directCharacterization(const Instance& inst, int amplitude, int i, int d);
SubQ directCharacterization(const Instance& inst, int i, int d);

struct SplittingResult {
  int amplitude = 0;
  std::map<Slot, SubQ> E;                          // (i, d)
  std::map<Slot, std::vector<PsiStep>> schedule;   // (i, d)
  /// (i, d): lifts to E^(-i,d) of the canonical basis of P^(-i,d).
  std::map<Slot, MatQ> lifts;
  std::map<Slot, SubQ> G;                          // (k, d)
  /// (k, d): basis of G_k V^d made of eta^j applied to primitive lifts, j ascending.
  std::map<Slot, MatQ> adaptedBasis;
  std::vector<std::string> checks;                 // passed assembly checks

  SubQ e(const Instance& inst, int i, int d) const;
  SubQ g(const Instance& inst, int k, int d) const;
};

/// Computes E^(-i,d) by the Psi schedule for every slot with W_(<=-i) V^d != 0,
/// cross-checks against the direct characterization, then assembles.
/// Throws ContainmentViolation, AssemblyFailure, or VerificationError on a
/// dual-path mismatch.
SplittingResult computeSplitting(const Instance& inst);

/// G_k V^d = sum_(j >= max(0,k)) eta^j E^(-(2j-k), d-2j), with the direct-sum,
/// filtration and primitive-isomorphism checks. Throws AssemblyFailure.
SplittingResult assemble(const Instance& inst, const GradedPieces& gp, const PrimitiveTable& pt,
                         std::map<Slot, SubQ> e, std::map<Slot, std::vector<PsiStep>> schedule);

/// The element of E^(-i,d) whose class in Gr_(-i) V^d is `grClass`.
VecQ liftPrimitive(const GradedPieces& gp, const SplittingResult& result, int i, int d,
                   const VecQ& grClass);

struct EtaCommutationReport {
  bool pass = true;
  int checked = 0;
  std::vector<std::string> failures;
};

/// eta^j' (eta^j E) = eta^(j+j') E with full rank for j + j' <= i, and
/// eta^(i+1) E^(-i,d) inside W_(<=i).
EtaCommutationReport etaCommutationCheck(const Instance& inst, const SplittingResult& result);

}  // namespace lefsplit
