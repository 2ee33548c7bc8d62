#pragma once

// Pure Hodge structures with Q(i) coordinates: sub-Hodge-structure and
// Hodge-morphism tests, the splitting-lemma checker, and Hodge verification
// of computed splittings.

#include "lefsplit/splitting.hpp"

namespace lefsplit {

/// Checks p + q = weight, independence, spanning and conj(H^(p,q)) = H^(q,p).
/// Throws InputError naming the violated condition.
void validateHodgeStructure(const HodgeStructure& h);

HodgeStructure hodgeTate(int weight, Index dim);
/// The same pieces with (p,q) relabeled (q,p).
HodgeStructure conjugateStructure(const HodgeStructure& h);

/// S (x) Q(i) equals the direct sum of its intersections with the pieces.
bool isSHS(const SubQ& s, const HodgeStructure& h);
bool isSHS(const Instance& inst, const SubQ& s, int d);

/// f maps H^(p,q) into H^(p+a,q+a).
bool isHSMap(const MatQ& f, int a, const HodgeStructure& src, const HodgeStructure& dst);
bool isHSMap(const GradedMap& f, int a, const HodgeBigrading& src, const HodgeBigrading& dst,
             const GradedSpace& v);

struct BhoVerdict {
  bool gIsHSMap = false;
  std::vector<std::string> hypotheses;  // verified hypotheses, in order
};

/// A --g--> B --p--> A with p g = id, g(A) a sub-Hodge structure of B, and p a
/// Hodge morphism forces g to be a Hodge morphism. Throws HypothesisFailure
/// when a hypothesis fails and EngineDefect when the conclusion fails.
BhoVerdict bhoCheck(const MatQ& g, const MatQ& p, const HodgeStructure& a, const HodgeStructure& b);

struct HodgeSplittingReport {
  bool pass = true;
  int checked = 0;
  std::vector<std::string> failures;
};

/// Requires Hodge data, SHS filtration steps and eta of type (1,1) (else
/// PreconditionFailure); then every E and G piece must be SHS and each V^d
/// their direct sum (else EngineDefect).
HodgeSplittingReport verifyHodgeSplitting(const Instance& inst, const SplittingResult& result);

struct GroupInvariants {
  std::map<int, SubQ> invariants;  // per degree
  std::size_t order = 0;
  bool generatorsAreHS = false;
  bool shs = false;  // meaningful when generatorsAreHS
};

/// Common fixed space of a finite group of degree-0 automorphisms, after
/// enumerating the group (at most `bound` elements, else GroupClosureBoundExceeded).
GroupInvariants groupInvariants(const std::vector<GradedMap>& generators, const HodgeBigrading& h,
                                const GradedSpace& v, std::size_t bound = 10000);

}  // namespace lefsplit
