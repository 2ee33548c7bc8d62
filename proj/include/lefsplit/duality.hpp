#pragma once

// Pairings V^d x V^(2n-d) -> Q: compatibility flags, the orthogonality form of
// the splitting, Hodge-type checks of the pairing, induced pairings on
// summands, and projectors onto sub-Hodge structures of summands.

#include "lefsplit/hodge.hpp"

namespace lefsplit {

struct PairingFlags {
  bool nondegenerate = true;
  bool etaSelfAdjoint = true;
  bool filtrationSelfDual = true;
  std::string firstFailure;  // empty when all flags hold

  bool all() const { return nondegenerate && etaSelfAdjoint && filtrationSelfDual; }
};

/// Nondegeneracy of every block, Q(eta a, b) = Q(a, eta b), and
/// (W_(<=i) V^d)^perp = W_(<=-i-1) V^(2n-d).
PairingFlags pairingFlags(const Instance& inst, const IntersectionPairing& q);

/// {w in V^(2n-d) : Q(s, w) = 0}.
SubQ perpInDual(const Instance& inst, const IntersectionPairing& q, int d, const SubQ& s);
/// {v in V^d : Q(v, t) = 0} for t inside V^(2n-d).
SubQ perpInSource(const Instance& inst, const IntersectionPairing& q, int d, const SubQ& t);

/// W_(<=-i) V^d intersected with (eta^(i+t) W_(<=-i-t) V^(2n-d-2(i+t)))^perp for
/// t >= 1. Throws CompatibilityFailure naming the first failed flag.
SubQ orthogonalCharacterization(const Instance& inst, const IntersectionPairing& q, int i, int d);

struct DualityHSReport {
  bool pass = true;
  int checked = 0;
  std::vector<std::string> failures;
  // First failure: a in piece (p,q) of V^d, b in piece (p',q') of V^(2n-d), Q(a,b) != 0.
  VecG witnessSource;
  VecG witnessDual;
  int twist = 0;  // the pairing lands in Q(-n)
};

/// Q(H^(p,q) V^d, H^(p',q') V^(2n-d)) = 0 unless (p',q') = (n-p, n-q).
DualityHSReport dualityHSCheck(const Instance& inst, const IntersectionPairing& q,
                               const HodgeBigrading& h);

/// d -> Q restricted to G_k V^d x G_(-k) V^(2n-d), rows and columns in the
/// adapted bases of the two summands.
std::map<int, MatQ> inducedPairingOnSummand(const Instance& inst, const IntersectionPairing& q,
                                            const SplittingResult& result, int k);

struct ProjectorResult {
  int k = 0;
  int d = 0;
  MatQ matrix;  // endomorphism of V^d
  Index rank = 0;
  bool idempotent = false;
  /// matrix as an element of V^d (x) V^(2n-d): T = matrix Q_d^(-T).
  MatQ tensor;
  std::optional<bool> typeOk;  // unset without Hodge data
  Bidegree type{0, 0};         // (n, n)
  std::vector<std::string> typeFailures;
};

/// Projection of V^d onto the sub-Hodge structure `target` of G_k V^d along
/// the remaining summands and `complement`, a complement of target inside
/// G_k V^d (by default the quotient-lift complement). Throws
/// PreconditionFailure for a degenerate block or a target that is not SHS
/// inside G_k V^d.
ProjectorResult projector(const Instance& inst, const IntersectionPairing& q,
                          const SplittingResult& result, int k, int d, const SubQ& target,
                          const std::optional<SubQ>& complement = std::nullopt);

}  // namespace lefsplit
