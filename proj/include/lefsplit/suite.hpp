#pragma once

// Seeded property suite over twisted split models.

#include "lefsplit/report.hpp"

namespace lefsplit {

struct SeedOutcome {
  std::uint64_t seed = 0;
  Index totalDim = 0;
  std::vector<CheckResult> checks;
  ExitCode exit = ExitCode::ok;
};

/// Checks, in order: round trip, dual path, ground truth, equivariance, eta
/// commutation, then (with pairing) three-path equality, induced-pairing
/// nondegeneracy, (with Hodge data) duality types, projectors, Hodge
/// verification, and the splitting lemma on a seeded instance.
SeedOutcome runSeedChecks(std::uint64_t seed, const Profile& profile);

struct SuiteSummary {
  std::vector<SeedOutcome> outcomes;  // sorted by seed; truncated after a defect
  /// check name -> (pass, fail, skipped)
  std::map<std::string, std::array<int, 3>> counts;
  ExitCode exit = ExitCode::ok;
  std::optional<std::uint64_t> defectSeed;
};

/// Seeds [start, start + count). With jobs > 1 seeds run on worker threads; the
/// summary does not depend on the number of jobs, except that the run stops
/// reporting after the first seed with an engine defect.
SuiteSummary runSuite(std::uint64_t start, std::uint64_t count, const Profile& profile,
                      unsigned jobs = 1);

}  // namespace lefsplit
