#include "lefsplit/suite.hpp"

#include <atomic>
#include <functional>
#include <set>
#include <thread>

namespace lefsplit {

namespace {

std::string slotName(int a, int d) {
  return "(" + std::to_string(a) + "," + std::to_string(d) + ")";
}

SubQ lookup(const std::map<Slot, SubQ>& m, Slot slot, Index ambient) {
  auto it = m.find(slot);
  return it == m.end() ? SubQ::zero(ambient) : it->second;
}

std::set<Slot> keys(const std::map<Slot, SubQ>& a, const std::map<Slot, SubQ>& b) {
  std::set<Slot> out;
  for (const auto& [k, v] : a) out.insert(k);
  for (const auto& [k, v] : b) out.insert(k);
  return out;
}

class Checker {
 public:
  explicit Checker(SeedOutcome& out) : out_(out) {}

  // fn returns an empty string on success, else a failure description.
  void run(const std::string& name, ExitCode failCode, const std::function<std::string()>& fn) {
    try {
      const std::string failure = fn();
      if (failure.empty()) {
        out_.checks.push_back({name, Verdict::pass, {}, {}});
      } else {
        fail(name, failCode, failure);
      }
    } catch (const Error& e) {
      fail(name, e.code(), e.what());
    } catch (const std::exception& e) {
      fail(name, ExitCode::engineDefect, std::string("unexpected exception: ") + e.what());
    }
  }

  void skip(const std::string& name, const std::string& why) {
    out_.checks.push_back({name, Verdict::skipped, why, {}});
  }

 private:
  void fail(const std::string& name, ExitCode code, const std::string& detail) {
    out_.checks.push_back({name, Verdict::fail, detail, {}});
    Report r;
    r.exit = out_.exit;
    r.raise(code);
    out_.exit = r.exit;
  }

  SeedOutcome& out_;
};

}  // namespace

SeedOutcome runSeedChecks(std::uint64_t seed, const Profile& profile) {
  SeedOutcome out;
  out.seed = seed;
  Checker check(out);
  std::optional<RandomInstance> ri;
  check.run("generate", ExitCode::engineDefect, [&] {
    ri = randomInstance(seed, profile);
    return std::string();
  });
  if (!ri) return out;
  const Instance& inst = ri->twist.instance;
  const Instance& base = ri->model.instance;
  const auto& u = ri->twist.u;
  out.totalDim = inst.space.totalDim();

  check.run("round trip", ExitCode::verificationFailure, [&] {
    return parseInstance(serializeInstance(inst)) == inst ? "" : "parse(serialize(instance)) differs";
  });

  std::optional<SplittingResult> twisted, untwisted;
  check.run("dual path", ExitCode::verificationFailure, [&] {
    untwisted = computeSplitting(base);
    twisted = computeSplitting(inst);
    return std::string();
  });
  if (!twisted || !untwisted) return out;

  check.run("ground truth", ExitCode::verificationFailure, [&]() -> std::string {
    for (const Slot& s : keys(untwisted->E, ri->model.bottoms))
      if (lookup(untwisted->E, s, base.space.dim(s.second)) !=
          lookup(ri->model.bottoms, s, base.space.dim(s.second)))
        return "E at (i,d)=" + slotName(s.first, s.second) + " differs from the string bottoms";
    for (const Slot& s : keys(untwisted->G, ri->model.layers))
      if (lookup(untwisted->G, s, base.space.dim(s.second)) !=
          lookup(ri->model.layers, s, base.space.dim(s.second)))
        return "G at (k,d)=" + slotName(s.first, s.second) + " differs from the model layer";
    return {};
  });

  check.run("equivariance", ExitCode::verificationFailure, [&]() -> std::string {
    for (const Slot& s : keys(twisted->E, untwisted->E)) {
      const Index n = inst.space.dim(s.second);
      if (lookup(twisted->E, s, n) != image(u.at(s.second), lookup(untwisted->E, s, n)))
        return "E at (i,d)=" + slotName(s.first, s.second) + " does not transform by u";
    }
    for (const Slot& s : keys(twisted->G, untwisted->G)) {
      const Index n = inst.space.dim(s.second);
      if (lookup(twisted->G, s, n) != image(u.at(s.second), lookup(untwisted->G, s, n)))
        return "G at (k,d)=" + slotName(s.first, s.second) + " does not transform by u";
    }
    return {};
  });

  check.run("eta commutation", ExitCode::verificationFailure, [&]() -> std::string {
    const EtaCommutationReport r = etaCommutationCheck(inst, *twisted);
    return r.pass ? "" : r.failures.front();
  });

  if (inst.pairing) {
    const IntersectionPairing& q = *inst.pairing;
    check.run("three path", ExitCode::verificationFailure, [&]() -> std::string {
      for (const auto& [slot, e] : twisted->E)
        if (orthogonalCharacterization(inst, q, slot.first, slot.second) != e)
          return "orthogonal characterization differs at (i,d)=" + slotName(slot.first, slot.second);
      return {};
    });
    check.run("induced pairing", ExitCode::verificationFailure, [&]() -> std::string {
      for (int k = -twisted->amplitude; k <= twisted->amplitude; ++k)
        for (const auto& [d, m] : inducedPairingOnSummand(inst, q, *twisted, k))
          if (m.rows() != m.cols() || rank(m) != m.rows())
            return "degenerate on G_" + std::to_string(k) + " V^" + std::to_string(d);
      return {};
    });
    check.run("projectors", ExitCode::verificationFailure, [&]() -> std::string {
      for (const auto& [slot, g] : twisted->G) {
        const ProjectorResult p = projector(inst, q, *twisted, slot.first, slot.second, g);
        if (!p.idempotent || p.rank != g.dim())
          return "projector onto G at (k,d)=" + slotName(slot.first, slot.second) + " is not idempotent of full rank";
        if (p.typeOk && !*p.typeOk)
          return "projector onto G at (k,d)=" + slotName(slot.first, slot.second) + ": " + p.typeFailures.front();
      }
      return {};
    });
  } else {
    check.skip("three path", "no pairing");
    check.skip("induced pairing", "no pairing");
    check.skip("projectors", "no pairing");
  }

  if (inst.hodge && inst.pairing) {
    check.run("duality types", ExitCode::verificationFailure, [&]() -> std::string {
      const DualityHSReport r = dualityHSCheck(inst, *inst.pairing, *inst.hodge);
      return r.pass ? "" : r.failures.front();
    });
  } else {
    check.skip("duality types", "needs Hodge data and a pairing");
  }

  if (inst.hodge) {
    check.run("hodge splitting", ExitCode::engineDefect, [&] {
      verifyHodgeSplitting(inst, *twisted);
      return std::string();
    });
  } else {
    check.skip("hodge splitting", "no Hodge data");
  }

  check.run("splitting lemma", ExitCode::engineDefect, [&] {
    const SplittingLemmaInstance s = randomSplittingLemmaInstance(seed);
    bhoCheck(s.g, s.p, s.a, s.b);
    return std::string();
  });
  return out;
}

SuiteSummary runSuite(std::uint64_t start, std::uint64_t count, const Profile& profile,
                      unsigned jobs) {
  validateProfile(profile);
  std::vector<std::optional<SeedOutcome>> results(count);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> firstDefect{count};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t k = next.fetch_add(1);
      if (k >= count || k > firstDefect.load()) return;
      SeedOutcome o = runSeedChecks(start + k, profile);
      if (o.exit == ExitCode::engineDefect) {
        std::uint64_t cur = firstDefect.load();
        while (k < cur && !firstDefect.compare_exchange_weak(cur, k)) {
        }
      }
      results[k] = std::move(o);
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SuiteSummary summary;
  Report exit;
  for (std::uint64_t k = 0; k < count && k <= firstDefect.load(); ++k) {
    if (!results[k]) continue;
    SeedOutcome& o = *results[k];
    for (const auto& c : o.checks) {
      auto& slot = summary.counts[c.name];
      ++slot[c.verdict == Verdict::pass ? 0 : c.verdict == Verdict::fail ? 1 : 2];
    }
    exit.raise(o.exit);
    if (o.exit == ExitCode::engineDefect && !summary.defectSeed) summary.defectSeed = o.seed;
    summary.outcomes.push_back(std::move(o));
  }
  summary.exit = exit.exit;
  return summary;
}

}  // namespace lefsplit
