#include "lefsplit/cli.hpp"

#include "lefsplit/suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>

namespace lefsplit {

namespace {

struct Loaded {
  Instance inst;
  std::string canonical;
};

Loaded load(const std::string& path) {
  Instance inst = parseInstance(readFile(path));
  std::string canonical = serializeInstance(inst);
  return {std::move(inst), std::move(canonical)};
}

std::vector<std::string> labelsOf(const GradedSpace& v, int d) {
  std::vector<std::string> out;
  for (Index k = 0; k < v.dim(d); ++k) out.push_back(v.label(d, k));
  return out;
}

std::string fmt(const Instance& inst, int d, const VecQ& v, std::optional<Index> lead = std::nullopt) {
  return formatVector(v, labelsOf(inst.space, d), lead);
}

std::string tag(const std::string& name, int a, int d) {
  return name + "^(" + std::to_string(a) + "," + std::to_string(d) + ")";
}

std::optional<Index> firstNonzero(const VecQ& v) {
  for (Index k = 0; k < v.size(); ++k)
    if (v(k) != 0) return k;
  return std::nullopt;
}

// Coordinate of V^d naming the graded class of the k-th canonical primitive.
std::optional<Index> leadIndex(const GradedPieces& gp, const PrimitiveTable& pt, int i, int d, Index k) {
  auto prim = pt.find({i, d});
  const GradedPiece* piece = gp.piece(d, -i);
  if (prim == pt.end() || !piece) return std::nullopt;
  auto c = firstNonzero(prim->second.basis().row(k).transpose());
  if (!c) return std::nullopt;
  return firstNonzero(piece->quotient.lifts.row(*c).transpose());
}

Json rowsJson(const Instance& inst, int d, const MatQ& rows, std::vector<std::optional<Index>> leads = {}) {
  Json out = Json::array();
  for (Index r = 0; r < rows.rows(); ++r) {
    const auto lead = static_cast<std::size_t>(r) < leads.size() ? leads[static_cast<std::size_t>(r)]
                                                                 : std::nullopt;
    out.push_back(fmt(inst, d, rows.row(r).transpose(), lead));
  }
  return out;
}

int emit(const Report& r, bool json, std::ostream& out) {
  out << (json ? dumpJson(r.toJson()) : r.toText());
  return static_cast<int>(r.exit);
}

template <class S>
std::string coordinates(const Vec<S>& v) {
  std::string s = "[";
  for (Index k = 0; k < v.size(); ++k) s += (k ? ", " : "") + toString(v(k));
  return s + "]";
}

struct Outcome {
  std::string failure;  // empty on success
  std::string detail;
  std::vector<std::string> witness;
};

// Runs one check; errors raised inside become failures with their exit code.
bool runCheck(Report& r, const std::string& name, ExitCode failCode, const std::function<Outcome()>& fn) {
  try {
    Outcome o = fn();
    if (o.failure.empty()) {
      r.add(name, Verdict::pass, std::move(o.detail), std::move(o.witness));
      return true;
    }
    r.fail(name, failCode, std::move(o.failure), std::move(o.witness));
  } catch (const ContainmentViolation& e) {
    r.fail(name, e.code(), e.what(), {coordinates(e.witness)});
  } catch (const Error& e) {
    r.fail(name, e.code(), e.what());
  }
  return false;
}

Profile resolveProfile(const std::string& arg) {
  std::string path = arg;
  if (path.empty())
    if (const char* env = std::getenv(kProfileEnv)) path = env;
  if (path.empty()) return builtinProfile("default");
  if (std::filesystem::exists(path)) return profileFromJson(parseJson(readFile(path)));
  try {
    return builtinProfile(path);
  } catch (const InputError&) {
    throw InputError("no profile file or built-in profile named '" + path + "'");
  }
}

void writeOutput(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    writeFile(path, text);
  }
}

// ---- commands ---------------------------------------------------------------

int cmdValidate(const std::string& file, bool json, std::ostream& out) {
  const Loaded l = load(file);
  const Instance& inst = l.inst;
  Report r;
  r.command = "validate";
  r.provenance = makeProvenance(l.canonical);
  const FiltrationReport fr = validateFiltration(inst.space, inst.filtration);
  r.add("filtration", Verdict::pass, "amplitude " + std::to_string(fr.amplitude));
  r.data["amplitude"] = fr.amplitude;
  const CompatibilityReport cr = checkStrictCompatibility(inst.space, inst.filtration, inst.eta);
  if (!cr.ok) {
    r.fail("eta compatibility", ExitCode::verificationFailure,
           "eta W_(<=" + std::to_string(cr.i) + ") V^" + std::to_string(cr.d) + " is not inside W_(<=" +
               std::to_string(cr.i + 2) + ") V^" + std::to_string(cr.d + 2),
           {fmt(inst, cr.d, cr.witness)});
    r.data["compatible"] = false;
    return emit(r, json, out);
  }
  r.add("eta compatibility", Verdict::pass);
  r.data["compatible"] = true;
  const GradedPieces gp(inst.space, inst.filtration, inst.eta);
  Json graded = Json::array();
  for (const auto& [d, i] : gp.slots()) {
    graded.push_back({{"d", d}, {"i", i}, {"dim", gp.dim(d, i)}});
    r.lines.push_back("Gr_" + std::to_string(i) + " V^" + std::to_string(d) + "  dim " +
                      std::to_string(gp.dim(d, i)));
  }
  r.data["graded"] = std::move(graded);
  return emit(r, json, out);
}

int cmdCheckHl(const std::string& file, bool json, std::ostream& out) {
  const Loaded l = load(file);
  const Instance& inst = l.inst;
  Report r;
  r.command = "check-hl";
  r.provenance = makeProvenance(l.canonical);
  const GradedPieces gp(inst.space, inst.filtration, inst.eta);
  const HardLefschetzReport hl = checkHardLefschetz(gp);
  r.data["checked"] = hl.checked;
  if (!hl.pass) {
    std::vector<std::string> witness;
    if (hl.witness.size() > 0) witness.push_back(fmt(inst, hl.d, gp.lift(hl.d, -hl.i, hl.witness)));
    r.fail("hard lefschetz", ExitCode::verificationFailure,
           "e^" + std::to_string(hl.i) + " : Gr_" + std::to_string(-hl.i) + " V^" + std::to_string(hl.d) +
               " -> Gr_" + std::to_string(hl.i) + " V^" + std::to_string(hl.d + 2 * hl.i) +
               " is not an isomorphism (dims " + std::to_string(hl.sourceDim) + " -> " +
               std::to_string(hl.targetDim) + ")",
           std::move(witness));
    r.data["pass"] = false;
    return emit(r, json, out);
  }
  r.add("hard lefschetz", Verdict::pass, std::to_string(hl.checked) + " maps");
  r.data["pass"] = true;
  Json prims = Json::array();
  for (const auto& [slot, p] : primitives(gp)) {
    prims.push_back({{"i", slot.first}, {"d", slot.second}, {"dim", p.dim()}});
    r.lines.push_back(tag("P", -slot.first, slot.second) + "  dim " + std::to_string(p.dim()));
  }
  r.data["primitives"] = std::move(prims);
  return emit(r, json, out);
}

int cmdSplit(const std::string& file, bool emitBasis, bool json, std::ostream& out) {
  const Loaded l = load(file);
  const Instance& inst = l.inst;
  Report r;
  r.command = "split";
  r.provenance = makeProvenance(l.canonical);
  std::optional<SplittingResult> result;
  runCheck(r, "dual path", ExitCode::verificationFailure, [&] {
    result = computeSplitting(inst);
    return Outcome{};
  });
  if (!result) return emit(r, json, out);
  for (const auto& c : result->checks) r.add(c, Verdict::pass);
  const GradedPieces gp(inst.space, inst.filtration, inst.eta);
  const PrimitiveTable pt = primitives(gp);

  r.data["amplitude"] = result->amplitude;
  r.lines.push_back("amplitude " + std::to_string(result->amplitude));
  Json es = Json::array();
  for (const auto& [slot, e] : result->E) {
    const auto [i, d] = slot;
    const MatQ& lifts = result->lifts.at(slot);
    std::vector<std::optional<Index>> leads;
    for (Index k = 0; k < lifts.rows(); ++k) leads.push_back(leadIndex(gp, pt, i, d, k));
    Json entry{{"i", i}, {"d", d}, {"dim", e.dim()}, {"lifts", rowsJson(inst, d, lifts, leads)},
               {"liftRows", matrixToJson(lifts)}};
    Json schedule = Json::array();
    std::string log;
    for (const auto& s : result->schedule.at(slot)) {
      schedule.push_back({{"step", s.step}, {"power", s.power}, {"target", s.target}, {"dim", s.dim}});
      log += (log.empty() ? "" : "; ") + std::string("t=") + std::to_string(s.step) + " eta^" +
             std::to_string(s.power) + " Gr_" + std::to_string(s.target) + " dim " + std::to_string(s.dim);
    }
    entry["schedule"] = std::move(schedule);
    if (emitBasis) entry["basis"] = matrixToJson(e.basis());
    r.lines.push_back(tag("E", -i, d) + "  dim " + std::to_string(e.dim()));
    for (const auto& s : entry["lifts"]) r.lines.push_back("  " + s.get<std::string>());
    r.lines.push_back("  schedule: " + log);
    if (emitBasis)
      for (Index k = 0; k < e.dim(); ++k)
        r.lines.push_back("  basis: " + fmt(inst, d, e.basis().row(k).transpose()));
    es.push_back(std::move(entry));
  }
  r.data["E"] = std::move(es);
  Json gs = Json::array();
  for (const auto& [slot, g] : result->G) {
    const auto [k, d] = slot;
    Json entry{{"k", k}, {"d", d}, {"dim", g.dim()}};
    r.lines.push_back("G_" + std::to_string(k) + " V^" + std::to_string(d) + "  dim " + std::to_string(g.dim()));
    if (emitBasis) {
      entry["basis"] = matrixToJson(g.basis());
      entry["adapted"] = rowsJson(inst, d, result->adaptedBasis.at(slot));
      for (const auto& s : entry["adapted"]) r.lines.push_back("  " + s.get<std::string>());
    }
    gs.push_back(std::move(entry));
  }
  r.data["G"] = std::move(gs);
  return emit(r, json, out);
}

int cmdVerify(const std::string& file, bool hodge, bool pairing, bool json, std::ostream& out) {
  const Loaded l = load(file);
  const Instance& inst = l.inst;
  if (hodge && !inst.hodge) throw InputError("--hodge: instance has no Hodge data");
  if (pairing && !inst.pairing) throw InputError("--pairing: instance has no pairing");
  Report r;
  r.command = "verify";
  r.provenance = makeProvenance(l.canonical);

  runCheck(r, "filtration", ExitCode::inputError, [&] {
    return Outcome{"", "amplitude " + std::to_string(validateFiltration(inst.space, inst.filtration).amplitude), {}};
  });
  const bool compatible = runCheck(r, "eta compatibility", ExitCode::verificationFailure, [&] {
    const CompatibilityReport cr = checkStrictCompatibility(inst.space, inst.filtration, inst.eta);
    if (cr.ok) return Outcome{};
    return Outcome{"eta breaks the filtration at (d,i)=(" + std::to_string(cr.d) + "," + std::to_string(cr.i) + ")",
                   "", {fmt(inst, cr.d, cr.witness)}};
  });
  if (!compatible) return emit(r, json, out);
  const GradedPieces gp(inst.space, inst.filtration, inst.eta);
  const bool hl = runCheck(r, "hard lefschetz", ExitCode::verificationFailure, [&] {
    const HardLefschetzReport rep = checkHardLefschetz(gp);
    if (rep.pass) return Outcome{"", std::to_string(rep.checked) + " maps", {}};
    return Outcome{"e^" + std::to_string(rep.i) + " fails at (i,d)=(" + std::to_string(rep.i) + "," +
                       std::to_string(rep.d) + ")",
                   "", {}};
  });
  if (!hl) return emit(r, json, out);
  const PrimitiveTable pt = primitives(gp);

  std::optional<SplittingResult> result;
  runCheck(r, "dual path", ExitCode::verificationFailure, [&] {
    result = computeSplitting(inst);
    return Outcome{};
  });
  if (!result) return emit(r, json, out);
  runCheck(r, "eta commutation", ExitCode::verificationFailure, [&] {
    const EtaCommutationReport rep = etaCommutationCheck(inst, *result);
    return Outcome{rep.pass ? "" : rep.failures.front(), std::to_string(rep.checked) + " identities", {}};
  });

  Json lifts = Json::array();
  for (const auto& [slot, rows] : result->lifts) {
    const auto [i, d] = slot;
    for (Index k = 0; k < rows.rows(); ++k) {
      const auto lead = leadIndex(gp, pt, i, d, k);
      const std::string cls = lead ? inst.space.label(d, *lead) : std::to_string(k);
      const std::string line = "g([" + cls + "]) = " + fmt(inst, d, rows.row(k).transpose(), lead);
      r.lines.push_back(tag("E", -i, d) + "  " + line);
      lifts.push_back(line);
    }
  }
  r.data["lifts"] = std::move(lifts);

  if (hodge) {
    runCheck(r, "hodge splitting", ExitCode::engineDefect, [&] {
      const HodgeSplittingReport rep = verifyHodgeSplitting(inst, *result);
      return Outcome{"", std::to_string(rep.checked) + " subspaces", {}};
    });
    for (const auto& g : inst.groups)
      runCheck(r, "group " + g.name, ExitCode::engineDefect, [&] {
        const GroupInvariants gi = groupInvariants(g.generators, *inst.hodge, inst.space);
        std::string detail = "order " + std::to_string(gi.order) + ", invariant dims";
        for (const auto& [d, s] : gi.invariants) detail += " " + std::to_string(d) + ":" + std::to_string(s.dim());
        if (gi.generatorsAreHS) detail += gi.shs ? ", sub-Hodge structure" : "";
        return Outcome{"", detail, {}};
      });
  }

  if (pairing) {
    const IntersectionPairing& q = *inst.pairing;
    const bool flagsOk = runCheck(r, "pairing flags", ExitCode::verificationFailure, [&] {
      const PairingFlags f = pairingFlags(inst, q);
      return Outcome{f.firstFailure, "nondegenerate, eta self-adjoint, filtration self-dual", {}};
    });
    if (flagsOk) {
      runCheck(r, "three path", ExitCode::verificationFailure, [&] {
        for (const auto& [slot, e] : result->E)
          if (orthogonalCharacterization(inst, q, slot.first, slot.second) != e)
            return Outcome{"orthogonal characterization differs at " + tag("E", -slot.first, slot.second), "", {}};
        return Outcome{"", std::to_string(result->E.size()) + " slots", {}};
      });
    }
    runCheck(r, "induced pairing", ExitCode::verificationFailure, [&] {
      Json induced = Json::array();
      Outcome o;
      for (int k = -result->amplitude; k <= result->amplitude; ++k)
        for (const auto& [d, m] : inducedPairingOnSummand(inst, q, *result, k)) {
          induced.push_back({{"k", k}, {"d", d}, {"matrix", matrixToJson(m)}});
          if (o.failure.empty() && (m.rows() != m.cols() || rank(m) != m.rows()))
            o.failure = "degenerate on G_" + std::to_string(k) + " V^" + std::to_string(d);
        }
      r.data["inducedPairing"] = std::move(induced);
      return o;
    });
    if (inst.hodge)
      runCheck(r, "duality types", ExitCode::verificationFailure, [&] {
        const DualityHSReport rep = dualityHSCheck(inst, q, *inst.hodge);
        Outcome o{rep.pass ? "" : rep.failures.front(), std::to_string(rep.checked) + " cross-type pairs vanish", {}};
        if (!rep.pass) o.witness = {coordinates(rep.witnessSource), coordinates(rep.witnessDual)};
        return o;
      });
    runCheck(r, "projectors", ExitCode::verificationFailure, [&] {
      int count = 0;
      for (const auto& [slot, g] : result->G) {
        const ProjectorResult p = projector(inst, q, *result, slot.first, slot.second, g);
        ++count;
        if (!p.idempotent) return Outcome{"not idempotent on G_" + std::to_string(slot.first) + " V^" +
                                              std::to_string(slot.second), "", {}};
        if (p.typeOk && !*p.typeOk)
          return Outcome{p.typeFailures.front() + " on G_" + std::to_string(slot.first) + " V^" +
                             std::to_string(slot.second), "", {}};
      }
      return Outcome{"", std::to_string(count) + " summands, type (" + std::to_string(q.center) + "," +
                             std::to_string(q.center) + ")", {}};
    });
  }
  return emit(r, json, out);
}

int cmdWeightFiltration(const std::string& file, const std::string& opName, int center, bool json,
                        std::ostream& out) {
  const Loaded l = load(file);
  const Instance& inst = l.inst;
  MatQ n;
  std::vector<std::string> labels;
  auto named = std::find_if(inst.operators.begin(), inst.operators.end(),
                            [&](const NamedOperator& op) { return op.name == opName; });
  if (named != inst.operators.end()) {
    n = named->matrix;
    labels = labelsOf(inst.space, named->degree);
  } else if (opName == "eta") {
    n = inst.eta.total(inst.space);
    for (int d : inst.space.degrees())
      for (const auto& s : labelsOf(inst.space, d)) labels.push_back(s);
  } else {
    throw InputError("no operator named '" + opName + "'");
  }
  Report r;
  r.command = "weight-filtration";
  r.provenance = makeProvenance(l.canonical);
  const auto jumps = weightFiltration(n, center);
  Json js = Json::array();
  for (const auto& [i, s] : jumps) {
    Json rows = Json::array();
    r.lines.push_back("W_" + std::to_string(i) + "  dim " + std::to_string(s.dim()));
    for (Index k = 0; k < s.dim(); ++k) {
      rows.push_back(formatVector(s.basis().row(k).transpose(), labels));
      r.lines.push_back("  " + rows.back().get<std::string>());
    }
    js.push_back({{"i", i}, {"dim", s.dim()}, {"basis", matrixToJson(s.basis())}, {"vectors", std::move(rows)}});
  }
  r.data["operator"] = opName;
  r.data["center"] = center;
  r.data["jumps"] = std::move(js);
  const WeightAxiomReport ax = checkWeightAxioms(n, jumps, center);
  if (ax.pass) {
    r.add("weight axioms", Verdict::pass);
  } else {
    r.fail("weight axioms", ExitCode::engineDefect, ax.failure);
  }
  return emit(r, json, out);
}

int cmdSuite(std::uint64_t seeds, std::uint64_t start, const std::string& profileArg, unsigned jobs, bool json,
             std::ostream& out) {
  const Profile profile = resolveProfile(profileArg);
  const SuiteSummary s = runSuite(start, seeds, profile, jobs);
  Report r;
  r.command = "suite";
  r.provenance = makeProvenance(std::nullopt, start);
  r.exit = s.exit;
  Index maxDim = 0;
  for (const auto& o : s.outcomes) maxDim = std::max(maxDim, o.totalDim);
  r.data["profile"] = profileToJson(profile);
  r.data["seeds"] = seeds;
  r.data["start"] = start;
  r.data["completed"] = s.outcomes.size();
  r.data["maxTotalDim"] = maxDim;
  if (s.defectSeed) r.data["defectSeed"] = *s.defectSeed;
  Json counts = Json::object();
  for (const auto& [name, c] : s.counts) {
    counts[name] = {{"pass", c[0]}, {"fail", c[1]}, {"skipped", c[2]}};
    r.checks.push_back({name, c[1] > 0 ? Verdict::fail : c[0] > 0 ? Verdict::pass : Verdict::skipped,
                        std::to_string(c[0]) + " pass, " + std::to_string(c[1]) + " fail, " +
                            std::to_string(c[2]) + " skipped",
                        {}});
  }
  r.data["counts"] = std::move(counts);
  Json failures = Json::array();
  for (const auto& o : s.outcomes)
    for (const auto& c : o.checks)
      if (c.verdict == Verdict::fail) {
        failures.push_back({{"seed", o.seed}, {"check", c.name}, {"detail", c.detail}});
        if (failures.size() <= 20)
          r.lines.push_back("seed " + std::to_string(o.seed) + ": " + c.name + ": " + c.detail);
      }
  r.data["failures"] = std::move(failures);
  r.lines.insert(r.lines.begin(), "profile " + profile.name + ", seeds " + std::to_string(start) + ".." +
                                      std::to_string(start + seeds - (seeds ? 1 : 0)) + ", completed " +
                                      std::to_string(s.outcomes.size()) + ", max total dim " +
                                      std::to_string(maxDim));
  if (s.defectSeed) r.lines.push_back("stopped after engine defect at seed " + std::to_string(*s.defectSeed));
  return emit(r, json, out);
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical splittings of perverse-type filtrations over exact rationals", "lefsplit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(engineVersion()));

  std::string file, opName = "eta", mText, output, profileArg;
  bool json = false, emitBasis = false, hodge = false, pairing = false;
  int center = 0;
  std::uint64_t seed = 0, seeds = 100, start = 0;
  unsigned jobs = 1;

  auto* validate = app.add_subcommand("validate", "Check the filtration and eta compatibility");
  auto* checkHl = app.add_subcommand("check-hl", "Hard Lefschetz on graded pieces");
  auto* split = app.add_subcommand("split", "Compute the canonical splitting");
  auto* verify = app.add_subcommand("verify", "Run the invariant checks");
  auto* weight = app.add_subcommand("weight-filtration", "Weight filtration of a nilpotent operator");
  for (auto* sc : {validate, checkHl, split, verify, weight}) {
    sc->add_option("file", file, "instance file")->required();
    sc->add_flag("--json", json, "machine-readable report");
  }
  split->add_flag("--emit-basis", emitBasis, "include reduced bases of E and G");
  verify->add_flag("--hodge", hodge, "Hodge checks");
  verify->add_flag("--pairing", pairing, "pairing checks");
  weight->add_option("--operator", opName, "operator name, or eta");
  weight->add_option("--center", center, "center of the filtration");

  auto* corpus = app.add_subcommand("corpus", "Write built-in instances");
  corpus->require_subcommand(1);
  auto* quadric = corpus->add_subcommand("quadric-cone", "Blown-up quadric cone with eta = m D1 + D2");
  quadric->add_option("--m", mText, "nonnegative rational")->required();
  quadric->add_option("-o,--output", output, "output file");
  auto* random = corpus->add_subcommand("random", "Twisted random split model");
  random->add_option("--seed", seed)->required();
  random->add_option("--profile", profileArg, "profile file or built-in name");
  random->add_option("-o,--output", output, "output file");

  auto* suite = app.add_subcommand("suite", "Seeded property suite");
  suite->add_option("--seeds", seeds, "number of seeds");
  suite->add_option("--start", start, "first seed");
  suite->add_option("--profile", profileArg, "profile file or built-in name");
  suite->add_option("--jobs", jobs, "worker threads");
  suite->add_flag("--json", json, "machine-readable report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::inputError);
  }

  try {
    if (*validate) return cmdValidate(file, json, out);
    if (*checkHl) return cmdCheckHl(file, json, out);
    if (*split) return cmdSplit(file, emitBasis, json, out);
    if (*verify) return cmdVerify(file, hodge, pairing, json, out);
    if (*weight) return cmdWeightFiltration(file, opName, center, json, out);
    if (*quadric) {
      Rational m;
      try {
        m = parseRational(mText);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--m: ") + e.what());
      }
      writeOutput(serializeInstance(quadricCone(m)), output, out);
      return 0;
    }
    if (*random) {
      writeOutput(serializeInstance(randomInstance(seed, resolveProfile(profileArg)).twist.instance), output, out);
      return 0;
    }
    if (*suite) return cmdSuite(seeds, start, profileArg, jobs, json, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::engineDefect);
  }
  return static_cast<int>(ExitCode::inputError);
}

}  // namespace lefsplit
