#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "support.hpp"
#include "lefsplit/cli.hpp"
#include "lefsplit/io.hpp"

using namespace lefsplit;
using namespace lefsplit::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = runCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tempPath(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "lefsplit-tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string writeInstance(const std::string& name, const Instance& inst) {
  const std::string path = tempPath(name);
  writeFile(path, serializeInstance(inst));
  return path;
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("split reports the primitive lifts", "[cli]") {
  const std::string m1 = writeInstance("quadric_m1.json", quadricCone(1));
  const Run r = run({"split", m1});
  CHECK(r.code == 0);
  CHECK(has(r.out, "D₁ + 1/2 D"));
  CHECK(has(r.out, "D₂ + 1/2 D"));
  CHECK(has(r.out, "schedule:"));

  const Run j = run({"split", m1, "--json", "--emit-basis"});
  CHECK(j.code == 0);
  const Json report = parseJson(j.out);
  CHECK(report["command"] == "split");
  CHECK(report["provenance"]["instanceHash"].is_string());
  bool found = false;
  for (const auto& e : report["data"]["E"])
    if (e["i"] == 0 && e["d"] == 2) {
      found = true;
      CHECK(e["lifts"][0] == "D₁ + 1/2 D");
      CHECK(e["schedule"].size() == 2);
    }
  CHECK(found);
}

TEST_CASE("verify on the small resolution choice of eta", "[cli]") {
  const std::string m0 = writeInstance("quadric_m0.json", quadricCone(0));
  const Run r = run({"verify", m0, "--pairing"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "g([D₂]) = D₂"));
  CHECK(has(r.out, "g([D₁]) = D₁ + D"));
  CHECK_FALSE(has(r.out, "FAIL"));
  const Run h = run({"verify", m0, "--hodge", "--pairing"});
  CHECK(h.code == 0);
  CHECK(has(h.out, "projectors"));
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run({}).code == 2);
  CHECK(run({"split", tempPath("missing.json")}).code == 2);

  const std::string garbage = tempPath("garbage.json");
  writeFile(garbage, "{\"center\": 3, \"degrees\": 5}");
  const Run g = run({"validate", garbage});
  CHECK(g.code == 2);
  CHECK(has(g.err + g.out, "/degrees"));

  Instance broken = quadricCone(1);
  broken.eta.blocks[2].col(0).setConstant(Rational(0));
  const Run hl = run({"check-hl", writeInstance("hl_broken.json", broken)});
  CHECK(hl.code == 1);
  CHECK(has(hl.out, "FAIL"));

  Instance skew = quadricCone(1);
  skew.pairing->blocks[2] = identity<Rational>(3);
  skew.pairing->blocks[4] = identity<Rational>(3);
  CHECK(run({"verify", writeInstance("skew.json", skew), "--pairing"}).code == 1);
}

TEST_CASE("reports are byte-identical across runs", "[cli]") {
  const std::string path = writeInstance("quadric_m3.json", quadricCone(3));
  for (const std::string cmd : {"validate", "check-hl", "split", "verify"}) {
    const Run a = run({cmd, path, "--json"}), b = run({cmd, path, "--json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  const Run s1 = run({"suite", "--seeds", "6", "--json"});
  const Run s2 = run({"suite", "--seeds", "6", "--json", "--jobs", "3"});
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("corpus commands", "[cli]") {
  const std::string out = tempPath("corpus_q.json");
  CHECK(run({"corpus", "quadric-cone", "--m", "1/2", "-o", out}).code == 0);
  CHECK(parseInstance(readFile(out)) == quadricCone(frac(1, 2)));
  CHECK(run({"corpus", "quadric-cone", "--m", "-1"}).code == 2);

  const Run a = run({"corpus", "random", "--seed", "4", "--profile", "typed"});
  CHECK(a.code == 0);
  CHECK(parseInstance(a.out) == randomInstance(4, builtinProfile("typed")).twist.instance);
  CHECK(run({"corpus", "random", "--seed", "4", "--profile", "nope"}).code == 2);
}

TEST_CASE("profile from the environment", "[cli]") {
  const std::string path = tempPath("profile.json");
  writeFile(path, dumpJson(Json{{"base", "plain"}, {"maxTotalDim", 10}}));
  ::setenv(kProfileEnv, path.c_str(), 1);
  const Run r = run({"corpus", "random", "--seed", "2"});
  ::unsetenv(kProfileEnv);
  CHECK(r.code == 0);
  Profile p = builtinProfile("plain");
  p.maxTotalDim = 10;
  CHECK(parseInstance(r.out) == randomInstance(2, p).twist.instance);
}

TEST_CASE("weight filtration command", "[cli]") {
  Instance inst = quadricCone(1);
  inst.operators.push_back({"jordan", 2, mat({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}})});
  const std::string path = writeInstance("with_operator.json", inst);
  const Run r = run({"weight-filtration", path, "--operator", "jordan", "--center", "0"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "weight axioms"));
  CHECK(run({"weight-filtration", path, "--operator", "missing"}).code == 2);
}
