#pragma once

// Verification reports: per-check verdicts with witnesses, structured data
// sections, and a provenance header. Both renderings are deterministic.

#include "lefsplit/io.hpp"

namespace lefsplit {

enum class Verdict { pass, fail, skipped };

std::string verdictName(Verdict v);

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string detail;
  std::vector<std::string> witness;
};

struct Report {
  std::string command;
  Json provenance = Json::object();
  std::vector<CheckResult> checks;
  Json data = Json::object();
  std::vector<std::string> lines;  // human-readable body
  ExitCode exit = ExitCode::ok;

  CheckResult& add(std::string name, Verdict verdict, std::string detail = {},
                   std::vector<std::string> witness = {});
  /// Records a failed check and raises the exit code to at least `code`.
  CheckResult& fail(std::string name, ExitCode code, std::string detail = {},
                    std::vector<std::string> witness = {});
  void raise(ExitCode code);

  Json toJson() const;
  std::string toText() const;
};

/// {tool, version, instanceHash?, seed?}
Json makeProvenance(std::optional<std::string_view> canonicalInstance = std::nullopt,
                    std::optional<std::uint64_t> seed = std::nullopt);

const char* engineVersion();

}  // namespace lefsplit
