#include "lefsplit/report.hpp"

#include <algorithm>
#include <cctype>

#ifndef LEFSPLIT_VERSION
#define LEFSPLIT_VERSION "0.0.0"
#endif

namespace lefsplit {

const char* engineVersion() { return LEFSPLIT_VERSION; }

std::string verdictName(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "fail";
}

CheckResult& Report::add(std::string name, Verdict verdict, std::string detail,
                         std::vector<std::string> witness) {
  checks.push_back({std::move(name), verdict, std::move(detail), std::move(witness)});
  return checks.back();
}

CheckResult& Report::fail(std::string name, ExitCode code, std::string detail,
                          std::vector<std::string> witness) {
  raise(code);
  return add(std::move(name), Verdict::fail, std::move(detail), std::move(witness));
}

void Report::raise(ExitCode code) {
  // Defects outrank verification failures, which outrank input errors.
  auto rank = [](ExitCode c) {
    switch (c) {
      case ExitCode::ok: return 0;
      case ExitCode::inputError: return 1;
      case ExitCode::verificationFailure: return 2;
      case ExitCode::engineDefect: return 3;
    }
    return 3;
  };
  if (rank(code) > rank(exit)) exit = code;
}

Json Report::toJson() const {
  Json checksJson = Json::array();
  for (const auto& c : checks) {
    Json e{{"name", c.name}, {"verdict", verdictName(c.verdict)}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (!c.witness.empty()) e["witness"] = c.witness;
    checksJson.push_back(std::move(e));
  }
  return {{"command", command},
          {"provenance", provenance},
          {"checks", std::move(checksJson)},
          {"data", data},
          {"exitCode", static_cast<int>(exit)}};
}

std::string Report::toText() const {
  std::string out = "lefsplit " + std::string(engineVersion()) + " " + command;
  if (provenance.contains("instanceHash"))
    out += " instance " + provenance["instanceHash"].get<std::string>();
  if (provenance.contains("seed")) out += " seed " + std::to_string(provenance["seed"].get<std::uint64_t>());
  out += "\n";
  for (const auto& line : lines) out += line + "\n";
  if (!checks.empty()) {
    std::size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    out += "checks:\n";
    for (const auto& c : checks) {
      std::string tag = verdictName(c.verdict);
      std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char ch) { return std::toupper(ch); });
      out += "  " + tag + std::string(8 - tag.size(), ' ') + c.name;
      if (!c.detail.empty()) out += std::string(width - c.name.size() + 2, ' ') + c.detail;
      out += "\n";
      for (const auto& w : c.witness) out += "          witness: " + w + "\n";
    }
  }
  out += "exit " + std::to_string(static_cast<int>(exit)) + "\n";
  return out;
}

Json makeProvenance(std::optional<std::string_view> canonicalInstance,
                    std::optional<std::uint64_t> seed) {
  Json p{{"tool", "lefsplit"}, {"version", engineVersion()}};
  if (canonicalInstance) p["instanceHash"] = hashHex(fnv1a64(*canonicalInstance));
  if (seed) p["seed"] = *seed;
  return p;
}

}  // namespace lefsplit
