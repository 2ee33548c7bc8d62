#pragma once

// JSON instance files, string specs and profiles. Scalars are strings in
// canonical form; objects have sorted keys, so serialization is canonical.

#include "lefsplit/corpus.hpp"

#include <json.hpp>

#include <cstdint>
#include <string_view>

namespace lefsplit {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

Json instanceToJson(const Instance& inst);
/// Throws ParseError anchored at the offending JSON pointer.
Instance instanceFromJson(const Json& j);

std::string serializeInstance(const Instance& inst);
Instance parseInstance(std::string_view text);
/// serializeInstance(parseInstance(text)).
std::string canonicalize(std::string_view text);

/// Parses JSON text; syntax errors become ParseError at the root pointer.
Json parseJson(std::string_view text);
std::string dumpJson(const Json& j);

Json matrixToJson(const MatQ& m);
MatQ matrixFromJson(const Json& j, const std::string& pointer, Index rows, Index cols);
Json gaussianRowsToJson(const MatG& m);

Json specToJson(const StringSpec& spec);
StringSpec specFromJson(const Json& j, const std::string& pointer = "");

/// Missing fields keep the defaults of `base`.
Profile profileFromJson(const Json& j, const Profile& base = {});
Json profileToJson(const Profile& p);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, std::string_view text);

std::uint64_t fnv1a64(std::string_view text);
std::string hashHex(std::uint64_t h);

/// Linear combination of labels, "D₁ + 1/2 D". The term at `lead`, when
/// given and nonzero, comes first; the rest follow in coordinate order.
std::string formatVector(const VecQ& v, const std::vector<std::string>& labels,
                         std::optional<Index> lead = std::nullopt);

}  // namespace lefsplit
