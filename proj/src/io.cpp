#include "lefsplit/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace lefsplit {

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw ParseError(pointer, what);
}

std::string at(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string at(const std::string& pointer, std::size_t k) {
  return pointer + "/" + std::to_string(k);
}

void requireObject(const Json& j, const std::string& pointer) {
  if (!j.is_object()) fail(pointer, "expected an object");
}

void requireArray(const Json& j, const std::string& pointer) {
  if (!j.is_array()) fail(pointer, "expected an array");
}

void allowKeys(const Json& j, const std::string& pointer, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) fail(at(pointer, key), "unknown field");
  }
}

const Json& field(const Json& j, const std::string& pointer, const char* key) {
  requireObject(j, pointer);
  auto it = j.find(key);
  if (it == j.end()) fail(at(pointer, key), "missing field");
  return *it;
}

int intValue(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer()) fail(pointer, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -1000000 || v > 1000000) fail(pointer, "integer out of range");
  return static_cast<int>(v);
}

int intField(const Json& j, const std::string& pointer, const char* key) {
  return intValue(field(j, pointer, key), at(pointer, key));
}

std::string stringField(const Json& j, const std::string& pointer, const char* key) {
  const Json& v = field(j, pointer, key);
  if (!v.is_string()) fail(at(pointer, key), "expected a string");
  return v.get<std::string>();
}

Rational rationalValue(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) fail(pointer, "expected a rational scalar string");
  try {
    return parseRational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(pointer, e.what());
  }
}

GaussianRational gaussianValue(const Json& j, const std::string& pointer) {
  if (j.is_object()) {
    allowKeys(j, pointer, {"re", "im"});
    const Rational re = j.contains("re") ? rationalValue(j["re"], at(pointer, "re")) : Rational(0);
    const Rational im = j.contains("im") ? rationalValue(j["im"], at(pointer, "im")) : Rational(0);
    return GaussianRational(re, im);
  }
  return GaussianRational(rationalValue(j, pointer));
}

Json scalarJson(const Rational& x) { return toString(x); }
Json scalarJson(const GaussianRational& z) { return {{"re", toString(z.re)}, {"im", toString(z.im)}}; }

template <class S, class Parse>
Mat<S> rowsFromJson(const Json& j, const std::string& pointer, Index cols, Parse parse) {
  requireArray(j, pointer);
  Mat<S> m(static_cast<Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Json& row = j[r];
    const std::string rp = at(pointer, r);
    requireArray(row, rp);
    if (static_cast<Index>(row.size()) != cols)
      fail(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    for (std::size_t c = 0; c < row.size(); ++c)
      m(static_cast<Index>(r), static_cast<Index>(c)) = parse(row[c], at(rp, c));
  }
  return m;
}

MatQ rationalRows(const Json& j, const std::string& pointer, Index cols) {
  return rowsFromJson<Rational>(j, pointer, cols, rationalValue);
}

template <class S>
Json rowsToJson(const Mat<S>& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(scalarJson(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string hodgeModeName(HodgeMode m) {
  switch (m) {
    case HodgeMode::none: return "none";
    case HodgeMode::tate: return "tate";
    case HodgeMode::typed: return "typed";
  }
  return "none";
}

Json blocksToJson(const std::map<int, MatQ>& blocks) {
  Json out = Json::array();
  for (const auto& [d, m] : blocks) out.push_back({{"d", d}, {"matrix", matrixToJson(m)}});
  return out;
}

}  // namespace

Json matrixToJson(const MatQ& m) { return rowsToJson(m); }
Json gaussianRowsToJson(const MatG& m) { return rowsToJson(m); }

MatQ matrixFromJson(const Json& j, const std::string& pointer, Index rows, Index cols) {
  requireArray(j, pointer);
  if (static_cast<Index>(j.size()) != rows)
    fail(pointer, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  return rationalRows(j, pointer, cols);
}

Json instanceToJson(const Instance& inst) {
  Json j;
  j["format"] = kFormatVersion;
  j["center"] = inst.center;
  Json degrees = Json::array();
  for (const auto& [d, dim] : inst.space.dims) {
    Json e{{"d", d}, {"dim", dim}};
    if (auto it = inst.space.labels.find(d); it != inst.space.labels.end()) e["labels"] = it->second;
    degrees.push_back(std::move(e));
  }
  j["degrees"] = std::move(degrees);
  Json filtration = Json::array();
  for (const auto& [d, steps] : inst.filtration.allSteps())
    for (const auto& [i, s] : steps)
      filtration.push_back({{"d", d}, {"i", i}, {"basis", matrixToJson(s.basis())}});
  j["filtration"] = std::move(filtration);
  j["eta"] = blocksToJson(inst.eta.blocks);
  if (inst.hodge) {
    Json hodge = Json::array();
    for (const auto& [d, hs] : *inst.hodge)
      for (const auto& [pq, piece] : hs.pieces)
        hodge.push_back({{"d", d}, {"p", pq.first}, {"q", pq.second},
                         {"basis", gaussianRowsToJson(piece.basis())}});
    j["hodge"] = std::move(hodge);
  }
  if (inst.pairing)
    j["pairing"] = {{"n", inst.pairing->center}, {"blocks", blocksToJson(inst.pairing->blocks)}};
  if (!inst.groups.empty()) {
    Json groups = Json::array();
    for (const auto& g : inst.groups) {
      Json gens = Json::array();
      for (const auto& gen : g.generators) gens.push_back(blocksToJson(gen.blocks));
      groups.push_back({{"name", g.name}, {"generators", std::move(gens)}});
    }
    j["groups"] = std::move(groups);
  }
  if (!inst.operators.empty()) {
    Json ops = Json::array();
    for (const auto& op : inst.operators)
      ops.push_back({{"name", op.name}, {"d", op.degree}, {"matrix", matrixToJson(op.matrix)}});
    j["operators"] = std::move(ops);
  }
  return j;
}

Instance instanceFromJson(const Json& j) {
  requireObject(j, "");
  allowKeys(j, "", {"format", "center", "degrees", "filtration", "eta", "hodge", "pairing",
                    "groups", "operators"});
  if (j.contains("format") && intField(j, "", "format") != kFormatVersion)
    fail("/format", "unsupported format version");
  Instance inst;
  inst.center = intField(j, "", "center");

  const Json& degrees = field(j, "", "degrees");
  requireArray(degrees, "/degrees");
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    const Json& e = degrees[k];
    const std::string p = at("/degrees", k);
    allowKeys(e, p, {"d", "dim", "labels"});
    const int d = intField(e, p, "d");
    const int dim = intField(e, p, "dim");
    if (dim < 0) fail(at(p, "dim"), "dimension must be nonnegative");
    if (inst.space.dims.count(d)) fail(at(p, "d"), "duplicate degree " + std::to_string(d));
    inst.space.dims[d] = dim;
    if (e.contains("labels")) {
      const Json& labels = e["labels"];
      requireArray(labels, at(p, "labels"));
      if (static_cast<int>(labels.size()) != dim) fail(at(p, "labels"), "expected one label per basis vector");
      auto& out = inst.space.labels[d];
      for (std::size_t c = 0; c < labels.size(); ++c) {
        if (!labels[c].is_string()) fail(at(at(p, "labels"), c), "expected a string");
        out.push_back(labels[c].get<std::string>());
      }
    }
  }
  auto declared = [&](int d, const std::string& pointer) -> Index {
    if (!inst.space.dims.count(d)) fail(pointer, "undeclared degree " + std::to_string(d));
    return inst.space.dim(d);
  };

  const Json& filtration = field(j, "", "filtration");
  requireArray(filtration, "/filtration");
  std::set<Slot> seen;
  for (std::size_t k = 0; k < filtration.size(); ++k) {
    const Json& e = filtration[k];
    const std::string p = at("/filtration", k);
    allowKeys(e, p, {"d", "i", "basis"});
    const int d = intField(e, p, "d");
    const int i = intField(e, p, "i");
    const Index n = declared(d, at(p, "d"));
    if (!seen.insert({d, i}).second) fail(p, "duplicate filtration step");
    inst.filtration.set(d, i, SubQ::span(rationalRows(field(e, p, "basis"), at(p, "basis"), n), n));
  }

  auto readBlocks = [&](const Json& arr, const std::string& pointer, int shift,
                        std::map<int, MatQ>& out, bool dual = false, int center = 0) {
    requireArray(arr, pointer);
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const Json& e = arr[k];
      const std::string p = at(pointer, k);
      allowKeys(e, p, {"d", "matrix"});
      const int d = intField(e, p, "d");
      const Index cols = declared(d, at(p, "d"));
      const int target = dual ? 2 * center - d : d + shift;
      const Index rows = inst.space.dim(target);
      if (out.count(d)) fail(at(p, "d"), "duplicate block");
      MatQ m = matrixFromJson(field(e, p, "matrix"), at(p, "matrix"), dual ? cols : rows,
                              dual ? rows : cols);
      out[d] = std::move(m);
    }
  };
  readBlocks(field(j, "", "eta"), "/eta", 2, inst.eta.blocks);

  if (j.contains("hodge")) {
    const Json& hodge = j["hodge"];
    requireArray(hodge, "/hodge");
    HodgeBigrading h;
    for (std::size_t k = 0; k < hodge.size(); ++k) {
      const Json& e = hodge[k];
      const std::string p = at("/hodge", k);
      allowKeys(e, p, {"d", "p", "q", "basis"});
      const int d = intField(e, p, "d");
      const Index n = declared(d, at(p, "d"));
      const int hp = intField(e, p, "p");
      const int hq = intField(e, p, "q");
      auto [it, fresh] = h.try_emplace(d, HodgeStructure{hp + hq, n, {}});
      if (it->second.weight != hp + hq) fail(p, "pieces of one degree must share the weight p + q");
      if (it->second.pieces.count({hp, hq})) fail(p, "duplicate Hodge piece");
      it->second.pieces[{hp, hq}] = SubG::span(
          rowsFromJson<GaussianRational>(field(e, p, "basis"), at(p, "basis"), n, gaussianValue), n);
    }
    for (const auto& [d, dim] : inst.space.dims)
      if (dim > 0 && !h.count(d)) fail("/hodge", "missing Hodge data for degree " + std::to_string(d));
    for (const auto& [d, hs] : h) {
      try {
        validateHodgeStructure(hs);
      } catch (const InputError& e) {
        fail("/hodge", "degree " + std::to_string(d) + ": " + e.what());
      }
    }
    inst.hodge = std::move(h);
  }

  if (j.contains("pairing")) {
    const Json& e = j["pairing"];
    allowKeys(e, "/pairing", {"n", "blocks"});
    IntersectionPairing q{intField(e, "/pairing", "n"), {}};
    readBlocks(field(e, "/pairing", "blocks"), "/pairing/blocks", 0, q.blocks, true, q.center);
    inst.pairing = std::move(q);
  }

  if (j.contains("groups")) {
    const Json& groups = j["groups"];
    requireArray(groups, "/groups");
    for (std::size_t k = 0; k < groups.size(); ++k) {
      const std::string p = at("/groups", k);
      allowKeys(groups[k], p, {"name", "generators"});
      GroupAction g{stringField(groups[k], p, "name"), {}};
      const Json& gens = field(groups[k], p, "generators");
      requireArray(gens, at(p, "generators"));
      for (std::size_t c = 0; c < gens.size(); ++c) {
        GradedMap gen{0, {}};
        readBlocks(gens[c], at(at(p, "generators"), c), 0, gen.blocks);
        g.generators.push_back(std::move(gen));
      }
      inst.groups.push_back(std::move(g));
    }
  }

  if (j.contains("operators")) {
    const Json& ops = j["operators"];
    requireArray(ops, "/operators");
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const std::string p = at("/operators", k);
      allowKeys(ops[k], p, {"name", "d", "matrix"});
      NamedOperator op{stringField(ops[k], p, "name"), intField(ops[k], p, "d"), {}};
      const Index n = declared(op.degree, at(p, "d"));
      op.matrix = matrixFromJson(field(ops[k], p, "matrix"), at(p, "matrix"), n, n);
      inst.operators.push_back(std::move(op));
    }
  }

  try {
    validateFiltration(inst.space, inst.filtration);
  } catch (const InputError& e) {
    fail("/filtration", e.what());
  }
  return inst;
}

Json parseJson(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    fail("", std::string("invalid JSON: ") + e.what());
  }
}

std::string dumpJson(const Json& j) { return j.dump(2) + "\n"; }

std::string serializeInstance(const Instance& inst) { return dumpJson(instanceToJson(inst)); }

Instance parseInstance(std::string_view text) { return instanceFromJson(parseJson(text)); }

std::string canonicalize(std::string_view text) { return serializeInstance(parseInstance(text)); }

Json specToJson(const StringSpec& spec) {
  Json out = Json::array();
  for (const auto& e : spec) {
    Json x{{"i", e.length}, {"d", e.degree}, {"mult", e.multiplicity}};
    if (e.hodgeType) x["type"] = {e.hodgeType->first, e.hodgeType->second};
    out.push_back(std::move(x));
  }
  return out;
}

StringSpec specFromJson(const Json& j, const std::string& pointer) {
  requireArray(j, pointer);
  StringSpec spec;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = at(pointer, k);
    allowKeys(j[k], p, {"i", "d", "mult", "type"});
    StringEntry e;
    e.length = intField(j[k], p, "i");
    e.degree = intField(j[k], p, "d");
    e.multiplicity = j[k].contains("mult") ? intField(j[k], p, "mult") : 1;
    if (j[k].contains("type")) {
      const Json& t = j[k]["type"];
      if (!t.is_array() || t.size() != 2) fail(at(p, "type"), "expected [p, q]");
      e.hodgeType = Bidegree{intValue(t[0], at(at(p, "type"), 0)), intValue(t[1], at(at(p, "type"), 1))};
    }
    spec.push_back(e);
  }
  return spec;
}

Profile profileFromJson(const Json& j, const Profile& base) {
  requireObject(j, "");
  allowKeys(j, "", {"name", "base", "minCenter", "maxCenter", "maxLength", "maxStrings",
                    "maxMultiplicity", "maxTotalDim", "twistBound", "hodge", "pairing"});
  Profile p = base;
  if (j.contains("base")) {
    try {
      p = builtinProfile(stringField(j, "", "base"));
    } catch (const InputError& e) {
      fail("/base", e.what());
    }
  }
  if (j.contains("name")) p.name = stringField(j, "", "name");
  auto readInt = [&](const char* key, int& out) {
    if (j.contains(key)) out = intField(j, "", key);
  };
  readInt("minCenter", p.minCenter);
  readInt("maxCenter", p.maxCenter);
  readInt("maxLength", p.maxLength);
  readInt("maxStrings", p.maxStrings);
  readInt("maxMultiplicity", p.maxMultiplicity);
  readInt("maxTotalDim", p.maxTotalDim);
  readInt("twistBound", p.twistBound);
  if (j.contains("hodge")) {
    const std::string mode = stringField(j, "", "hodge");
    if (mode == "none") p.hodge = HodgeMode::none;
    else if (mode == "tate") p.hodge = HodgeMode::tate;
    else if (mode == "typed") p.hodge = HodgeMode::typed;
    else fail("/hodge", "expected one of none, tate, typed");
  }
  if (j.contains("pairing")) {
    if (!j["pairing"].is_boolean()) fail("/pairing", "expected a boolean");
    p.pairing = j["pairing"].get<bool>();
  }
  try {
    validateProfile(p);
  } catch (const InputError& e) {
    fail("", e.what());
  }
  return p;
}

Json profileToJson(const Profile& p) {
  return {{"name", p.name},
          {"minCenter", p.minCenter},
          {"maxCenter", p.maxCenter},
          {"maxLength", p.maxLength},
          {"maxStrings", p.maxStrings},
          {"maxMultiplicity", p.maxMultiplicity},
          {"maxTotalDim", p.maxTotalDim},
          {"twistBound", p.twistBound},
          {"hodge", hodgeModeName(p.hodge)},
          {"pairing", p.pairing}};
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hashHex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) out[static_cast<std::size_t>(k)] = digits[h & 0xf];
  return out;
}

std::string formatVector(const VecQ& v, const std::vector<std::string>& labels,
                         std::optional<Index> lead) {
  std::vector<Index> order;
  if (lead && *lead < v.size() && v(*lead) != 0) order.push_back(*lead);
  for (Index k = 0; k < v.size(); ++k)
    if (v(k) != 0 && (!lead || k != *lead)) order.push_back(k);
  if (order.empty()) return "0";
  std::string out;
  for (std::size_t t = 0; t < order.size(); ++t) {
    const Index k = order[t];
    const std::string label =
        static_cast<std::size_t>(k) < labels.size() ? labels[static_cast<std::size_t>(k)]
                                                    : "e" + std::to_string(k);
    const bool negative = v(k) < 0;
    const Rational mag = negative ? Rational(-v(k)) : v(k);
    if (t == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) out += toString(mag) + " ";
    out += label;
  }
  return out;
}

}  // namespace lefsplit
