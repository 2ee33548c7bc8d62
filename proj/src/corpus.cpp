#include "lefsplit/corpus.hpp"

#include <algorithm>
#include <random>

namespace lefsplit {

Rational TripleProductTable::value(int a, int b, int c) const {
  std::array<int, 3> k{a, b, c};
  for (int x : k)
    if (x < 0 || x > 2) throw InputError("triple product index out of range");
  std::sort(k.begin(), k.end());
  // D1^2 = D2^2 = 0 against everything; the rest is D^3 = 2, D^2 D_j = -1, D D1 D2 = 1.
  if (k == std::array<int, 3>{0, 0, 0}) return 2;
  if (k == std::array<int, 3>{0, 0, 1} || k == std::array<int, 3>{0, 0, 2}) return -1;
  if (k == std::array<int, 3>{0, 1, 2}) return 1;
  return 0;
}

Rational TripleProductTable::product(const VecQ& a, const VecQ& b, const VecQ& c) const {
  Rational out = 0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) out += a(x) * b(y) * c(z) * value(x, y, z);
  return out;
}

MatQ quadricGram(const TripleProductTable& t) {
  MatQ gram(3, 3);
  for (int x = 0; x < 3; ++x)
    for (int k = 0; k < 3; ++k)
      gram(x, k) = t.value(x, kQuadricH4Basis[k].first, kQuadricH4Basis[k].second);
  return gram;
}

Instance quadricCone(const Rational& m) {
  if (m < 0) throw InputError("quadric cone: m must be nonnegative");
  const TripleProductTable t;
  const MatQ gram = quadricGram(t);
  const MatQ gramInv = *inverse(gram);
  const VecQ eta = (VecQ(3) << 0, m, 1).finished();
  const MatQ unit = identity<Rational>(3);

  Instance inst;
  inst.center = 3;
  inst.space.dims = {{0, 1}, {2, 3}, {4, 3}, {6, 1}};
  inst.space.labels = {
      {0, {"1"}},
      {2, {"D", "D₁", "D₂"}},
      {4, {"D·D₁", "D·D₂", "D₁·D₂"}},
      {6, {"pt"}},
  };

  inst.eta.blocks[0] = MatQ(eta);
  MatQ h2 = MatQ(3, 3);
  for (int j = 0; j < 3; ++j) {
    VecQ against(3);
    for (int x = 0; x < 3; ++x) against(x) = t.product(unit.col(x), eta, unit.col(j));
    h2.col(j) = gramInv * against;
  }
  inst.eta.blocks[2] = h2;
  MatQ h4(1, 3);
  for (int k = 0; k < 3; ++k)
    h4(0, k) = t.product(eta, unit.col(kQuadricH4Basis[k].first), unit.col(kQuadricH4Basis[k].second));
  inst.eta.blocks[4] = h4;

  const SubQ exceptional = SubQ::span(MatQ(unit.row(0)), 3);
  inst.filtration.set(0, 0, SubQ::full(1));
  inst.filtration.set(2, -1, exceptional);
  inst.filtration.set(2, 0, SubQ::full(3));
  inst.filtration.set(4, 0, kernel(MatQ(exceptional.basis() * gram)));
  inst.filtration.set(4, 1, SubQ::full(3));
  inst.filtration.set(6, 0, SubQ::full(1));

  HodgeBigrading h;
  for (int d : inst.space.degrees()) h[d] = hodgeTate(d, inst.space.dim(d));
  inst.hodge = std::move(h);

  IntersectionPairing q{3, {}};
  q.blocks[0] = MatQ::Constant(1, 1, Rational(1));
  q.blocks[2] = gram;
  q.blocks[4] = gram.transpose();
  q.blocks[6] = MatQ::Constant(1, 1, Rational(1));
  inst.pairing = std::move(q);
  return inst;
}

void validateProfile(const Profile& p) {
  if (p.minCenter < 0 || p.maxCenter < p.minCenter)
    throw InputError("profile: need 0 <= minCenter <= maxCenter");
  if (p.maxLength < 0) throw InputError("profile: maxLength must be >= 0");
  if (p.maxStrings < 1) throw InputError("profile: maxStrings must be >= 1");
  if (p.maxMultiplicity < 1) throw InputError("profile: maxMultiplicity must be >= 1");
  if (p.maxTotalDim < 1) throw InputError("profile: maxTotalDim must be >= 1");
  if (p.twistBound < 0) throw InputError("profile: twistBound must be >= 0");
}

Profile builtinProfile(const std::string& name) {
  Profile p;
  p.name = name;
  if (name == "default") return p;
  if (name == "plain") {
    p.hodge = HodgeMode::none;
    p.pairing = false;
    return p;
  }
  if (name == "typed") {
    p.hodge = HodgeMode::typed;
    return p;
  }
  throw InputError("unknown built-in profile '" + name + "'");
}

std::vector<std::string> builtinProfileNames() { return {"default", "plain", "typed"}; }

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

StringSpec randomSpec(std::mt19937_64& rng, const Profile& p, int center) {
  StringSpec spec;
  int total = 0;
  const int families = uniform(rng, 1, p.maxStrings);
  for (int f = 0; f < families; ++f) {
    const int length = uniform(rng, 0, std::min(p.maxLength, center));
    const int top = 2 * center - 2 * length;  // bottom degree range [0, top]
    StringEntry entry;
    entry.length = length;
    const bool typed = p.hodge == HodgeMode::typed && top >= 1 && uniform(rng, 0, 1) == 1;
    if (typed) {
      entry.degree = uniform(rng, 1, top);
      int hp = uniform(rng, 0, entry.degree);
      if (2 * hp == entry.degree) hp = entry.degree;
      entry.hodgeType = Bidegree{hp, entry.degree - hp};
      entry.multiplicity = 2 * uniform(rng, 1, std::max(1, p.maxMultiplicity / 2));
    } else {
      entry.degree = uniform(rng, 0, top);
      if (p.hodge != HodgeMode::none && entry.degree % 2 != 0) --entry.degree;
      entry.multiplicity = uniform(rng, 1, p.maxMultiplicity);
    }
    StringSpec add{entry};
    const int mirrorDegree = 2 * center - entry.degree - 2 * length;
    if (p.pairing && mirrorDegree != entry.degree) {
      StringEntry mirror = entry;
      mirror.degree = mirrorDegree;
      if (entry.hodgeType)
        mirror.hodgeType = Bidegree{center - entry.hodgeType->second - length,
                                    center - entry.hodgeType->first - length};
      add.push_back(mirror);
    }
    int size = 0;
    for (const auto& e : add) size += (e.length + 1) * e.multiplicity;
    if (total + size > p.maxTotalDim) {
      if (spec.empty()) continue;
      break;
    }
    total += size;
    spec.insert(spec.end(), add.begin(), add.end());
  }
  if (spec.empty()) spec.push_back({0, 0, 1, std::nullopt});
  return spec;
}

}  // namespace

RandomInstance randomInstance(std::uint64_t seed, const Profile& profile) {
  validateProfile(profile);
  std::mt19937_64 rng(seed);
  RandomInstance out;
  out.seed = seed;
  const int center = uniform(rng, profile.minCenter, profile.maxCenter);
  out.spec = randomSpec(rng, profile, center);
  out.model = buildSplitModel(out.spec, {center, profile.pairing, profile.hodge});
  out.twist = twistModel(out.model.instance, rng(), profile.twistBound);
  return out;
}

HodgeStructure standardWeightOne(Index pairs) {
  const Index n = 2 * pairs;
  MatG holo(pairs, n), anti(pairs, n);
  holo.setConstant(GaussianRational(0));
  anti.setConstant(GaussianRational(0));
  for (Index j = 0; j < pairs; ++j) {
    holo(j, 2 * j) = anti(j, 2 * j) = GaussianRational(1);
    holo(j, 2 * j + 1) = GaussianRational(0, 1);
    anti(j, 2 * j + 1) = GaussianRational(0, -1);
  }
  HodgeStructure h{1, n, {}};
  if (pairs > 0) {
    h.pieces[{1, 0}] = SubG::span(holo, n);
    h.pieces[{0, 1}] = SubG::span(anti, n);
  }
  return h;
}

namespace {

HodgeStructure directSum(const HodgeStructure& a, const HodgeStructure& c) {
  const Index n = a.dim + c.dim;
  HodgeStructure out{a.weight, n, {}};
  std::map<Bidegree, MatG> rows;
  auto add = [&](const HodgeStructure& h, Index offset) {
    for (const auto& [pq, piece] : h.pieces) {
      MatG block = zeros<GaussianRational>(piece.dim(), n);
      block.middleCols(offset, h.dim) = piece.basis();
      auto& m = rows.try_emplace(pq, MatG(0, n)).first->second;
      m = vstack(m, block);
    }
  };
  add(a, 0);
  add(c, a.dim);
  for (auto& [pq, m] : rows) out.pieces[pq] = SubG::span(m, n);
  return out;
}

HodgeStructure transported(const HodgeStructure& h, const MatQ& t) {
  HodgeStructure out = h;
  const MatG tc = complexify(t);
  for (auto& [pq, piece] : out.pieces) piece = image(tc, piece);
  return out;
}

// Hodge morphism between standard structures of the same kind: arbitrary for
// Hodge-Tate, blocks [[a, -b], [b, a]] (multiplication by a - ib) for weight 1.
MatQ randomMorphism(std::mt19937_64& rng, Index rows, Index cols, bool weightOne) {
  MatQ m = zeros<Rational>(rows, cols);
  if (!weightOne) {
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c) m(r, c) = uniform(rng, -3, 3);
    return m;
  }
  for (Index r = 0; r < rows / 2; ++r)
    for (Index c = 0; c < cols / 2; ++c) {
      const int a = uniform(rng, -3, 3);
      const int b = uniform(rng, -3, 3);
      m(2 * r, 2 * c) = a;
      m(2 * r, 2 * c + 1) = -b;
      m(2 * r + 1, 2 * c) = b;
      m(2 * r + 1, 2 * c + 1) = a;
    }
  return m;
}

MatQ randomInvertible(std::mt19937_64& rng, Index n) {
  for (;;) {
    MatQ m(n, n);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) m(r, c) = uniform(rng, -2, 2);
    if (rank(m) == n) return m;
  }
}

}  // namespace

SplittingLemmaInstance randomSplittingLemmaInstance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const bool weightOne = uniform(rng, 0, 1) == 1;
  const Index unitsA = uniform(rng, 1, 3);
  const Index unitsC = uniform(rng, 0, 3);
  const Index dimA = weightOne ? 2 * unitsA : unitsA;
  const Index dimC = weightOne ? 2 * unitsC : unitsC;
  const HodgeStructure a0 = weightOne ? standardWeightOne(unitsA) : hodgeTate(2, dimA);
  const HodgeStructure c0 = weightOne ? standardWeightOne(unitsC) : hodgeTate(2, dimC);
  const HodgeStructure b0 = directSum(a0, c0);

  const MatQ k = randomMorphism(rng, dimC, dimA, weightOne);  // A -> C
  const MatQ m = randomMorphism(rng, dimA, dimC, weightOne);  // C -> A
  MatQ g0(dimA + dimC, dimA), p0(dimA, dimA + dimC);
  g0 << identity<Rational>(dimA), k;
  p0 << MatQ(identity<Rational>(dimA) - m * k), m;

  const MatQ s = randomInvertible(rng, dimA);
  const MatQ t = randomInvertible(rng, dimA + dimC);
  const MatQ sInv = *inverse(s);
  const MatQ tInv = *inverse(t);
  return {t * g0 * sInv, s * p0 * tInv, transported(a0, s), transported(b0, t)};
}

SplittingLemmaInstance conjugateStructureInstance() {
  const HodgeStructure a = standardWeightOne(1);
  return {identity<Rational>(2), identity<Rational>(2), a, conjugateStructure(a)};
}

}  // namespace lefsplit
