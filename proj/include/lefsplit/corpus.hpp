#pragma once

// Built-in instances: the blown-up quadric cone with its cup-product ring, and
// seeded generators for property suites.

#include "lefsplit/duality.hpp"

#include <array>
#include <cstdint>

namespace lefsplit {

/// Symmetric triple products of the degree-2 classes D, D1, D2 of the blown-up
/// quadric cone (D the exceptional divisor, D1 and D2 the two rulings).
struct TripleProductTable {
  std::array<std::string, 3> labels{"D", "D₁", "D₂"};
  /// value(a, b, c) for indices into `labels`; symmetric in its arguments.
  Rational value(int a, int b, int c) const;
  /// Product of three classes given in the (D, D1, D2) basis.
  Rational product(const VecQ& a, const VecQ& b, const VecQ& c) const;
};

/// Degree-4 basis {D D1, D D2, D1 D2} as index pairs.
inline constexpr std::array<std::pair<int, int>, 3> kQuadricH4Basis{{{0, 1}, {0, 2}, {1, 2}}};

/// Pairing H^2 x H^4 -> Q in the (D, D1, D2) x (D D1, D D2, D1 D2) bases.
MatQ quadricGram(const TripleProductTable& t = {});

/// V = H^0 + H^2 + H^4 + H^6 of dimensions 1, 3, 3, 1, center 3, eta = m D1 + D2,
/// W_(<=-1) H^2 = span{D}, W_(<=0) H^4 = {b : D b = 0}, Hodge-Tate, with the
/// cup-product pairing. Throws InputError for m < 0.
Instance quadricCone(const Rational& m);

/// Bounds for random split models.
struct Profile {
  std::string name = "default";
  int minCenter = 1;
  int maxCenter = 4;
  int maxLength = 3;
  int maxStrings = 5;  // string families drawn before adding mirrors
  int maxMultiplicity = 2;
  int maxTotalDim = 40;
  int twistBound = 3;
  HodgeMode hodge = HodgeMode::tate;
  bool pairing = true;

  friend bool operator==(const Profile&, const Profile&) = default;
};

/// Throws InputError for inconsistent bounds.
void validateProfile(const Profile& p);

/// Built-in profiles: "default" (Hodge-Tate with pairing), "plain" (no extra
/// data, odd degrees allowed), "typed" (weight-type pairs with pairing).
Profile builtinProfile(const std::string& name);
std::vector<std::string> builtinProfileNames();

struct RandomInstance {
  std::uint64_t seed = 0;
  StringSpec spec;
  SplitModel model;  // untwisted ground truth
  Twist twist;       // twist.instance is the instance under test
};

/// Deterministic per (seed, profile).
RandomInstance randomInstance(std::uint64_t seed, const Profile& profile);

/// dim = 2k; the pairs (e_2j, e_2j+1) span copies of H^(1,0) = span{(1, i)}.
HodgeStructure standardWeightOne(Index pairs);

/// Data for the splitting-lemma checker: A --g--> B --p--> A.
struct SplittingLemmaInstance {
  MatQ g;
  MatQ p;
  HodgeStructure a;
  HodgeStructure b;
};

/// Hypotheses hold by construction: B = A + C up to a random change of
/// coordinates, g the graph of a Hodge morphism A -> C, p a Hodge retraction.
SplittingLemmaInstance randomSplittingLemmaInstance(std::uint64_t seed);

/// A = B as spaces with conjugate weight-1 structures, g = p = id.
SplittingLemmaInstance conjugateStructureInstance();

}  // namespace lefsplit
