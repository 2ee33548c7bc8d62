#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "lefsplit/duality.hpp"
#include "lefsplit/hodge.hpp"
#include "lefsplit/splitting.hpp"

using namespace lefsplit;
using namespace lefsplit::test;

namespace {

Instance curveWithPairing(const MatQ& block) {
  Instance inst;
  inst.center = 1;
  inst.space.dims = {{1, 2}};
  inst.filtration.set(1, 0, SubQ::full(2));
  inst.hodge = HodgeBigrading{{1, standardWeightOne(1)}};
  inst.pairing = IntersectionPairing{1, {{1, block}}};
  return inst;
}

}  // namespace

TEST_CASE("pairing flags of the quadric cone", "[duality][quadric]") {
  const Instance q = quadricCone(1);
  const PairingFlags f = pairingFlags(q, *q.pairing);
  CHECK(f.all());
  CHECK(f.firstFailure.empty());
  // D is orthogonal to exactly the classes b with D . b = 0.
  CHECK(perpInDual(q, *q.pairing, 2, q.w(2, -1)) == q.w(4, 0));
  CHECK(perpInSource(q, *q.pairing, 2, q.w(4, 0)) == q.w(2, -1));

  Instance skew = q;
  skew.pairing->blocks[2] = identity<Rational>(3);
  skew.pairing->blocks[4] = identity<Rational>(3);
  const PairingFlags g = pairingFlags(skew, *skew.pairing);
  CHECK(g.nondegenerate);
  CHECK_FALSE(g.etaSelfAdjoint);
  CHECK_FALSE(g.firstFailure.empty());
  CHECK_THROWS_AS(orthogonalCharacterization(skew, *skew.pairing, 0, 2), CompatibilityFailure);
}

TEST_CASE("orthogonal characterization on the quadric cone", "[duality][quadric]") {
  for (const long m : {1L, 2L, 3L}) {
    const Instance q = quadricCone(m);
    const SplittingResult r = computeSplitting(q);
    for (const auto& [slot, e] : r.E) CHECK(orthogonalCharacterization(q, *q.pairing, slot.first, slot.second) == e);
    MatQ row(1, 3);
    for (Index k = 0; k < 3; ++k) row(0, k) = cup(quadricEta(m), vec({1, 0, 0}), unit(3, k));
    CHECK(orthogonalCharacterization(q, *q.pairing, 0, 2) == kernel(row));
    CHECK(orthogonalCharacterization(q, *q.pairing, 1, 2) == q.w(2, -1));
  }
}

TEST_CASE("pairing respects Hodge types", "[duality][hodge]") {
  const Instance q = quadricCone(2);
  CHECK(dualityHSCheck(q, *q.pairing, *q.hodge).pass);

  const Instance symplectic = curveWithPairing(mat({{0, 1}, {-1, 0}}));
  const DualityHSReport ok = dualityHSCheck(symplectic, *symplectic.pairing, *symplectic.hodge);
  CHECK(ok.pass);
  CHECK(ok.checked == 2);
  CHECK(ok.twist == -1);

  const Instance mistyped = curveWithPairing(mat({{1, 0}, {0, -1}}));
  const DualityHSReport bad = dualityHSCheck(mistyped, *mistyped.pairing, *mistyped.hodge);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witnessSource.size() == 2);
  // The witness pair has nonzero pairing.
  const MatG block = complexify(mistyped.pairing->blocks.at(1));
  CHECK((bad.witnessSource.transpose() * block * bad.witnessDual)(0, 0) != GaussianRational(0));
}

TEST_CASE("induced pairing on the summands of the quadric cone", "[duality][quadric]") {
  std::optional<MatQ> first;
  for (const long m : {1L, 2L, 3L}) {
    const Instance q = quadricCone(m);
    const SplittingResult r = computeSplitting(q);
    const MatQ middle = inducedPairingOnSummand(q, *q.pairing, r, 0).at(2);
    // Oracle: cup products of the adapted bases.
    const MatQ& a = r.adaptedBasis.at({0, 2});
    const MatQ& b = r.adaptedBasis.at({0, 4});
    REQUIRE(middle.rows() == a.rows());
    REQUIRE(middle.cols() == b.rows());
    for (Index x = 0; x < a.rows(); ++x)
      for (Index y = 0; y < b.rows(); ++y)
        CHECK(middle(x, y) == cupH4(a.row(x).transpose(), b.row(y).transpose()));
    CHECK(rank(middle) == 2);
    if (first) CHECK(sameMatrix(middle, *first));
    first = middle;

    const MatQ edge = inducedPairingOnSummand(q, *q.pairing, r, -1).at(2);
    REQUIRE(edge.rows() == 1);
    REQUIRE(edge.cols() == 1);
    CHECK(edge(0, 0) == cupH4(r.adaptedBasis.at({-1, 2}).row(0).transpose(), r.adaptedBasis.at({1, 4}).row(0).transpose()));
    // The adapted bases are D and eta D, and D . (eta D) = -(m+1).
    CHECK(edge(0, 0) == Rational(-(m + 1)));
  }
}

TEST_CASE("induced pairing on split models is the block restriction", "[duality][property]") {
  const Profile profile = builtinProfile("default");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const RandomInstance ri = randomInstance(seed, profile);
    const Instance& base = ri.model.instance;
    const SplittingResult r = computeSplitting(base);
    for (int k = -r.amplitude; k <= r.amplitude; ++k)
      for (const auto& [d, m] : inducedPairingOnSummand(base, *base.pairing, r, k)) {
        const MatQ expected = r.adaptedBasis.at({k, d}) * base.pairing->block(base.space, d) *
                              r.adaptedBasis.at({-k, 2 * base.pairing->center - d}).transpose();
        REQUIRE(sameMatrix(m, expected));
        REQUIRE(m.rows() == m.cols());
        REQUIRE(rank(m) == m.rows());
      }
  }
}

TEST_CASE("projectors onto sub-Hodge structures of summands", "[duality][quadric]") {
  const Instance q = quadricCone(1);
  const SplittingResult r = computeSplitting(q);

  const ProjectorResult whole = projector(q, *q.pairing, r, 0, 2, r.G.at({0, 2}));
  CHECK(whole.idempotent);
  CHECK(whole.rank == 2);
  CHECK(sameMatrix(MatQ(whole.matrix * whole.matrix), whole.matrix));
  REQUIRE(whole.typeOk);
  CHECK(*whole.typeOk);
  CHECK(whole.type == Bidegree{3, 3});
  CHECK(image(whole.matrix) == r.G.at({0, 2}));
  // Kernel is the other summand of H^2.
  CHECK(kernel(whole.matrix) == r.G.at({-1, 2}));

  const SubQ line = SubQ::span(MatQ(r.lifts.at({0, 2}).row(0)), 3);
  const ProjectorResult one = projector(q, *q.pairing, r, 0, 2, line);
  CHECK(one.idempotent);
  CHECK(one.rank == 1);
  CHECK(sameMatrix(MatQ(one.matrix * one.matrix), one.matrix));
  CHECK(image(one.matrix) == line);

  const ProjectorResult zero = projector(q, *q.pairing, r, 0, 2, SubQ::zero(3));
  CHECK(zero.idempotent);
  CHECK(zero.rank == 0);
  CHECK(isZero(zero.matrix));

  CHECK_THROWS_AS(projector(q, *q.pairing, r, 0, 2, q.w(2, -1)), PreconditionFailure);
}
