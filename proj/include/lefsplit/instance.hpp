#pragma once

#include "lefsplit/graded.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lefsplit {

using Bidegree = std::pair<int, int>;

/// Pure Hodge structure on one coordinate space, given by its (p,q) pieces
/// inside the complexification.
struct HodgeStructure {
  int weight = 0;
  Index dim = 0;
  std::map<Bidegree, SubG> pieces;

  /// Piece (p,q); the zero subspace when absent.
  SubG piece(int p, int q) const;
  friend bool operator==(const HodgeStructure&, const HodgeStructure&) = default;
};

/// Hodge structures per degree.
using HodgeBigrading = std::map<int, HodgeStructure>;

/// Bilinear pairing V^d x V^(2n-d) -> Q; Q(v, w) = v^T block(d) w.
struct IntersectionPairing {
  int center = 0;
  std::map<int, MatQ> blocks;

  /// block(d); when only block(2n-d) is stored, its transpose.
  MatQ block(const GradedSpace& v, int d) const;
  friend bool operator==(const IntersectionPairing& a, const IntersectionPairing& b);
};

struct GroupAction {
  std::string name;
  std::vector<GradedMap> generators;  // degree-0 automorphisms
  friend bool operator==(const GroupAction&, const GroupAction&) = default;
};

/// Named endomorphism of a single degree (for standalone weight filtrations).
struct NamedOperator {
  std::string name;
  int degree = 0;
  MatQ matrix;
  friend bool operator==(const NamedOperator& a, const NamedOperator& b);
};

/// Graded space, perverse-type filtration, and a degree-2 operator, plus
/// optional Hodge and pairing data.
struct Instance {
  GradedSpace space;
  int center = 0;
  Filtration filtration;
  GradedMap eta{2, {}};
  std::optional<HodgeBigrading> hodge;
  std::optional<IntersectionPairing> pairing;
  std::vector<GroupAction> groups;
  std::vector<NamedOperator> operators;

  /// W_(<=i) V^d
  SubQ w(int d, int i) const { return filtration.at(space, d, i); }
  MatQ etaPower(int d, int k) const { return eta.power(space, d, k); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Applies a degree-0 automorphism u (per-degree blocks): eta -> u eta u^-1,
/// W -> u(W), Hodge pieces -> u(pieces), Q -> Q(u^-1 ., u^-1 .).
Instance transport(const Instance& inst, const std::map<int, MatQ>& u);

}  // namespace lefsplit
