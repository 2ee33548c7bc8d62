#include "lefsplit/instance.hpp"

namespace lefsplit {

SubG HodgeStructure::piece(int p, int q) const {
  auto it = pieces.find({p, q});
  return it == pieces.end() ? SubG::zero(dim) : it->second;
}

MatQ IntersectionPairing::block(const GradedSpace& v, int d) const {
  if (auto it = blocks.find(d); it != blocks.end()) return it->second;
  if (auto it = blocks.find(2 * center - d); it != blocks.end()) return it->second.transpose();
  return zeros<Rational>(v.dim(d), v.dim(2 * center - d));
}

bool operator==(const IntersectionPairing& a, const IntersectionPairing& b) {
  if (a.center != b.center || a.blocks.size() != b.blocks.size()) return false;
  for (auto x = a.blocks.begin(), y = b.blocks.begin(); x != a.blocks.end(); ++x, ++y)
    if (x->first != y->first || !sameMatrix(x->second, y->second)) return false;
  return true;
}

bool operator==(const NamedOperator& a, const NamedOperator& b) {
  return a.name == b.name && a.degree == b.degree && sameMatrix(a.matrix, b.matrix);
}

Instance transport(const Instance& inst, const std::map<int, MatQ>& u) {
  const GradedSpace& v = inst.space;
  auto fwd = [&](int d) -> MatQ {
    auto it = u.find(d);
    return it == u.end() ? identity<Rational>(v.dim(d)) : it->second;
  };
  std::map<int, MatQ> inv;
  for (int d : v.degrees()) {
    auto m = inverse(fwd(d));
    if (!m) throw InputError("transport: automorphism block at degree " + std::to_string(d) +
                             " is singular");
    inv[d] = *m;
  }
  auto back = [&](int d) -> MatQ {
    auto it = inv.find(d);
    return it == inv.end() ? identity<Rational>(v.dim(d)) : it->second;
  };
  auto conjugate = [&](const GradedMap& f) {
    GradedMap out{f.shift, {}};
    for (const auto& [d, m] : f.blocks) out.blocks[d] = fwd(d + f.shift) * m * back(d);
    return out;
  };

  Instance out = inst;
  out.eta = conjugate(inst.eta);
  out.filtration = Filtration{};
  for (const auto& [d, steps] : inst.filtration.allSteps())
    for (const auto& [i, s] : steps) out.filtration.set(d, i, image(fwd(d), s));
  if (inst.hodge) {
    for (auto& [d, hs] : *out.hodge) {
      const MatG ud = complexify(fwd(d));
      for (auto& [pq, piece] : hs.pieces) piece = image(ud, piece);
    }
  }
  if (inst.pairing) {
    for (auto& [d, block] : out.pairing->blocks)
      block = back(d).transpose() * block * back(2 * inst.pairing->center - d);
  }
  for (auto& g : out.groups)
    for (auto& gen : g.generators) gen = conjugate(gen);
  for (auto& op : out.operators) op.matrix = fwd(op.degree) * op.matrix * back(op.degree);
  return out;
}

}  // namespace lefsplit
