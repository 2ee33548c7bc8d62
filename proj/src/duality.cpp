#include "lefsplit/duality.hpp"

namespace lefsplit {

namespace {

std::string slotName(int a, int d) {
  return "(" + std::to_string(a) + "," + std::to_string(d) + ")";
}

// Projection onto each piece along the others.
std::map<Bidegree, MatG> pieceProjectors(const HodgeStructure& h) {
  MatG basis(0, h.dim);
  for (const auto& [pq, piece] : h.pieces) basis = vstack(basis, piece.basis());
  const auto inv = inverse(MatG(basis.transpose()));
  if (!inv) throw InputError("Hodge pieces do not form a basis");
  std::map<Bidegree, MatG> out;
  Index offset = 0;
  for (const auto& [pq, piece] : h.pieces) {
    MatG select = zeros<GaussianRational>(h.dim, h.dim);
    for (Index k = 0; k < piece.dim(); ++k) select(offset + k, offset + k) = GaussianRational(1);
    out[pq] = basis.transpose() * select * *inv;
    offset += piece.dim();
  }
  return out;
}

}  // namespace

SubQ perpInDual(const Instance& inst, const IntersectionPairing& q, int d, const SubQ& s) {
  const MatQ block = q.block(inst.space, d);
  return kernel(MatQ(s.basis() * block));
}

SubQ perpInSource(const Instance& inst, const IntersectionPairing& q, int d, const SubQ& t) {
  const MatQ block = q.block(inst.space, d);
  return kernel(MatQ(t.basis() * block.transpose()));
}

PairingFlags pairingFlags(const Instance& inst, const IntersectionPairing& q) {
  PairingFlags flags;
  const GradedSpace& v = inst.space;
  const int n = q.center;
  auto fail = [&](bool& flag, const std::string& what) {
    if (flags.firstFailure.empty()) flags.firstFailure = what;
    flag = false;
  };
  for (int d : v.degrees()) {
    const MatQ block = q.block(v, d);
    if (block.rows() != block.cols() || rank(block) != block.rows())
      fail(flags.nondegenerate, "pairing block at degree " + std::to_string(d) + " is degenerate");
  }
  for (int d : v.degrees()) {
    const MatQ lhs = inst.etaPower(d, 1).transpose() * q.block(v, d + 2);
    const MatQ rhs = q.block(v, d) * inst.etaPower(2 * n - d - 2, 1);
    if (!sameMatrix(lhs, rhs))
      fail(flags.etaSelfAdjoint, "eta is not self-adjoint at degree " + std::to_string(d));
  }
  const FiltrationReport report = validateFiltration(v, inst.filtration);
  const int r = report.amplitude;
  for (int d : v.degrees())
    for (int i = -r - 1; i <= r; ++i)
      if (perpInDual(inst, q, d, inst.w(d, i)) != inst.w(2 * n - d, -i - 1))
        fail(flags.filtrationSelfDual,
             "filtration is not self-dual at (d,i)=" + slotName(d, i));
  return flags;
}

SubQ orthogonalCharacterization(const Instance& inst, const IntersectionPairing& q, int i, int d) {
  const PairingFlags flags = pairingFlags(inst, q);
  if (!flags.all()) throw CompatibilityFailure(flags.firstFailure);
  const int n = q.center;
  const int r = validateFiltration(inst.space, inst.filtration).amplitude;
  SubQ out = inst.w(d, -i);
  for (int t = 1; i + t <= r; ++t) {
    const int power = i + t;
    const int source = 2 * n - d - 2 * power;
    const SubQ generators = image(inst.etaPower(source, power), inst.w(source, -i - t));
    out = intersect(out, perpInSource(inst, q, d, generators));
  }
  return out;
}

DualityHSReport dualityHSCheck(const Instance& inst, const IntersectionPairing& q,
                               const HodgeBigrading& h) {
  DualityHSReport report;
  const int n = q.center;
  report.twist = -n;
  for (int d : inst.space.degrees()) {
    const int dual = 2 * n - d;
    auto src = h.find(d);
    auto dst = h.find(dual);
    if (src == h.end() || dst == h.end()) {
      report.pass = false;
      report.failures.push_back("missing Hodge data at degree " + std::to_string(d) + " or " +
                                std::to_string(dual));
      continue;
    }
    const MatG block = complexify(q.block(inst.space, d));
    for (const auto& [pq, a] : src->second.pieces)
      for (const auto& [pq2, b] : dst->second.pieces) {
        if (pq2 == Bidegree{n - pq.first, n - pq.second}) continue;
        ++report.checked;
        const MatG m = a.basis() * block * b.basis().transpose();
        for (Index r = 0; r < m.rows(); ++r)
          for (Index c = 0; c < m.cols(); ++c) {
            if (m(r, c) == GaussianRational(0)) continue;
            if (report.pass) {
              report.witnessSource = a.basis().row(r).transpose();
              report.witnessDual = b.basis().row(c).transpose();
            }
            report.pass = false;
            report.failures.push_back(
                "H^" + slotName(pq.first, pq.second) + " of V^" + std::to_string(d) +
                " pairs nontrivially with H^" + slotName(pq2.first, pq2.second) + " of V^" +
                std::to_string(dual));
            r = m.rows();
            break;
          }
      }
  }
  return report;
}

std::map<int, MatQ> inducedPairingOnSummand(const Instance& inst, const IntersectionPairing& q,
                                            const SplittingResult& result, int k) {
  std::map<int, MatQ> out;
  for (int d : inst.space.degrees()) {
    auto a = result.adaptedBasis.find({k, d});
    auto b = result.adaptedBasis.find({-k, 2 * q.center - d});
    if (a == result.adaptedBasis.end() || b == result.adaptedBasis.end()) continue;
    out[d] = a->second * q.block(inst.space, d) * b->second.transpose();
  }
  return out;
}

ProjectorResult projector(const Instance& inst, const IntersectionPairing& q,
                          const SplittingResult& result, int k, int d, const SubQ& target,
                          const std::optional<SubQ>& complement) {
  const Index n = inst.space.dim(d);
  const int center = q.center;
  const MatQ block = q.block(inst.space, d);
  const auto blockInv = block.rows() == block.cols() ? inverse(block) : std::nullopt;
  if (!blockInv) throw PreconditionFailure("pairing block at degree " + std::to_string(d) +
                                           " is degenerate");
  const SubQ g = result.g(inst, k, d);
  if (!contains(g, target))
    throw PreconditionFailure("target is not inside G_" + std::to_string(k) + " V^" +
                              std::to_string(d));
  if (inst.hodge && !isSHS(inst, target, d))
    throw PreconditionFailure("target is not a sub-Hodge structure");

  MatQ comp;
  if (complement) {
    if (!contains(g, *complement) || complement->dim() + target.dim() != g.dim() ||
        sum(target, *complement) != g)
      throw PreconditionFailure("complement is not a complement of the target inside G_" +
                                std::to_string(k) + " V^" + std::to_string(d));
    comp = complement->basis();
  } else {
    comp = quotient(g, target).lifts;
  }
  MatQ rows = vstack(target.basis(), comp);
  for (const auto& [slot, basis] : result.adaptedBasis)
    if (slot.second == d && slot.first != k) rows = vstack(rows, basis);
  const auto rowsInv = inverse(MatQ(rows.transpose()));
  if (!rowsInv) throw EngineDefect("summands do not form a basis of V^" + std::to_string(d));
  MatQ select = zeros<Rational>(n, n);
  for (Index j = 0; j < target.dim(); ++j) select(j, j) = 1;

  ProjectorResult out;
  out.k = k;
  out.d = d;
  out.matrix = rows.transpose() * select * *rowsInv;
  out.rank = rank(out.matrix);
  out.idempotent = sameMatrix(MatQ(out.matrix * out.matrix), out.matrix);
  out.tensor = out.matrix * blockInv->transpose();
  out.type = {center, center};

  if (inst.hodge) {
    auto src = inst.hodge->find(d);
    auto dst = inst.hodge->find(2 * center - d);
    if (src == inst.hodge->end() || dst == inst.hodge->end()) {
      out.typeOk = n == 0;
      return out;
    }
    const auto left = pieceProjectors(src->second);
    const auto right = pieceProjectors(dst->second);
    const MatG t = complexify(out.tensor);
    out.typeOk = true;
    for (const auto& [pq, pl] : left)
      for (const auto& [pq2, pr] : right) {
        if (pq.first + pq2.first == center && pq.second + pq2.second == center) continue;
        if (!isZero(MatG(pl * t * pr.transpose()))) {
          out.typeOk = false;
          out.typeFailures.push_back("component of type " +
                                     slotName(pq.first + pq2.first, pq.second + pq2.second));
        }
      }
  }
  return out;
}

}  // namespace lefsplit
