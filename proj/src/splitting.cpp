#include "lefsplit/splitting.hpp"

namespace lefsplit {

namespace {

std::string slotName(int a, int d) {
  return "(" + std::to_string(a) + "," + std::to_string(d) + ")";
}

}  // namespace

PsiFragment psiSchedule(const Instance& inst, int amplitude, int i, int d) {
  if (i < 0) throw InputError("psi schedule: i must be nonnegative");
  PsiFragment frag;
  {
    const int power = i + 1;
    const int target = d + 2 * power;
    frag.space = intersect(inst.w(d, -i),
                           preimage(inst.etaPower(d, power), inst.w(target, i + 1)));
    frag.log.push_back({0, power, i + 2, frag.space.dim()});
  }
  for (int t = 1; t <= amplitude - i; ++t) {
    const int power = i + t;
    const int target = d + 2 * power;
    const MatQ m = inst.etaPower(d, power);
    const SubQ upper = inst.w(target, i + t);
    for (Index r = 0; r < frag.space.dim(); ++r) {
      const VecQ v = frag.space.basis().row(r).transpose();
      if (!upper.contains(m * v)) throw ContainmentViolation(i, d, t, v);
    }
    frag.space = intersect(frag.space, preimage(m, inst.w(target, i + t - 1)));
    frag.log.push_back({t, power, i + t, frag.space.dim()});
  }
  return frag;
}

PsiFragment psiSchedule(const Instance& inst, int i, int d) {
  return psiSchedule(inst, validateFiltration(inst.space, inst.filtration).amplitude, i, d);
}

SubQ directCharacterization(const Instance& inst, int amplitude, int i, int d) {
  MatQ conditions = annihilator(inst.w(d, -i));
  for (int s = i + 1; s <= amplitude; ++s) {
    const int target = d + 2 * s;
    conditions = vstack(conditions,
                        MatQ(annihilator(inst.w(target, s - 1)) * inst.etaPower(d, s)));
  }
  return kernel(conditions);
}

SubQ directCharacterization(const Instance& inst, int i, int d) {
  return directCharacterization(inst, validateFiltration(inst.space, inst.filtration).amplitude,
                                i, d);
}

SubQ SplittingResult::e(const Instance& inst, int i, int d) const {
  auto it = E.find({i, d});
  return it == E.end() ? SubQ::zero(inst.space.dim(d)) : it->second;
}

SubQ SplittingResult::g(const Instance& inst, int k, int d) const {
  auto it = G.find({k, d});
  return it == G.end() ? SubQ::zero(inst.space.dim(d)) : it->second;
}

SplittingResult computeSplitting(const Instance& inst) {
  const GradedPieces gp(inst.space, inst.filtration, inst.eta);
  const PrimitiveTable pt = primitives(gp);
  const int r = gp.amplitude();
  std::map<Slot, SubQ> e;
  std::map<Slot, std::vector<PsiStep>> schedule;
  for (int d : inst.space.degrees()) {
    for (int i = 0; i <= r; ++i) {
      if (inst.w(d, -i).isZero()) continue;
      PsiFragment frag = psiSchedule(inst, r, i, d);
      if (frag.space != directCharacterization(inst, r, i, d))
        throw VerificationError("dual-path mismatch at (i,d)=" + slotName(i, d) +
                                ": iterated kernels differ from the direct characterization");
      e.emplace(Slot{i, d}, std::move(frag.space));
      schedule.emplace(Slot{i, d}, std::move(frag.log));
    }
  }
  return assemble(inst, gp, pt, std::move(e), std::move(schedule));
}

SplittingResult assemble(const Instance& inst, const GradedPieces& gp, const PrimitiveTable& pt,
                         std::map<Slot, SubQ> e, std::map<Slot, std::vector<PsiStep>> schedule) {
  SplittingResult out;
  out.amplitude = gp.amplitude();
  out.E = std::move(e);
  out.schedule = std::move(schedule);
  const int r = out.amplitude;

  for (const auto& [slot, space] : out.E) {
    const auto [i, d] = slot;
    if (!contains(inst.w(d, -i), space))
      throw AssemblyFailure("E^(-i,d) not inside W_(<=-i) at (i,d)=" + slotName(i, d));
    const GradedPiece* piece = gp.piece(d, -i);
    auto prim = pt.find(slot);
    if (!piece || prim == pt.end()) {
      if (!space.isZero())
        throw AssemblyFailure("E^(-i,d) nonzero over a zero primitive space at (i,d)=" +
                              slotName(i, d));
      out.lifts[slot] = MatQ(0, inst.space.dim(d));
      continue;
    }
    const MatQ projected = piece->quotient.projection * space.basis().transpose();
    if (rank(projected) != space.dim() || image(projected) != prim->second)
      throw AssemblyFailure("E^(-i,d) does not map isomorphically onto P^(-i,d) at (i,d)=" +
                            slotName(i, d));
    const MatQ rows = projected.transpose();
    MatQ lifts(prim->second.dim(), inst.space.dim(d));
    for (Index k = 0; k < prim->second.dim(); ++k) {
      const VecQ x = *solveRows(rows, VecQ(prim->second.basis().row(k).transpose()));
      lifts.row(k) = x.transpose() * space.basis();
    }
    out.lifts[slot] = std::move(lifts);
  }
  out.checks.push_back("E projects isomorphically onto the primitive spaces");

  for (int d : inst.space.degrees()) {
    const Index n = inst.space.dim(d);
    MatQ cumulative(0, n);
    for (int k = -r; k <= r; ++k) {
      MatQ basis(0, n);
      for (int j = std::max(0, k); 2 * j - k <= r; ++j) {
        auto it = out.lifts.find({2 * j - k, d - 2 * j});
        if (it == out.lifts.end() || it->second.rows() == 0) continue;
        basis = vstack(basis, MatQ((inst.etaPower(d - 2 * j, j) * it->second.transpose()).transpose()));
      }
      if (rank(basis) != basis.rows())
        throw AssemblyFailure("sum defining G_k V^d is not direct at (k,d)=" + slotName(k, d));
      cumulative = vstack(cumulative, basis);
      if (rank(cumulative) != cumulative.rows())
        throw AssemblyFailure("G pieces are not independent at (k,d)=" + slotName(k, d));
      if (SubQ::span(cumulative, n) != inst.w(d, k))
        throw AssemblyFailure("sum of G_(<=k) differs from W_(<=k) at (k,d)=" + slotName(k, d));
      if (basis.rows() > 0) {
        out.G[{k, d}] = SubQ::span(basis, n);
        out.adaptedBasis[{k, d}] = std::move(basis);
      }
    }
    if (cumulative.rows() != n)
      throw AssemblyFailure("G pieces do not span V^" + std::to_string(d));
  }
  out.checks.push_back("G is a direct sum decomposition of every V^d");
  out.checks.push_back("partial sums of G recover the filtration");
  return out;
}

VecQ liftPrimitive(const GradedPieces& gp, const SplittingResult& result, int i, int d,
                   const VecQ& grClass) {
  const GradedPiece* piece = gp.piece(d, -i);
  auto it = result.E.find({i, d});
  if (!piece || it == result.E.end()) throw InputError("no primitive slot at (i,d)=" + slotName(i, d));
  const MatQ rows = (piece->quotient.projection * it->second.basis().transpose()).transpose();
  auto x = solveRows(rows, grClass);
  if (!x) throw InputError("class is not primitive at (i,d)=" + slotName(i, d));
  return it->second.basis().transpose() * *x;
}

EtaCommutationReport etaCommutationCheck(const Instance& inst, const SplittingResult& result) {
  EtaCommutationReport report;
  auto fail = [&](const std::string& what) {
    report.pass = false;
    report.failures.push_back(what);
  };
  for (const auto& [slot, space] : result.E) {
    const auto [i, d] = slot;
    if (space.isZero()) continue;
    std::vector<SubQ> images;
    for (int j = 0; j <= i; ++j) {
      images.push_back(image(inst.etaPower(d, j), space));
      ++report.checked;
      if (images.back().dim() != space.dim())
        fail("eta^" + std::to_string(j) + " not injective on E at (i,d)=" + slotName(i, d));
    }
    for (int j = 0; j <= i; ++j)
      for (int jp = 1; j + jp <= i; ++jp) {
        ++report.checked;
        const SubQ lhs = image(inst.etaPower(d + 2 * j, jp), images[static_cast<std::size_t>(j)]);
        if (lhs != images[static_cast<std::size_t>(j + jp)])
          fail("eta^" + std::to_string(jp) + " eta^" + std::to_string(j) +
               " differs from eta^" + std::to_string(j + jp) + " at (i,d)=" + slotName(i, d));
      }
    ++report.checked;
    const SubQ top = image(inst.etaPower(d, i + 1), space);
    if (!contains(inst.w(d + 2 * (i + 1), i), top))
      fail("eta^(i+1) E not inside W_(<=i) at (i,d)=" + slotName(i, d));
  }
  return report;
}

}  // namespace lefsplit
