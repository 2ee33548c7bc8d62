#include "lefsplit/hodge.hpp"

#include <deque>
#include <set>

namespace lefsplit {

void validateHodgeStructure(const HodgeStructure& h) {
  MatG stacked(0, h.dim);
  Index total = 0;
  for (const auto& [pq, piece] : h.pieces) {
    const std::string name = "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")";
    if (piece.ambientDim() != h.dim)
      throw InputError("Hodge piece " + name + " has the wrong ambient dimension");
    if (pq.first + pq.second != h.weight)
      throw InputError("Hodge piece " + name + " does not have weight " + std::to_string(h.weight));
    if (conj(piece) != h.piece(pq.second, pq.first))
      throw InputError("Hodge piece " + name + " is not conjugate to its mirror piece");
    stacked = vstack(stacked, piece.basis());
    total += piece.dim();
  }
  if (total != h.dim || rank(stacked) != h.dim)
    throw InputError("Hodge pieces do not form a direct sum decomposition");
}

HodgeStructure hodgeTate(int weight, Index dim) {
  if (weight % 2 != 0) throw InputError("Hodge-Tate structures have even weight");
  HodgeStructure h{weight, dim, {}};
  if (dim > 0) h.pieces[{weight / 2, weight / 2}] = SubG::full(dim);
  return h;
}

HodgeStructure conjugateStructure(const HodgeStructure& h) {
  HodgeStructure out{h.weight, h.dim, {}};
  for (const auto& [pq, piece] : h.pieces) out.pieces[{pq.second, pq.first}] = piece;
  return out;
}

bool isSHS(const SubQ& s, const HodgeStructure& h) {
  if (s.isZero() || s.isFull()) return true;
  const SubG sc = complexify(s);
  Index total = 0;
  for (const auto& [pq, piece] : h.pieces) total += intersect(sc, piece).dim();
  return total == s.dim();
}

bool isSHS(const Instance& inst, const SubQ& s, int d) {
  if (!inst.hodge) throw PreconditionFailure("instance carries no Hodge data");
  auto it = inst.hodge->find(d);
  if (it == inst.hodge->end()) return s.isZero();
  return isSHS(s, it->second);
}

bool isHSMap(const MatQ& f, int a, const HodgeStructure& src, const HodgeStructure& dst) {
  if (f.rows() != dst.dim || f.cols() != src.dim)
    throw InputError("isHSMap: matrix shape does not match the Hodge structures");
  const MatG fc = complexify(f);
  for (const auto& [pq, piece] : src.pieces)
    if (!contains(dst.piece(pq.first + a, pq.second + a), image(fc, piece))) return false;
  return true;
}

bool isHSMap(const GradedMap& f, int a, const HodgeBigrading& src, const HodgeBigrading& dst,
             const GradedSpace& v) {
  for (int d : v.degrees()) {
    const int target = d + f.shift;
    if (v.dim(target) == 0) continue;
    auto s = src.find(d);
    auto t = dst.find(target);
    if (s == src.end() || t == dst.end()) return false;
    if (!isHSMap(f.block(v, d), a, s->second, t->second)) return false;
  }
  return true;
}

BhoVerdict bhoCheck(const MatQ& g, const MatQ& p, const HodgeStructure& a, const HodgeStructure& b) {
  if (g.rows() != b.dim || g.cols() != a.dim || p.rows() != a.dim || p.cols() != b.dim)
    throw InputError("bhoCheck: shapes of g and p do not match A and B");
  BhoVerdict verdict;
  if (!sameMatrix(MatQ(p * g), identity<Rational>(a.dim))) throw HypothesisFailure("p o g = id");
  verdict.hypotheses.push_back("p o g = id");
  if (!isSHS(image(g), b)) throw HypothesisFailure("g(A) is a sub-Hodge structure of B");
  verdict.hypotheses.push_back("g(A) is a sub-Hodge structure of B");
  if (!isHSMap(p, 0, b, a)) throw HypothesisFailure("p is a map of Hodge structures");
  verdict.hypotheses.push_back("p is a map of Hodge structures");
  verdict.gIsHSMap = isHSMap(g, 0, a, b);
  if (!verdict.gIsHSMap)
    throw EngineDefect("splitting lemma: hypotheses hold but g is not a map of Hodge structures");
  return verdict;
}

HodgeSplittingReport verifyHodgeSplitting(const Instance& inst, const SplittingResult& result) {
  if (!inst.hodge) throw PreconditionFailure("instance carries no Hodge data");
  for (const auto& [d, hs] : *inst.hodge) {
    try {
      validateHodgeStructure(hs);
    } catch (const InputError& e) {
      throw PreconditionFailure("degree " + std::to_string(d) + ": " + e.what());
    }
  }
  for (const auto& [d, steps] : inst.filtration.allSteps())
    for (const auto& [i, s] : steps)
      if (!isSHS(inst, s, d))
        throw PreconditionFailure("filtration step (d=" + std::to_string(d) + ", i=" +
                                  std::to_string(i) + ") is not a sub-Hodge structure");
  if (!isHSMap(inst.eta, 1, *inst.hodge, *inst.hodge, inst.space))
    throw PreconditionFailure("eta is not a map of Hodge structures of type (1,1)");

  HodgeSplittingReport report;
  auto check = [&](const SubQ& s, int d, const std::string& name) {
    ++report.checked;
    if (!isSHS(inst, s, d)) {
      report.pass = false;
      report.failures.push_back(name + " is not a sub-Hodge structure");
    }
  };
  for (const auto& [slot, s] : result.E)
    check(s, slot.second, "E^(" + std::to_string(-slot.first) + "," + std::to_string(slot.second) + ")");
  for (const auto& [slot, s] : result.G)
    check(s, slot.second, "G_" + std::to_string(slot.first) + " V^" + std::to_string(slot.second));
  for (int d : inst.space.degrees()) {
    ++report.checked;
    Index total = 0;
    for (const auto& [slot, s] : result.G)
      if (slot.second == d) total += s.dim();
    if (total != inst.space.dim(d)) {
      report.pass = false;
      report.failures.push_back("G pieces do not decompose V^" + std::to_string(d));
    }
  }
  if (!report.pass) throw EngineDefect("Hodge verification of the splitting failed: " +
                                       report.failures.front());
  return report;
}

namespace {

std::string key(const MatQ& m) {
  std::string out;
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out += toString(m(r, c)) + ",";
  return out;
}

}  // namespace

GroupInvariants groupInvariants(const std::vector<GradedMap>& generators, const HodgeBigrading& h,
                                const GradedSpace& v, std::size_t bound) {
  std::vector<MatQ> gens;
  for (const auto& g : generators) {
    if (g.shift != 0) throw InputError("group generators must have degree 0");
    MatQ total = g.total(v);
    if (!inverse(total)) throw InputError("group generator is not invertible");
    gens.push_back(std::move(total));
  }
  std::set<std::string> seen;
  std::deque<MatQ> queue;
  const MatQ id = identity<Rational>(v.totalDim());
  seen.insert(key(id));
  queue.push_back(id);
  while (!queue.empty()) {
    const MatQ x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      MatQ y = g * x;
      if (seen.insert(key(y)).second) {
        if (seen.size() > bound)
          throw GroupClosureBoundExceeded("group has more than " + std::to_string(bound) +
                                          " elements");
        queue.push_back(std::move(y));
      }
    }
  }

  GroupInvariants out;
  out.order = seen.size();
  for (int d : v.degrees()) {
    SubQ fixed = SubQ::full(v.dim(d));
    for (const auto& g : generators)
      fixed = intersect(fixed, kernel(MatQ(g.block(v, d) - identity<Rational>(v.dim(d)))));
    out.invariants[d] = std::move(fixed);
  }
  out.generatorsAreHS = true;
  for (const auto& g : generators)
    out.generatorsAreHS = out.generatorsAreHS && isHSMap(g, 0, h, h, v);
  out.shs = true;
  for (const auto& [d, s] : out.invariants) {
    auto it = h.find(d);
    out.shs = out.shs && it != h.end() && isSHS(s, it->second);
  }
  if (out.generatorsAreHS && !out.shs)
    throw EngineDefect("invariants of a group of Hodge automorphisms are not a sub-Hodge structure");
  return out;
}

}  // namespace lefsplit
