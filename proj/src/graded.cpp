#include "lefsplit/graded.hpp"

#include <algorithm>
#include <cstdlib>

namespace lefsplit {

std::vector<int> GradedSpace::degrees() const {
  std::vector<int> out;
  for (const auto& [d, n] : dims)
    if (n > 0) out.push_back(d);
  return out;
}

Index GradedSpace::totalDim() const {
  Index total = 0;
  for (const auto& [d, n] : dims) total += n;
  return total;
}

Index GradedSpace::offset(int d) const {
  Index total = 0;
  for (const auto& [deg, n] : dims) {
    if (deg >= d) break;
    total += n;
  }
  return total;
}

std::string GradedSpace::label(int d, Index k) const {
  auto it = labels.find(d);
  if (it != labels.end() && k < static_cast<Index>(it->second.size()))
    return it->second[static_cast<std::size_t>(k)];
  return "e" + std::to_string(d) + "_" + std::to_string(k);
}

MatQ GradedMap::block(const GradedSpace& v, int d) const {
  auto it = blocks.find(d);
  if (it != blocks.end()) return it->second;
  return zeros<Rational>(v.dim(d + shift), v.dim(d));
}

MatQ GradedMap::power(const GradedSpace& v, int d, int k) const {
  MatQ out = identity<Rational>(v.dim(d));
  for (int step = 0; step < k; ++step) out = block(v, d + step * shift) * out;
  return out;
}

MatQ GradedMap::total(const GradedSpace& v) const {
  MatQ out = zeros<Rational>(v.totalDim(), v.totalDim());
  for (int d : v.degrees()) {
    if (v.dim(d + shift) == 0) continue;
    out.block(v.offset(d + shift), v.offset(d), v.dim(d + shift), v.dim(d)) = block(v, d);
  }
  return out;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
  if (a.shift != b.shift) return false;
  auto covered = [](const GradedMap& x, const GradedMap& y) {
    for (const auto& [d, m] : x.blocks) {
      auto it = y.blocks.find(d);
      if (it == y.blocks.end()) {
        if (!isZero(m)) return false;
      } else if (it->second.rows() != m.rows() || it->second.cols() != m.cols() ||
                 it->second != m) {
        return false;
      }
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

GradedMap compose(const GradedMap& a, const GradedMap& b, const GradedSpace& v) {
  GradedMap out;
  out.shift = a.shift + b.shift;
  for (int d : v.degrees()) {
    const MatQ m = a.block(v, d + b.shift) * b.block(v, d);
    if (m.size() > 0) out.blocks[d] = m;
  }
  return out;
}

void Filtration::set(int d, int i, SubQ step) { steps_[d][i] = std::move(step); }

SubQ Filtration::at(const GradedSpace& v, int d, int i) const {
  auto deg = steps_.find(d);
  if (deg == steps_.end() || deg->second.empty()) return SubQ::zero(v.dim(d));
  auto it = deg->second.upper_bound(i);
  if (it == deg->second.begin()) return SubQ::zero(deg->second.begin()->second.ambientDim());
  return std::prev(it)->second;
}

const std::map<int, SubQ>& Filtration::steps(int d) const {
  static const std::map<int, SubQ> empty;
  auto it = steps_.find(d);
  return it == steps_.end() ? empty : it->second;
}

void Filtration::normalize() {
  for (auto deg = steps_.begin(); deg != steps_.end();) {
    auto& steps = deg->second;
    const SubQ* prev = nullptr;
    for (auto it = steps.begin(); it != steps.end();) {
      const bool redundant = prev ? *prev == it->second : it->second.isZero();
      if (redundant) {
        it = steps.erase(it);
      } else {
        prev = &it->second;
        ++it;
      }
    }
    deg = steps.empty() ? steps_.erase(deg) : std::next(deg);
  }
}

bool operator==(const Filtration& a, const Filtration& b) {
  Filtration x = a;
  Filtration y = b;
  x.normalize();
  y.normalize();
  return x.steps_ == y.steps_;
}

FiltrationReport validateFiltration(const GradedSpace& v, const Filtration& w) {
  FiltrationReport report;
  for (const auto& [d, steps] : w.allSteps()) {
    for (const auto& [i, s] : steps)
      if (s.ambientDim() != v.dim(d))
        throw InputError("filtration step (d=" + std::to_string(d) + ", i=" + std::to_string(i) +
                         ") has ambient dimension " + std::to_string(s.ambientDim()) +
                         ", expected " + std::to_string(v.dim(d)));
  }
  for (int d : v.degrees()) {
    const auto& steps = w.steps(d);
    if (steps.empty())
      throw InputError("non-exhaustive filtration at degree " + std::to_string(d) +
                       ": no steps given");
    const SubQ* prev = nullptr;
    std::optional<int> lo, hi;
    for (const auto& [i, s] : steps) {
      if (prev && !contains(s, *prev))
        throw InputError("non-monotone at (" + std::to_string(d) + "," + std::to_string(i) + ")");
      const Index before = prev ? prev->dim() : 0;
      if (s.dim() > before) {
        if (!lo) lo = i;
        hi = i;
      }
      prev = &s;
    }
    if (!prev->isFull())
      throw InputError("non-exhaustive filtration at degree " + std::to_string(d));
    report.range[d] = {*lo, *hi};
    report.amplitude = std::max({report.amplitude, std::abs(*lo), std::abs(*hi)});
  }
  return report;
}

CompatibilityReport checkStrictCompatibility(const GradedSpace& v, const Filtration& w,
                                             const GradedMap& eta) {
  for (int d : v.degrees()) {
    if (v.dim(d + eta.shift) == 0) continue;
    const MatQ block = eta.block(v, d);
    // W is constant between stored jumps while the target only grows, so the
    // jump positions are the binding cases.
    for (const auto& [i, s] : w.steps(d)) {
      const SubQ target = w.at(v, d + eta.shift, i + eta.shift);
      for (Index r = 0; r < s.dim(); ++r) {
        const VecQ x = s.basis().row(r).transpose();
        if (!target.contains(block * x)) return {false, d, i, x};
      }
    }
  }
  return {};
}

GradedPieces::GradedPieces(const GradedSpace& v, const Filtration& w, const GradedMap& eta)
    : space_(v), report_(validateFiltration(v, w)) {
  const CompatibilityReport compat = checkStrictCompatibility(v, w, eta);
  if (!compat.ok)
    throw CompatibilityFailure("eta does not preserve the filtration at (d=" +
                               std::to_string(compat.d) + ", i=" + std::to_string(compat.i) + ")");
  for (int d : v.degrees()) {
    for (const auto& [i, s] : w.steps(d)) {
      SubQ lower = w.at(v, d, i - 1);
      if (lower.dim() == s.dim()) continue;
      Quotient<Rational> q = quotient(s, lower);
      pieces_.emplace(Slot{d, i}, GradedPiece{std::move(lower), s, std::move(q)});
    }
  }
  for (const auto& [slot, piece] : pieces_) {
    const auto [d, i] = slot;
    const GradedPiece* target = this->piece(d + 2, i + 2);
    if (!target) continue;
    e_.emplace(slot, MatQ(target->quotient.projection * eta.block(v, d) *
                          piece.quotient.lifts.transpose()));
  }
}

Index GradedPieces::dim(int d, int i) const {
  const GradedPiece* p = piece(d, i);
  return p ? p->dim() : 0;
}

const GradedPiece* GradedPieces::piece(int d, int i) const {
  auto it = pieces_.find({d, i});
  return it == pieces_.end() ? nullptr : &it->second;
}

std::vector<Slot> GradedPieces::slots() const {
  std::vector<Slot> out;
  for (const auto& [slot, p] : pieces_) out.push_back(slot);
  return out;
}

MatQ GradedPieces::e(int d, int i) const {
  auto it = e_.find({d, i});
  if (it != e_.end()) return it->second;
  return zeros<Rational>(dim(d + 2, i + 2), dim(d, i));
}

MatQ GradedPieces::ePower(int d, int i, int k) const {
  MatQ out = identity<Rational>(dim(d, i));
  for (int step = 0; step < k; ++step) out = e(d + 2 * step, i + 2 * step) * out;
  return out;
}

VecQ GradedPieces::project(int d, int i, const VecQ& v) const {
  const GradedPiece* p = piece(d, i);
  if (!p) return VecQ(0);
  return p->quotient.projection * v;
}

VecQ GradedPieces::lift(int d, int i, const VecQ& coords) const {
  const GradedPiece* p = piece(d, i);
  if (!p) return VecQ::Constant(space_.dim(d), Rational(0));
  return p->quotient.lifts.transpose() * coords;
}

bool isNilpotent(const MatQ& n) {
  if (n.rows() != n.cols()) return false;
  MatQ p = identity<Rational>(n.rows());
  for (Index k = 0; k < n.rows(); ++k) p = n * p;
  return isZero(p);
}

namespace {

// On upper/lower, N^(level+1) acts as zero.
void weightRecursion(const MatQ& n, const SubQ& lower, const SubQ& upper, int level,
                     std::map<int, SubQ>& out) {
  out[level] = upper;
  out[-level - 1] = lower;
  if (level == 0) return;
  MatQ power = identity<Rational>(n.rows());
  for (int k = 0; k < level; ++k) power = n * power;
  const SubQ lo = sum(lower, image(power, upper));
  const SubQ hi = intersect(upper, preimage(power, lower));
  weightRecursion(n, lo, hi, level - 1, out);
}

}  // namespace

std::map<int, SubQ> weightFiltration(const MatQ& n, int center) {
  if (n.rows() != n.cols()) throw InputError("weight filtration: operator is not square");
  if (!isNilpotent(n)) throw InputError("weight filtration: operator is not nilpotent");
  const Index dim = n.rows();
  std::map<int, SubQ> raw;
  weightRecursion(n, SubQ::zero(dim), SubQ::full(dim), static_cast<int>(dim), raw);
  std::map<int, SubQ> jumps;
  Index prev = 0;
  for (const auto& [i, s] : raw) {
    if (s.dim() > prev) jumps.emplace(i + center, s);
    prev = s.dim();
  }
  return jumps;
}

WeightAxiomReport checkWeightAxioms(const MatQ& n, const std::map<int, SubQ>& jumps, int center) {
  const Index dim = n.rows();
  auto w = [&](int i) {
    auto it = jumps.upper_bound(i);
    return it == jumps.begin() ? SubQ::zero(dim) : std::prev(it)->second;
  };
  WeightAxiomReport report;
  auto fail = [&](const std::string& what) {
    report.pass = false;
    report.failure = what;
    return report;
  };
  if (!w(jumps.empty() ? center : jumps.rbegin()->first).isFull() && dim > 0)
    return fail("filtration is not exhaustive");
  const int lo = jumps.empty() ? center : jumps.begin()->first;
  const int hi = jumps.empty() ? center : jumps.rbegin()->first;
  const int reach = std::max(hi - center, center - lo) + 1;
  for (int i = center - reach - 2; i <= center + reach + 2; ++i)
    if (!contains(w(i - 2), image(n, w(i))))
      return fail("N W_" + std::to_string(i) + " is not inside W_" + std::to_string(i - 2));
  MatQ power = identity<Rational>(dim);
  for (int j = 1; j <= reach + 1; ++j) {
    power = power * n;
    const Quotient<Rational> src = quotient(w(center + j), w(center + j - 1));
    const Quotient<Rational> dst = quotient(w(center - j), w(center - j - 1));
    if (src.dim() != dst.dim())
      return fail("Gr_" + std::to_string(center + j) + " and Gr_" + std::to_string(center - j) +
                  " have different dimensions");
    if (src.dim() == 0) continue;
    const MatQ induced = dst.projection * power * src.lifts.transpose();
    if (rank(induced) != src.dim())
      return fail("N^" + std::to_string(j) + " is not an isomorphism Gr_" +
                  std::to_string(center + j) + " -> Gr_" + std::to_string(center - j));
  }
  return report;
}

}  // namespace lefsplit
