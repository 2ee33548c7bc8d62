#include "lefsplit/lefschetz.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

namespace lefsplit {

HardLefschetzReport checkHardLefschetz(const GradedPieces& gp) {
  std::set<Slot> candidates;  // (i, d)
  for (const auto& [d, k] : gp.slots()) {
    if (k <= 0) candidates.insert({-k, d});
    if (k >= 0) candidates.insert({k, d - 2 * k});
  }
  HardLefschetzReport report;
  for (const auto& [i, d] : candidates) {
    ++report.checked;
    const Index src = gp.dim(d, -i);
    const Index tgt = gp.dim(d + 2 * i, i);
    const MatQ m = gp.ePower(d, -i, i);
    const Index r = rank(m);
    if (src == tgt && r == src) continue;
    report.pass = false;
    report.i = i;
    report.d = d;
    report.sourceDim = src;
    report.targetDim = tgt;
    if (r < src) report.witness = nullSpace(m).row(0).transpose();
    return report;
  }
  return report;
}

PrimitiveTable primitives(const GradedPieces& gp) {
  const HardLefschetzReport hl = checkHardLefschetz(gp);
  if (!hl.pass)
    throw HardLefschetzFailure("hard Lefschetz fails at (i=" + std::to_string(hl.i) +
                               ", d=" + std::to_string(hl.d) + ")");
  PrimitiveTable table;
  for (const auto& [d, k] : gp.slots()) {
    if (k > 0) continue;
    const int i = -k;
    SubQ p = kernel(gp.ePower(d, k, i + 1));
    if (p.dim() != gp.dim(d, k) - gp.dim(d - 2, k - 2))
      throw EngineDefect("primitive dimension identity fails at (i=" + std::to_string(i) +
                         ", d=" + std::to_string(d) + ")");
    table.emplace(Slot{i, d}, std::move(p));
  }
  return table;
}

LefschetzDecomposition lefschetzDecomposition(const GradedPieces& gp, const PrimitiveTable& pt) {
  LefschetzDecomposition out;
  for (const auto& [d, k] : gp.slots()) {
    auto& list = out.summands[{k, d}];
    Index total = 0;
    MatQ stacked(0, gp.dim(d, k));
    for (int j = std::max(0, k); 2 * j - k <= gp.amplitude(); ++j) {
      const int i = 2 * j - k;
      auto it = pt.find({i, d - 2 * j});
      if (it == pt.end()) continue;
      SubQ s = image(gp.ePower(d - 2 * j, -i, j), it->second);
      total += s.dim();
      stacked = vstack(stacked, s.basis());
      list.emplace_back(j, std::move(s));
    }
    if (total != gp.dim(d, k) || rank(stacked) != total) {
      out.direct = false;
      out.failures.push_back({k, d});
    }
  }
  return out;
}

namespace {

struct StringVector {
  int index;     // perverse index
  int order;     // insertion order, breaks ties
  int string;    // string id
  int level;     // a in e^a p
  int role;      // 0 = rational, 1 = x, 2 = y
};

}  // namespace

SplitModel buildSplitModel(const StringSpec& spec, const SplitModelOptions& options) {
  struct StringInstance {
    int length, degree;
    std::optional<Bidegree> type;
    bool typed;  // carries a non-Tate (x, y) pair
    int first;   // first vector order
  };
  std::vector<StringInstance> strings;
  std::map<int, std::vector<StringVector>> byDegree;
  int order = 0;
  for (const auto& entry : spec) {
    if (entry.length < 0 || entry.multiplicity < 1)
      throw InputError("string spec: length must be >= 0 and multiplicity >= 1");
    const bool typed = entry.hodgeType && entry.hodgeType->first != entry.hodgeType->second;
    if (entry.hodgeType && entry.hodgeType->first + entry.hodgeType->second != entry.degree)
      throw InputError("string spec: Hodge type of a string bottom must have p + q = d");
    if (typed && entry.multiplicity % 2 != 0)
      throw InputError("string spec: typed strings need even multiplicity");
    const int copies = typed ? entry.multiplicity / 2 : entry.multiplicity;
    for (int c = 0; c < copies; ++c) {
      const int id = static_cast<int>(strings.size());
      strings.push_back({entry.length, entry.degree, entry.hodgeType, typed, order});
      for (int a = 0; a <= entry.length; ++a) {
        const int deg = entry.degree + 2 * a;
        const int idx = -entry.length + 2 * a;
        if (typed) {
          byDegree[deg].push_back({idx, order++, id, a, 1});
          byDegree[deg].push_back({idx, order++, id, a, 2});
        } else {
          byDegree[deg].push_back({idx, order++, id, a, 0});
        }
      }
    }
  }

  SplitModel model;
  Instance& inst = model.instance;
  inst.center = options.center;
  // coordinate of (string, level, role)
  std::map<std::tuple<int, int, int>, std::pair<int, Index>> coord;
  for (auto& [deg, vecs] : byDegree) {
    std::sort(vecs.begin(), vecs.end(), [](const StringVector& a, const StringVector& b) {
      return std::tie(a.index, a.order) < std::tie(b.index, b.order);
    });
    inst.space.dims[deg] = static_cast<Index>(vecs.size());
    auto& labels = inst.space.labels[deg];
    auto& indices = model.perverseIndex[deg];
    for (std::size_t k = 0; k < vecs.size(); ++k) {
      const auto& v = vecs[k];
      coord[{v.string, v.level, v.role}] = {deg, static_cast<Index>(k)};
      std::string label = "s" + std::to_string(v.string);
      if (v.role == 1) label += "x";
      if (v.role == 2) label += "y";
      if (v.level > 0) label += ".e" + std::to_string(v.level);
      labels.push_back(std::move(label));
      indices.push_back(v.index);
    }
  }

  for (const auto& [deg, vecs] : byDegree) {
    const Index n = inst.space.dim(deg);
    auto unitRows = [&](auto pred) {
      MatQ rows(0, n);
      for (std::size_t k = 0; k < vecs.size(); ++k) {
        if (!pred(vecs[k])) continue;
        MatQ row = zeros<Rational>(1, n);
        row(0, static_cast<Index>(k)) = 1;
        rows = vstack(rows, row);
      }
      return SubQ::span(rows, n);
    };
    std::set<int> indices;
    for (const auto& v : vecs) indices.insert(v.index);
    for (int k : indices) {
      inst.filtration.set(deg, k, unitRows([k](const StringVector& v) { return v.index <= k; }));
      model.layers[{k, deg}] = unitRows([k](const StringVector& v) { return v.index == k; });
    }
    std::set<int> lengths;
    for (const auto& v : vecs)
      if (v.level == 0) lengths.insert(strings[static_cast<std::size_t>(v.string)].length);
    for (int len : lengths)
      model.bottoms[{len, deg}] = unitRows([&, len](const StringVector& v) {
        return v.level == 0 && strings[static_cast<std::size_t>(v.string)].length == len;
      });

    if (byDegree.count(deg + 2)) {
      MatQ block = zeros<Rational>(inst.space.dim(deg + 2), n);
      for (std::size_t k = 0; k < vecs.size(); ++k) {
        const auto& v = vecs[k];
        if (v.level == strings[static_cast<std::size_t>(v.string)].length) continue;
        const auto [tdeg, row] = coord.at({v.string, v.level + 1, v.role});
        block(row, static_cast<Index>(k)) = 1;
      }
      inst.eta.blocks[deg] = block;
    }
  }

  if (options.hodge != HodgeMode::none) {
    HodgeBigrading bigrading;
    for (const auto& [deg, vecs] : byDegree) {
      const Index n = inst.space.dim(deg);
      std::map<Bidegree, MatG> rows;
      auto add = [&](Bidegree pq, const VecG& v) {
        auto& m = rows.try_emplace(pq, MatG(0, n)).first->second;
        m = vstack(m, MatG(v.transpose()));
      };
      for (std::size_t k = 0; k < vecs.size(); ++k) {
        const auto& v = vecs[k];
        const auto& s = strings[static_cast<std::size_t>(v.string)];
        if (v.role == 2) continue;
        if (options.hodge == HodgeMode::tate && s.typed)
          throw InputError("string spec: typed strings require the typed Hodge mode");
        VecG x = VecG::Constant(n, GaussianRational(0));
        if (v.role == 0) {
          if (deg % 2 != 0)
            throw InputError("Hodge-Tate structure needs even degrees, got " + std::to_string(deg));
          x(static_cast<Index>(k)) = GaussianRational(1);
          add({deg / 2, deg / 2}, x);
        } else {
          const Index yk = coord.at({v.string, v.level, 2}).second;
          const int p = s.type->first + v.level;
          const int q = s.type->second + v.level;
          VecG y = x;
          x(static_cast<Index>(k)) = GaussianRational(1);
          x(yk) = GaussianRational(0, 1);
          y(static_cast<Index>(k)) = GaussianRational(1);
          y(yk) = GaussianRational(0, -1);
          add({p, q}, x);
          add({q, p}, y);
        }
      }
      HodgeStructure hs{deg, n, {}};
      for (auto& [pq, m] : rows) hs.pieces[pq] = SubG::span(m, n);
      bigrading[deg] = std::move(hs);
    }
    inst.hodge = std::move(bigrading);
  }

  if (options.pairing) {
    const int n = options.center;
    const Index total = inst.space.totalDim();
    MatQ q = zeros<Rational>(total, total);
    auto global = [&](int string, int level, int role) {
      const auto [deg, k] = coord.at({string, level, role});
      return inst.space.offset(deg) + k;
    };
    auto mirrorType = [&](const StringInstance& s) -> std::optional<Bidegree> {
      if (!s.type) return std::nullopt;
      return Bidegree{n - s.type->second - s.length, n - s.type->first - s.length};
    };
    std::vector<bool> used(strings.size(), false);
    for (std::size_t a = 0; a < strings.size(); ++a) {
      if (used[a]) continue;
      const auto& s = strings[a];
      const int mirrorDegree = 2 * n - s.degree - 2 * s.length;
      std::optional<std::size_t> partner;
      if (mirrorDegree == s.degree) {
        partner = a;
      } else {
        for (std::size_t b = a + 1; b < strings.size(); ++b) {
          const auto& t = strings[b];
          if (!used[b] && t.length == s.length && t.degree == mirrorDegree &&
              t.typed == s.typed && (!s.typed || t.type == mirrorType(s))) {
            partner = b;
            break;
          }
        }
      }
      if (!partner)
        throw InputError("pairing: string (i=" + std::to_string(s.length) + ", d=" +
                         std::to_string(s.degree) + ") has no mirror string");
      used[a] = used[*partner] = true;
      const std::vector<int> roles = s.typed ? std::vector<int>{1, 2} : std::vector<int>{0};
      for (int role : roles)
        for (int lvl = 0; lvl <= s.length; ++lvl) {
          const Index x = global(static_cast<int>(a), lvl, role);
          const Index y = global(static_cast<int>(*partner), s.length - lvl, role);
          q(x, y) = 1;
          q(y, x) = 1;
        }
    }
    IntersectionPairing pairing{n, {}};
    for (int d : inst.space.degrees()) {
      const int dual = 2 * n - d;
      if (inst.space.dim(dual) == 0) continue;
      pairing.blocks[d] =
          q.block(inst.space.offset(d), inst.space.offset(dual), inst.space.dim(d), inst.space.dim(dual));
    }
    inst.pairing = std::move(pairing);
  }
  return model;
}

Twist twistModel(const Instance& inst, std::uint64_t seed, int bound) {
  const GradedPieces gp(inst.space, inst.filtration, inst.eta);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::map<int, MatQ> u;
  for (int d : inst.space.degrees()) {
    const Index n = inst.space.dim(d);
    MatQ basis(n, n);
    std::vector<int> index;
    Index col = 0;
    for (const auto& [deg, i] : gp.slots()) {
      if (deg != d) continue;
      const MatQ& lifts = gp.piece(d, i)->quotient.lifts;
      for (Index r = 0; r < lifts.rows(); ++r) {
        basis.col(col++) = lifts.row(r).transpose();
        index.push_back(i);
      }
    }
    MatQ unipotent = identity<Rational>(n);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c)
        if (index[static_cast<std::size_t>(r)] < index[static_cast<std::size_t>(c)])
          unipotent(r, c) = dist(rng);
    u[d] = basis * unipotent * *inverse(basis);
  }
  return {transport(inst, u), std::move(u)};
}

}  // namespace lefsplit
