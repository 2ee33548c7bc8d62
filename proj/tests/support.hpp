#pragma once

// Test-side helpers and oracles. Nothing here calls into the algorithms under
// test except the basic subspace primitives, which have their own tests.

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lefsplit/corpus.hpp"
#include "lefsplit/graded.hpp"
#include "lefsplit/instance.hpp"
#include "lefsplit/linalg.hpp"
#include "lefsplit/subspace.hpp"

namespace lefsplit::test {

inline Rational frac(long a, long b) { return Rational(a) / Rational(b); }

inline MatQ mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  MatQ m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline VecQ vec(std::initializer_list<Rational> xs) {
  VecQ v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline SubQ spanOf(std::initializer_list<VecQ> vs, Index ambient) {
  MatQ rows(static_cast<Index>(vs.size()), ambient);
  Index i = 0;
  for (const auto& v : vs) rows.row(i++) = v.transpose();
  return SubQ::span(rows, ambient);
}

inline MatQ randomMatrix(std::mt19937_64& rng, Index rows, Index cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  MatQ m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

/// Random subspace of Q^n spanned by `k` random integer vectors.
inline SubQ randomSubspace(std::mt19937_64& rng, Index n, Index k) {
  return SubQ::span(randomMatrix(rng, k, n, -2, 2), n);
}

// ---- textbook elimination, independent of the library's echelon code ----

inline int naiveRank(std::vector<std::vector<Rational>> a) {
  int rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
    const auto& p = a[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / p[c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * p[k];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<Rational>> toRows(const MatQ& m) {
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(m.rows()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r)].push_back(m(r, c));
  return out;
}

// ---- quadric cone cup products, written out by hand ----

/// D^3 = 2, D^2 D1 = D^2 D2 = -1, D D1 D2 = 1, all other monomials vanish.
/// Indices: 0 = D, 1 = D1, 2 = D2.
inline Rational cup(int a, int b, int c) {
  std::array<int, 3> s{a, b, c};
  std::sort(s.begin(), s.end());
  if (s == std::array<int, 3>{0, 0, 0}) return 2;
  if (s == std::array<int, 3>{0, 0, 1}) return -1;
  if (s == std::array<int, 3>{0, 0, 2}) return -1;
  if (s == std::array<int, 3>{0, 1, 2}) return 1;
  return 0;
}

inline Rational cup(const VecQ& x, const VecQ& y, const VecQ& z) {
  Rational s = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) s += x(a) * y(b) * z(c) * cup(a, b, c);
  return s;
}

/// Degree-4 class `b` in the (D D1, D D2, D1 D2) basis paired with a degree-2 class.
inline Rational cupH4(const VecQ& a, const VecQ& b) {
  static const std::array<std::pair<int, int>, 3> basis{{{0, 1}, {0, 2}, {1, 2}}};
  Rational s = 0;
  for (int k = 0; k < 3; ++k)
    for (int x = 0; x < 3; ++x)
      s += a(x) * b(k) * cup(x, basis[static_cast<std::size_t>(k)].first,
                             basis[static_cast<std::size_t>(k)].second);
  return s;
}

inline VecQ unit(Index n, Index k) {
  VecQ v = VecQ::Constant(n, Rational(0));
  v(k) = 1;
  return v;
}

/// eta = m D1 + D2 in the (D, D1, D2) basis.
inline VecQ quadricEta(const Rational& m) { return vec({0, m, 1}); }

// ---- weight filtration axioms over Q ----

using Jumps = std::map<int, SubQ>;

inline SubQ stepAt(const Jumps& w, int i, Index n) {
  auto it = w.upper_bound(i);
  if (it == w.begin()) return SubQ::zero(n);
  return std::prev(it)->second;
}

/// Empty string when both axioms hold and the filtration is exhaustive.
inline std::string weightAxiomOracle(const MatQ& nmat, const Jumps& w, int center) {
  const Index n = nmat.rows();
  const int span = static_cast<int>(n) + 1;
  if (!stepAt(w, center - span, n).isZero()) return "not zero at the bottom";
  if (!stepAt(w, center + span, n).isFull()) return "not exhaustive";
  for (int i = center - span; i <= center + span; ++i)
    if (!contains(stepAt(w, i - 2, n), image(nmat, stepAt(w, i, n))))
      return "N W_" + std::to_string(i) + " not in W_" + std::to_string(i - 2);
  MatQ power = identity<Rational>(n);
  for (int j = 1; j <= span; ++j) {
    power = power * nmat;
    const SubQ top = stepAt(w, center + j, n);
    const SubQ topLow = stepAt(w, center + j - 1, n);
    const SubQ bot = stepAt(w, center - j, n);
    const SubQ botLow = stepAt(w, center - j - 1, n);
    if (top.dim() - topLow.dim() != bot.dim() - botLow.dim())
      return "Gr dims differ at +-" + std::to_string(j);
    if (!contains(topLow, intersect(top, preimage(power, botLow))))
      return "N^" + std::to_string(j) + " not injective on Gr";
    if (!contains(bot, image(power, top))) return "N^j W_(c+j) not in W_(c-j)";
  }
  return {};
}

// ---- exhaustive weight filtration search over F_p, for n <= 3 ----

template <int P, int N>
class FiniteFieldSearch {
 public:
  static constexpr int kVectors = [] {
    int v = 1;
    for (int k = 0; k < N; ++k) v *= P;
    return v;
  }();
  using Set = std::bitset<kVectors>;

  FiniteFieldSearch() {
    std::set<std::string> seen;
    auto add = [&](const Set& s) {
      if (seen.insert(s.to_string()).second) subspaces_.push_back(s);
    };
    Set zero;
    zero.set(0);
    add(zero);
    for (int a = 0; a < kVectors; ++a)
      for (int b = a; b < kVectors; ++b) {
        Set s;
        for (int x = 0; x < P; ++x)
          for (int y = 0; y < P; ++y) s.set(combine(x, a, y, b));
        add(s);
      }
    Set full;
    full.set();
    add(full);
  }

  const std::vector<Set>& subspaces() const { return subspaces_; }

  static std::array<int, N> digits(int v) {
    std::array<int, N> d{};
    for (int k = 0; k < N; ++k) {
      d[static_cast<std::size_t>(k)] = v % P;
      v /= P;
    }
    return d;
  }
  static int encode(const std::array<int, N>& d) {
    int v = 0;
    for (int k = N - 1; k >= 0; --k) v = v * P + ((d[static_cast<std::size_t>(k)] % P) + P) % P;
    return v;
  }
  static int combine(int x, int a, int y, int b) {
    auto da = digits(a), db = digits(b);
    std::array<int, N> out{};
    for (int k = 0; k < N; ++k)
      out[static_cast<std::size_t>(k)] =
          (x * da[static_cast<std::size_t>(k)] + y * db[static_cast<std::size_t>(k)]) % P;
    return encode(out);
  }

  static int dim(const Set& s) {
    int count = static_cast<int>(s.count()), d = 0;
    while (count > 1) {
      count /= P;
      ++d;
    }
    return d;
  }

  /// Action table of an integer matrix on F_p^N.
  static std::vector<int> table(const std::array<std::array<int, N>, N>& m) {
    std::vector<int> t(kVectors);
    for (int v = 0; v < kVectors; ++v) {
      auto d = digits(v);
      std::array<int, N> out{};
      for (int r = 0; r < N; ++r) {
        int s = 0;
        for (int c = 0; c < N; ++c)
          s += m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
               d[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = s;
      }
      t[static_cast<std::size_t>(v)] = encode(out);
    }
    return t;
  }

  static Set apply(const std::vector<int>& t, const Set& s) {
    Set out;
    for (int v = 0; v < kVectors; ++v)
      if (s.test(static_cast<std::size_t>(v))) out.set(static_cast<std::size_t>(t[static_cast<std::size_t>(v)]));
    return out;
  }

  static bool subset(const Set& a, const Set& b) { return (a & ~b).none(); }

  /// All chains W_(-N) <= ... <= W_(N-1) (W below -N is 0, W_N = V) with
  /// N W_i in W_(i-2) and N^j : Gr_j -> Gr_(-j) bijective, center 0.
  std::vector<std::vector<Set>> search(const std::array<std::array<int, N>, N>& m) const {
    const std::vector<int> t1 = table(m);
    std::vector<std::vector<int>> powers{t1};
    for (int j = 1; j < N; ++j) {
      std::vector<int> next(kVectors);
      for (int v = 0; v < kVectors; ++v)
        next[static_cast<std::size_t>(v)] = t1[static_cast<std::size_t>(powers.back()[static_cast<std::size_t>(v)])];
      powers.push_back(std::move(next));
    }
    std::vector<Set> images(subspaces_.size());
    for (std::size_t k = 0; k < subspaces_.size(); ++k) images[k] = apply(t1, subspaces_[k]);

    Set zero;
    zero.set(0);
    Set full;
    full.set();
    std::vector<std::vector<Set>> found;
    std::vector<Set> chain;  // W_(-N..N-1)
    const int steps = 2 * N;
    // W(i) for i in [-N-2, N+1]
    auto W = [&](int i) -> Set {
      if (i < -N) return zero;
      if (i >= N) return full;
      return chain[static_cast<std::size_t>(i + N)];
    };
    std::function<void()> rec = [&] {
      const int i = static_cast<int>(chain.size()) - N;  // next index to choose
      if (static_cast<int>(chain.size()) == steps) {
        if (!subset(apply(t1, full), W(N - 2))) return;
        if (!subset(apply(t1, W(N - 1)), W(N - 3))) return;
        for (int j = 1; j <= N; ++j) {
          const Set& tj = W(j), &tl = W(j - 1), &bj = W(-j), &bl = W(-j - 1);
          if (dim(tj) - dim(tl) != dim(bj) - dim(bl)) return;
          const auto& pw = powers[static_cast<std::size_t>(j - 1)];
          for (int v = 0; v < kVectors; ++v) {
            if (!tj.test(static_cast<std::size_t>(v))) continue;
            const auto w = static_cast<std::size_t>(pw[static_cast<std::size_t>(v)]);
            if (!bj.test(w)) return;
            if (bl.test(w) && !tl.test(static_cast<std::size_t>(v))) return;
          }
        }
        found.push_back(chain);
        return;
      }
      const Set lower = chain.empty() ? zero : chain.back();
      for (std::size_t k = 0; k < subspaces_.size(); ++k) {
        const Set& s = subspaces_[k];
        if (!subset(lower, s)) continue;
        // N W_(i) inside W_(i-2), where W_(i-2) is already chosen (or zero).
        if (!subset(images[k], W(i - 2))) continue;
        chain.push_back(s);
        rec();
        chain.pop_back();
      }
    };
    rec();
    return found;
  }

  /// Reduction mod P of a rational subspace of Q^N; nullopt if a denominator
  /// is divisible by P.
  static std::optional<Set> reduce(const SubQ& s) {
    Set out;
    out.set(0);
    std::vector<int> gens;
    for (Index r = 0; r < s.dim(); ++r) {
      std::array<int, N> d{};
      for (int c = 0; c < N; ++c) {
        const Rational& x = s.basis()(r, c);
        const long num = static_cast<long>(boost::multiprecision::numerator(x).convert_to<long long>());
        const long den = static_cast<long>(boost::multiprecision::denominator(x).convert_to<long long>());
        if (den % P == 0) return std::nullopt;
        long inv = 1;
        for (int k = 0; k < P - 2; ++k) inv = inv * (((den % P) + P) % P) % P;
        d[static_cast<std::size_t>(c)] = static_cast<int>((((num % P) + P) % P) * inv % P);
      }
      gens.push_back(encode(d));
    }
    for (int g : gens) {
      Set next = out;
      for (int v = 0; v < kVectors; ++v)
        if (out.test(static_cast<std::size_t>(v)))
          for (int x = 1; x < P; ++x) next.set(static_cast<std::size_t>(combine(1, v, x, g)));
      out = next;
    }
    return out;
  }

 private:
  std::vector<Set> subspaces_;
};

// ---- nilpotent matrices over {-1, 0, 1} ----

inline bool nilpotentInt(const std::vector<int>& m, int n) {
  std::vector<long> p(m.begin(), m.end());
  for (int k = 1; k < n; ++k) {
    std::vector<long> q(static_cast<std::size_t>(n * n), 0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        for (int t = 0; t < n; ++t)
          q[static_cast<std::size_t>(r * n + c)] +=
              p[static_cast<std::size_t>(r * n + t)] * m[static_cast<std::size_t>(t * n + c)];
    p = std::move(q);
  }
  return std::all_of(p.begin(), p.end(), [](long x) { return x == 0; });
}

/// Lexicographically least conjugate under signed permutation matrices.
inline std::vector<int> signedPermutationCanonical(const std::vector<int>& m, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k;
  std::vector<int> best = m;
  do {
    for (int signs = 0; signs < (1 << n); ++signs) {
      std::vector<int> c(m.size());
      for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) {
          const int sr = (signs >> r) & 1 ? -1 : 1;
          const int sc = (signs >> col) & 1 ? -1 : 1;
          c[static_cast<std::size_t>(r * n + col)] =
              sr * sc * m[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)] * n + perm[static_cast<std::size_t>(col)])];
        }
      best = std::min(best, c);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline MatQ toMatQ(const std::vector<int>& m, int n) {
  MatQ out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = m[static_cast<std::size_t>(r * n + c)];
  return out;
}

/// All nilpotent n x n matrices over {-1,0,1} up to signed-permutation conjugacy.
inline std::vector<std::vector<int>> allNilpotent(int n) {
  std::set<std::vector<int>> out;
  const int cells = n * n;
  long total = 1;
  for (int k = 0; k < cells; ++k) total *= 3;
  std::vector<int> m(static_cast<std::size_t>(cells));
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int k = 0; k < cells; ++k) {
      m[static_cast<std::size_t>(k)] = static_cast<int>(c % 3) - 1;
      c /= 3;
    }
    if (nilpotentInt(m, n)) out.insert(signedPermutationCanonical(m, n));
  }
  return {out.begin(), out.end()};
}

/// Distinct nilpotent n x n matrices over {-1,0,1}, deduplicated up to
/// signed-permutation conjugacy. Draws alternate between plain rejection
/// sampling and strictly upper triangular matrices conjugated by a random
/// permutation (which stay in {-1,0,1}).
inline std::vector<std::vector<int>> sampleNilpotent(int n, std::size_t want, std::uint64_t seed,
                                                     long maxTries = 2000000) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-1, 1);
  std::set<std::vector<int>> out;
  std::vector<int> m(static_cast<std::size_t>(n * n));
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (long t = 0; t < maxTries && out.size() < want; ++t) {
    if (t % 2 == 0) {
      for (auto& x : m) x = entry(rng);
      if (!nilpotentInt(m, n)) continue;
    } else {
      for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k;
      std::shuffle(perm.begin(), perm.end(), rng);
      std::fill(m.begin(), m.end(), 0);
      for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c)
          m[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)] * n + perm[static_cast<std::size_t>(c)])] = entry(rng);
    }
    out.insert(signedPermutationCanonical(m, n));
  }
  return {out.begin(), out.end()};
}

}  // namespace lefsplit::test
