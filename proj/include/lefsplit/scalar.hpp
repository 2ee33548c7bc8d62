#pragma once

// Exact scalar fields: the rationals and the Gaussian rationals Q(i).
// Both are usable as Eigen scalar types.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <ostream>
#include <string>
#include <string_view>

namespace lefsplit {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Element re + i*im of the field T(i).
template <class T>
struct Gaussian {
  T re{};
  T im{};

  Gaussian() = default;
  Gaussian(int r) : re(r) {}  // NOLINT: implicit, needed by Eigen
  Gaussian(T r) : re(std::move(r)) {}  // NOLINT
  Gaussian(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    const T n = o.re * o.re + o.im * o.im;
    T r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = std::move(r);
    return *this;
  }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

using GaussianRational = Gaussian<Rational>;

inline Rational conj(const Rational& x) { return x; }
template <class T>
Gaussian<T> conj(const Gaussian<T>& z) {
  return {z.re, -z.im};
}

inline bool isReal(const Rational&) { return true; }
template <class T>
bool isReal(const Gaussian<T>& z) {
  return z.im == 0;
}

/// Canonical text form: "a/b", or "a" when the denominator is 1.
std::string toString(const Rational& x);
std::string toString(const GaussianRational& z);

/// Parses "a" or "a/b" with optional leading '-'; rejects b == 0.
/// Throws std::invalid_argument on malformed input.
Rational parseRational(std::string_view text);
/// Parses the output of toString(GaussianRational): "a", "bi", "a+bi", "a-i", ...
GaussianRational parseGaussian(std::string_view text);

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  return os << toString(z);
}

}  // namespace lefsplit

namespace Eigen {

template <class T>
struct NumTraits<lefsplit::Gaussian<T>> : GenericNumTraits<lefsplit::Gaussian<T>> {
  using Real = lefsplit::Gaussian<T>;
  using NonInteger = lefsplit::Gaussian<T>;
  using Literal = lefsplit::Gaussian<T>;
  using Nested = lefsplit::Gaussian<T>;
  enum {
    IsComplex = 0,  // conjugation is handled explicitly, never through Eigen
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
