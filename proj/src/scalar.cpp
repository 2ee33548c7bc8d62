#include "lefsplit/scalar.hpp"

#include <stdexcept>

namespace lefsplit {

std::string toString(const Rational& x) {
  const Integer num = numerator(x);
  const Integer den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string toString(const GaussianRational& z) {
  if (z.im == 0) return toString(z.re);
  std::string out = z.re == 0 ? std::string() : toString(z.re) + (z.im > 0 ? "+" : "");
  if (z.im == 1) return out + "i";
  if (z.im == -1) return out + "-i";
  return out + toString(z.im) + "i";
}

namespace {

bool isDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parseRational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view numText = body.substr(0, slash);
  const std::string_view denText =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!isDigits(numText) || !isDigits(denText))
    throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
  const Integer num{std::string(numText)};
  const Integer den{std::string(denText)};
  if (den == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
  Rational value(num, den);  // normalized by GMP
  return negative ? Rational(-value) : value;
}

GaussianRational parseGaussian(std::string_view text) {
  if (text.empty() || text.back() != 'i') return GaussianRational(parseRational(text));
  std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  const std::string_view reText = split == std::string_view::npos ? std::string_view() : body.substr(0, split);
  std::string_view imText = split == std::string_view::npos ? body : body.substr(split);
  if (!imText.empty() && imText.front() == '+') imText.remove_prefix(1);
  Rational im;
  if (imText.empty()) {
    im = 1;
  } else if (imText == "-") {
    im = -1;
  } else {
    im = parseRational(imText);
  }
  const Rational re = reText.empty() ? Rational(0) : parseRational(reText);
  if (im == 0) throw std::invalid_argument("malformed Gaussian rational \"" + std::string(text) + "\"");
  return GaussianRational(re, im);
}

}  // namespace lefsplit
