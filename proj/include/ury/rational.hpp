#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace ury {

// Exact rational number. Always in lowest terms with positive denominator;
// every operation in this project is exact, nothing is ever rounded.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Truncated subtraction on non-negative rationals: max(u - v, 0).
inline Rat rat_monus(const Rat& u, const Rat& v) {
  if (u < 0 || v < 0) {
    throw std::invalid_argument("rat_monus: negative input");
  }
  return u > v ? Rat(u - v) : Rat(0);
}

// 2^(-n) for n >= 0.
inline Rat pow2_neg(int n) {
  if (n < 0) throw std::invalid_argument("pow2_neg: negative exponent");
  Int den = Int(1) << n;
  return Rat(1, den);
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Serialized form used in all JSON documents: "p/q" (or just "p" when q = 1).
inline std::string rat_str(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q <= 0) throw std::invalid_argument("non-positive denominator");
    return Rat(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rat: bad rational literal '" + s + "'");
  }
}

}  // namespace ury
