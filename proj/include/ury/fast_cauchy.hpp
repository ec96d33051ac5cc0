#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "ury/rational.hpp"

namespace ury {

// A point of a complete space given as a precision-indexed stream of rational
// approximants: |approx(n) - x| <= 2^-n for the represented point x.
// Evaluation must be pure (same n always yields the same Rat).
struct FastCauchy {
  std::function<Rat(int)> approx;
  std::string space_tag;

  Rat at(int n) const {
    if (n < 0) throw std::invalid_argument("FastCauchy: negative precision");
    return approx(n);
  }
};

inline FastCauchy fc_const(const Rat& q, std::string tag = "Q") {
  return FastCauchy{[q](int) { return q; }, std::move(tag)};
}

// Pairwise test of the fast-convergence contract:
// |approx(n) - approx(m)| <= 2^-n + 2^-m.
inline bool fc_consistency_check(const FastCauchy& x, int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("fc_consistency_check: negative index");
  return rat_abs(x.at(n) - x.at(m)) <= pow2_neg(n) + pow2_neg(m);
}

// Distance between rational approximants, correct within 2^-p.
using DistOracle = std::function<Rat(const Rat&, const Rat&, int)>;

// Distance between two represented points, within 2^-n of the true value.
// Queries the approximants and the oracle at precision n+2, leaving one
// 2^-(n+2) of budget for each of the two approximant hops.
inline Rat fc_dist(const FastCauchy& x, const FastCauchy& y, const DistOracle& oracle, int n) {
  if (x.space_tag != y.space_tag) {
    throw std::invalid_argument("fc_dist: mismatched space tags '" + x.space_tag + "' vs '" +
                                y.space_tag + "'");
  }
  int p = n + 2;
  return oracle(x.at(p), y.at(p), p);
}

}  // namespace ury
