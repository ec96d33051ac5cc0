#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ury/fast_cauchy.hpp"
#include "ury/fin_metric.hpp"
#include "ury/rational.hpp"

namespace ury {

class UrysohnBuilder;

// Effective metric space: a dense enumeration {r_i} with a distance oracle
// (i, j, p) -> Rat correct within 2^-p. Built-ins carry exact oracles.
struct EffSpace {
  std::string name;
  std::function<Rat(int, int, int)> dist;
  bool exact = true;
  std::optional<int> dense_size;               // set for finite dense sets
  std::function<std::string(int)> label;
  std::function<Rat(int)> value;               // scalar value of r_i, 1-D spaces only
  std::function<int(const Rat&)> index_of;     // inverse of value where available
  std::function<std::vector<Rat>(int)> coords; // coordinates of r_i, normed spaces only
  bool convex_combinable = false;              // exact convex combinations stay in the space
};

using EffSpacePtr = std::shared_ptr<const EffSpace>;

// A point of the completion of an effective space, as a fast-converging
// stream of dense-set indices: d(r_{index_at(n)}, x) <= 2^-n.
struct SpacePoint {
  std::function<int(int)> index_at;
  std::string space_tag;

  int at(int n) const { return index_at(n); }
};

// Canonical enumeration of Q: 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, ...
// ordered by height max(|p|, q), positives before their negatives.
const Rat& rational_at(int i);
int index_of_rational(const Rat& v);

// Minimal-denominator rational in the closed interval [lo, hi]. Returns the
// interval's representative of least height; in particular it returns x
// itself whenever x lies in the interval and every other rational of height
// <= height(x) does not.
Rat simplest_rational_in(const Rat& lo, const Rat& hi);

// kinds: real-line | unit-interval | maxnorm-rd | finite | rational-points
EffSpacePtr builtin_space(const std::string& kind, int dim = 1);
EffSpacePtr builtin_finite(const FinMetric& m);
EffSpacePtr builtin_rational_points(const std::vector<Rat>& pts);
// Real line whose dense enumeration starts with the given prefix and then
// continues with the canonical enumeration of Q (duplicates skipped).
EffSpacePtr builtin_real_line_prefixed(const std::vector<Rat>& prefix);

// Live view of a builder's rational space as an effective space. The view
// reads the builder on every query; the builder must outlive it.
EffSpacePtr eff_from_builder(const UrysohnBuilder& b);

// d(x, r_j) within 2^-p.
Rat point_dense_dist(const EffSpace& x, const SpacePoint& pt, int j, int p);

// Constant point sitting on dense element i.
SpacePoint dense_point(const EffSpace& x, int i);

// Point of the real line (or any 1-D space with a value map) from a
// rational-valued stream.
SpacePoint point_from_stream(const EffSpacePtr& x, const FastCauchy& stream);

}  // namespace ury
