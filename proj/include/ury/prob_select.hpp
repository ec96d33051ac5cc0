#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ury/eff_space.hpp"
#include "ury/urysohn.hpp"

namespace ury {

// Finite probability distribution over positions 0..k-1. Masses are exact
// rationals summing to exactly 1.
struct Dist {
  std::vector<Rat> mass;

  std::vector<int> support() const;
  // Exact inverse CDF over the enumeration order; u in [0,1).
  int sample(const Rat& u) const;
  void check() const;  // throws unless masses are >= 0 and sum to 1
};

// Exact uniform draw in [0,1) with denominator 2^64.
Rat uniform_unit(std::mt19937_64& rng);

// One stage <A_n, nu_n, mu_n> of the probabilistic selection on a metric
// space: A_n is the first n+1 dense points, delta_n the minimum of 2^-n and
// all pairwise carrier distances, and mu_n(x) the truncated-subtraction
// distribution over distances evaluated at the shared precision n+4 and
// renormalized exactly.
struct SelectionLevel {
  EffSpacePtr space;
  int n = 0;
  std::vector<int> carrier;  // dense indices
  Rat delta;
  int eval_precision = 0;

  int size() const { return static_cast<int>(carrier.size()); }
  Dist mu(const SpacePoint& x) const;
  // Exact evaluation for spaces with coordinate values (distances exact).
  Dist mu_coords(const std::vector<Rat>& x) const;
  Dist mu_from_dists(const std::vector<Rat>& dists) const;
};

SelectionLevel metric_selection_level(EffSpacePtr x, int n);

// Exact convex combination in a coordinate space (Remark-style Banach case).
struct BanachSemiconvex {
  std::vector<std::vector<Rat>> vectors;  // nu(a_i)
  std::vector<Rat> combine(const Dist& m) const;
};

BanachSemiconvex banach_semiconvex(const std::vector<std::vector<Rat>>& nu);

// Semiconvex combination in U: coordinates via the max-norm distance map
// v -> (d(v, v_1), ..., d(v, v_k)), exact convex combination there, then a
// realized point at the exact max-norm distances. Realizations are cached
// per mass vector so combine is a function.
class UrysohnSemiconvex {
 public:
  UrysohnSemiconvex(UrysohnBuilder& b, std::vector<int> points);

  UPoint combine(const Dist& m);
  const std::vector<int>& points() const { return points_; }

 private:
  UrysohnBuilder* b_;
  std::vector<int> points_;
  std::map<std::string, int> cache_;
};

struct HarnessRow {
  int n;
  int trial;
  int picked;        // carrier position sampled from mu_n(x_n)
  Rat sample_dist;   // measured d(nu(picked), x)
  Rat envelope;      // measured d(x_n, A_n) + delta_n + d(x_n, x) + slack
  bool inside;
};

struct HarnessReport {
  std::vector<HarnessRow> rows;
  bool all_inside = true;
};

// Samples a ~ mu_n(x_n) for n = 0..max_level and checks each recorded
// distance d(nu(a), x) against the theoretical envelope. All measured
// quantities are evaluated at the level's shared precision; the envelope
// carries a 2^-(p-3) measurement slack.
HarnessReport convergence_harness(const EffSpacePtr& x_space, int max_level, const SpacePoint& x,
                                  const std::function<SpacePoint(int)>& moving, int trials,
                                  std::uint64_t seed);

struct EnvelopeRow {
  int n;
  Rat envelope;
};

// The envelope d(x_n, A_n) + delta_n + d(x_n, x) alone, evaluated from the
// scalar values of a 1-D space. This reaches depths where the index-stream
// machinery cannot (the dense index of x_n grows with the precision), e.g.
// n = 64 on the canonical enumeration of Q. Value streams are queried at the
// level's precision n+4; the returned bound is conservative by the stream
// slack.
std::vector<EnvelopeRow> envelope_schedule(const EffSpacePtr& x_space, int max_level,
                                           const FastCauchy& x,
                                           const std::function<FastCauchy(int)>& moving);

}  // namespace ury
