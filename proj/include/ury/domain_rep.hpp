#pragma once

#include <vector>

#include "ury/eff_space.hpp"
#include "ury/urysohn.hpp"

namespace ury {

// Closed ball around dense point `center` (an index) with rational radius.
struct Ball {
  int center;
  Rat radius;
};

// Finite consistent set of closed balls: every pair satisfies
// p + q >= d(a_n, a_m).
struct Cluster {
  std::vector<Ball> balls;
};

// Finite stage of an ideal: a chain increasing in the cluster preorder.
struct IdealApprox {
  std::vector<Cluster> chain;
};

enum class TriState { Yes, No, Unknown };

// Pairwise consistency, exactly decided. Requires an exact oracle.
bool cluster_valid(const EffSpace& x, const Cluster& k);
// Certified-at-precision variant for inexact oracles.
TriState cluster_valid_at(const EffSpace& x, const Cluster& k, int p);

// Preorder: every ball of K has a witness ball of L with s + d(a_n, a_m) <= r.
bool cluster_leq(const EffSpace& x, const Cluster& k, const Cluster& l);

// Alternative validity for clusters over the builder's space: nonempty
// intersection witnessed by a realized point.
bool cluster_valid_by_witness(UrysohnBuilder& b, const Cluster& k);

bool ideal_approx_valid(const EffSpace& x, const IdealApprox& i);

// Stage k of the least ideal of x: among balls with center index <= k and
// radius p/q, p,q <= 2k, those whose strict interior membership is certified
// at precision 2^-(k+2), combined into all clusters of size <= k. Grows
// monotonically with k toward the least ideal. Intended for small k; the
// cluster count is exponential in the certified ball count.
std::vector<Cluster> least_ideal_clusters(const EffSpace& x, const SpacePoint& pt, int k);

// Canonical chain of singleton least-ideal clusters on the radius schedule
// 2^-(n+1), suitable as input to delta_extract.
std::vector<Cluster> least_ideal_chain(const EffSpace& x, const SpacePoint& pt, int depth);

// Tri-state representation predicate at certification precision p:
// Yes if all memberships are certified and some cluster has all radii < eps,
// No if some membership is refuted, Unknown otherwise.
TriState ideal_represents(const EffSpace& x, const IdealApprox& i, const SpacePoint& pt,
                          const Rat& eps, int p);

// Point extraction: stage n of the chain must have all radii <= 2^-(n+1);
// the extracted point reads the first center of each stage.
SpacePoint delta_extract(const EffSpace& x, const std::vector<Cluster>& chain);

}  // namespace ury
