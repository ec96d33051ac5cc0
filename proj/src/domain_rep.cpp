#include "ury/domain_rep.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace ury {

namespace {

void require_positive_radii(const Cluster& k) {
  for (const auto& b : k.balls)
    if (b.radius <= 0) throw std::invalid_argument("cluster: non-positive radius");
}

}  // namespace

bool cluster_valid(const EffSpace& x, const Cluster& k) {
  if (!x.exact) throw std::invalid_argument("cluster_valid: decision mode needs an exact oracle");
  require_positive_radii(k);
  for (size_t i = 0; i < k.balls.size(); ++i)
    for (size_t j = i + 1; j < k.balls.size(); ++j)
      if (k.balls[i].radius + k.balls[j].radius < x.dist(k.balls[i].center, k.balls[j].center, 0))
        return false;
  return true;
}

TriState cluster_valid_at(const EffSpace& x, const Cluster& k, int p) {
  require_positive_radii(k);
  Rat err = pow2_neg(p);
  bool certain = true;
  for (size_t i = 0; i < k.balls.size(); ++i)
    for (size_t j = i + 1; j < k.balls.size(); ++j) {
      Rat sum = k.balls[i].radius + k.balls[j].radius;
      Rat d = x.dist(k.balls[i].center, k.balls[j].center, p);
      if (d - err > sum) return TriState::No;
      if (d + err > sum) certain = false;
    }
  return certain ? TriState::Yes : TriState::Unknown;
}

bool cluster_leq(const EffSpace& x, const Cluster& k, const Cluster& l) {
  if (!x.exact) throw std::invalid_argument("cluster_leq: decision mode needs an exact oracle");
  for (const auto& bk : k.balls) {
    bool witnessed = false;
    for (const auto& bl : l.balls) {
      if (bl.radius + x.dist(bk.center, bl.center, 0) <= bk.radius) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) return false;
  }
  return true;
}

bool cluster_valid_by_witness(UrysohnBuilder& b, const Cluster& k) {
  std::vector<std::pair<UPoint, Rat>> balls;
  for (const auto& ball : k.balls) balls.push_back({UPoint{ball.center}, ball.radius});
  if (!b.balls_intersect(balls)) return false;
  b.witness_intersection(balls);
  return true;
}

bool ideal_approx_valid(const EffSpace& x, const IdealApprox& i) {
  for (const auto& k : i.chain)
    if (!cluster_valid(x, k)) return false;
  for (size_t s = 1; s < i.chain.size(); ++s)
    if (!cluster_leq(x, i.chain[s - 1], i.chain[s])) return false;
  return true;
}

std::vector<Cluster> least_ideal_clusters(const EffSpace& x, const SpacePoint& pt, int k) {
  if (k < 0) throw std::invalid_argument("least_ideal_clusters: negative stage");
  Rat margin = pow2_neg(k + 2);
  int centers = x.dense_size ? std::min(*x.dense_size, k + 1) : k + 1;
  std::vector<Ball> certified;
  for (int c = 0; c < centers; ++c) {
    Rat dhat = point_dense_dist(x, pt, c, k + 2);
    for (int p = 1; p <= 2 * k; ++p)
      for (int q = 1; q <= 2 * k; ++q) {
        if (std::gcd(p, q) != 1) continue;
        Rat r(p, q);
        if (dhat < r - margin) certified.push_back({c, r});
      }
  }
  // All subsets of size <= k whose pairs are consistent.
  std::vector<Cluster> out;
  std::vector<Ball> cur;
  std::function<void(size_t)> rec = [&](size_t from) {
    if (!cur.empty()) out.push_back(Cluster{cur});
    if (static_cast<int>(cur.size()) >= k) return;
    for (size_t i = from; i < certified.size(); ++i) {
      bool ok = true;
      for (const auto& b : cur)
        if (b.radius + certified[i].radius < x.dist(b.center, certified[i].center, 0)) ok = false;
      if (!ok) continue;
      cur.push_back(certified[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Cluster> least_ideal_chain(const EffSpace& x, const SpacePoint& pt, int depth) {
  std::vector<Cluster> chain;
  for (int n = 0; n <= depth; ++n) {
    int c = pt.at(n + 3);
    chain.push_back(Cluster{{Ball{c, pow2_neg(n + 1)}}});
  }
  return chain;
}

TriState ideal_represents(const EffSpace& x, const IdealApprox& i, const SpacePoint& pt,
                          const Rat& eps, int p) {
  if (eps <= 0) throw std::invalid_argument("ideal_represents: eps must be positive");
  Rat err = pow2_neg(p);
  bool all_certified = true;
  for (const auto& k : i.chain)
    for (const auto& b : k.balls) {
      Rat dhat = point_dense_dist(x, pt, b.center, p);
      if (dhat - err > b.radius) return TriState::No;
      if (dhat + err > b.radius) all_certified = false;
    }
  if (!all_certified) return TriState::Unknown;
  for (const auto& k : i.chain) {
    bool small = !k.balls.empty();
    for (const auto& b : k.balls)
      if (b.radius >= eps) small = false;
    if (small) return TriState::Yes;
  }
  return TriState::Unknown;
}

SpacePoint delta_extract(const EffSpace& x, const std::vector<Cluster>& chain) {
  if (chain.empty()) throw std::invalid_argument("delta_extract: empty stage stream");
  for (size_t n = 0; n < chain.size(); ++n) {
    if (chain[n].balls.empty()) throw std::invalid_argument("delta_extract: empty cluster stage");
    for (const auto& b : chain[n].balls)
      if (b.radius > pow2_neg(static_cast<int>(n) + 1))
        throw std::invalid_argument("delta_extract: radius schedule violated at stage " +
                                    std::to_string(n));
  }
  auto stages = std::make_shared<std::vector<int>>();
  for (const auto& k : chain) stages->push_back(k.balls.front().center);
  return SpacePoint{[stages](int n) {
                      if (n >= static_cast<int>(stages->size()))
                        throw std::out_of_range("delta_extract point: beyond built depth");
                      return (*stages)[static_cast<size_t>(n)];
                    },
                    x.name};
}

}  // namespace ury
