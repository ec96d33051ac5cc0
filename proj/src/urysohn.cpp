#include "ury/urysohn.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ury {

int UReal::point(int n) const {
  if (n < 0) throw std::invalid_argument("UReal: negative precision");
  if (n < static_cast<int>(stages.size())) return stages[n];
  if (constant && !stages.empty()) return stages.back();
  throw std::out_of_range("UReal: precision " + std::to_string(n) + " beyond built depth " +
                          std::to_string(depth()));
}

const Rat& UrysohnBuilder::dist(UPoint a, UPoint b) const {
  if (a.index < 0 || a.index >= space_.size() || b.index < 0 || b.index >= space_.size())
    throw std::invalid_argument("dist: point index out of range");
  return space_.d(a.index, b.index);
}

std::optional<UPoint> UrysohnBuilder::find_exact(const ExtensionRequest& req) const {
  for (int y = 0; y < space_.size(); ++y) {
    bool ok = true;
    for (size_t i = 0; i < req.base.size() && ok; ++i)
      ok = space_.d(y, req.base[i]) == req.targets[i];
    if (ok) return UPoint{y};
  }
  return std::nullopt;
}

UPoint UrysohnBuilder::realize_rational(const ExtensionRequest& req) {
  if (req.base.empty()) {
    if (space_.size() == 0) {
      space_.points.push_back(0);
      space_.dist.push_back({Rat(0)});
      log_.push_back({req, 0});
      return UPoint{0};
    }
    log_.push_back({req, 0});
    return UPoint{0};
  }
  if (!extension_admissible(space_, req))
    throw std::invalid_argument("realize_rational: inadmissible request");
  if (auto hit = find_exact(req)) {
    log_.push_back({req, hit->index});
    return *hit;
  }
  space_ = urysohn_extend(space_, req);
  int y = space_.size() - 1;
  log_.push_back({req, y});
  return UPoint{y};
}

namespace {

// Reduced rationals p/q with 1 <= p, q <= r, ascending.
std::vector<Rat> target_values(int r) {
  std::vector<Rat> vals;
  for (int p = 1; p <= r; ++p)
    for (int q = 1; q <= r; ++q) {
      if (std::gcd(p, q) != 1) continue;
      vals.emplace_back(p, q);
    }
  std::sort(vals.begin(), vals.end());
  return vals;
}

}  // namespace

bool UrysohnBuilder::next_request(int max_height, ExtensionRequest& out) {
  for (;;) {
    if (cursor_.round == 0 || cursor_.mask >= (1UL << cursor_.universe)) {
      if (max_height > 0 && cursor_.round >= max_height) return false;
      ++cursor_.round;
      cursor_.universe = std::min(space_.size(), cursor_.round);
      cursor_.mask = 0;
      cursor_.tuple = 0;
    }
    auto vals = target_values(cursor_.round);
    std::vector<int> members;
    for (int i = 0; i < cursor_.universe; ++i)
      if (cursor_.mask & (1UL << i)) members.push_back(i);
    long count = 1;
    for (size_t i = 0; i < members.size(); ++i) count *= static_cast<long>(vals.size());
    if (cursor_.tuple >= count) {
      ++cursor_.mask;
      cursor_.tuple = 0;
      continue;
    }
    out.base = members;
    out.targets.clear();
    long t = cursor_.tuple;
    for (size_t i = 0; i < members.size(); ++i) {
      out.targets.push_back(vals[t % vals.size()]);
      t /= static_cast<long>(vals.size());
    }
    ++cursor_.tuple;
    return true;
  }
}

int UrysohnBuilder::run_bookkeeping(int steps, int max_height) {
  if (steps < 0) throw std::invalid_argument("run_bookkeeping: negative step count");
  int done = 0;
  ExtensionRequest req;
  while (done < steps) {
    if (!next_request(max_height, req)) break;
    if (!req.base.empty() && !extension_admissible(space_, req)) continue;
    realize_rational(req);
    ++done;
  }
  return done;
}

UReal UrysohnBuilder::realize_approx(const std::vector<UReal>& anchors,
                                     const std::vector<FastCauchy>& targets, int depth) {
  if (anchors.size() != targets.size())
    throw std::invalid_argument("realize_approx: anchor/target length mismatch");
  if (depth < 0) throw std::invalid_argument("realize_approx: negative depth");
  if (anchors.empty()) {
    UPoint seed = realize_rational({});
    UReal u;
    u.stages.assign(static_cast<size_t>(depth) + 1, seed.index);
    u.constant = true;
    return u;
  }

  UReal u;
  for (int s = 0; s <= depth; ++s) {
    int q = s + 6;
    Rat slack = pow2_neg(s + 2);

    // Stage base: deduplicated anchor approximants. Anchors sharing an
    // approximant point must carry targets that agree within slack.
    std::vector<int> base;
    std::vector<Rat> raw;
    std::map<int, Rat> at;
    for (size_t i = 0; i < anchors.size(); ++i) {
      int v = anchors[i].point(q);
      Rat t = targets[i].at(q);
      auto it = at.find(v);
      if (it == at.end()) {
        at.emplace(v, t);
        base.push_back(v);
        raw.push_back(t);
      } else if (rat_abs(it->second - t) > slack) {
        std::ostringstream os;
        os << "realize_approx: inconsistent requirements at stage " << s << ": |"
           << rat_str(it->second) << " - " << rat_str(t) << "| > 0 = d(anchor approximants)";
        throw std::runtime_error(os.str());
      }
    }

    std::vector<Rat> repaired = repair_targets(space_, base, raw, pow2_neg(q + 1));
    for (size_t i = 0; i < base.size(); ++i) {
      if (rat_abs(repaired[i] - raw[i]) > slack) {
        // Report a pair witnessing the inadmissibility.
        std::ostringstream os;
        os << "realize_approx: requirements exceed slack budget " << rat_str(slack)
           << " at stage " << s;
        for (size_t a = 0; a < base.size(); ++a)
          for (size_t b = a + 1; b < base.size(); ++b) {
            const Rat& d = space_.d(base[a], base[b]);
            if (rat_abs(raw[a] - raw[b]) > d)
              os << "; |" << rat_str(raw[a]) << " - " << rat_str(raw[b]) << "| > d = "
                 << rat_str(d);
            else if (d > raw[a] + raw[b])
              os << "; d = " << rat_str(d) << " > " << rat_str(raw[a]) << " + " << rat_str(raw[b]);
          }
        throw std::runtime_error(os.str());
      }
    }

    if (s == 0) {
      ExtensionRequest req{base, repaired};
      u.stages.push_back(realize_rational(req).index);
      continue;
    }

    int prev = u.stages.back();
    bool exact = true;
    Rat dev(0);
    for (size_t i = 0; i < base.size(); ++i) {
      Rat d = rat_abs(space_.d(prev, base[i]) - repaired[i]);
      if (d != 0) exact = false;
      if (d > dev) dev = d;
    }
    if (exact) {
      u.stages.push_back(prev);
      continue;
    }
    Rat chain = std::max(dev, pow2_neg(q + 1));
    if (chain > pow2_neg(s)) {
      throw std::runtime_error("realize_approx: chain constraint " + rat_str(chain) +
                               " exceeds 2^-" + std::to_string(s) + " at stage " +
                               std::to_string(s));
    }
    ExtensionRequest req{base, repaired};
    req.base.push_back(prev);
    req.targets.push_back(chain);
    if (!extension_admissible(space_, req))
      throw std::runtime_error("realize_approx: chained request inadmissible at stage " +
                               std::to_string(s));
    u.stages.push_back(realize_rational(req).index);
  }
  return u;
}

bool UrysohnBuilder::balls_intersect(const std::vector<std::pair<UPoint, Rat>>& balls) const {
  for (const auto& [c, r] : balls)
    if (r <= 0) throw std::invalid_argument("balls_intersect: non-positive radius");
  for (size_t i = 0; i < balls.size(); ++i)
    for (size_t j = i + 1; j < balls.size(); ++j) {
      const Rat& d = dist(balls[i].first, balls[j].first);
      if (rat_abs(balls[i].second - balls[j].second) > d) return false;
      if (d > balls[i].second + balls[j].second) return false;
    }
  return true;
}

UPoint UrysohnBuilder::witness_intersection(const std::vector<std::pair<UPoint, Rat>>& balls) {
  if (balls.empty()) throw std::invalid_argument("witness_intersection: empty ball family");
  if (!balls_intersect(balls))
    throw std::runtime_error("witness_intersection: pairwise condition fails, no witness");
  ExtensionRequest req;
  std::map<int, Rat> seen;
  for (const auto& [c, r] : balls) {
    if (seen.emplace(c.index, r).second) {
      req.base.push_back(c.index);
      req.targets.push_back(r);
    }
  }
  return realize_rational(req);
}

}  // namespace ury
