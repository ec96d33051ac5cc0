#include "ury/prob_select.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ury {

std::vector<int> Dist::support() const {
  std::vector<int> s;
  for (size_t i = 0; i < mass.size(); ++i)
    if (mass[i] > 0) s.push_back(static_cast<int>(i));
  return s;
}

void Dist::check() const {
  Rat sum(0);
  for (const Rat& m : mass) {
    if (m < 0) throw std::logic_error("Dist: negative mass");
    sum += m;
  }
  if (sum != 1) throw std::logic_error("Dist: masses sum to " + rat_str(sum));
}

int Dist::sample(const Rat& u) const {
  if (u < 0 || u >= 1) throw std::invalid_argument("Dist::sample: u outside [0,1)");
  Rat cum(0);
  for (size_t i = 0; i < mass.size(); ++i) {
    cum += mass[i];
    if (u < cum) return static_cast<int>(i);
  }
  throw std::logic_error("Dist::sample: masses do not reach 1");
}

Rat uniform_unit(std::mt19937_64& rng) {
  Int num = Int(rng());
  Int den = Int(1) << 64;
  return Rat(num, den);
}

Dist SelectionLevel::mu_from_dists(const std::vector<Rat>& dists) const {
  if (dists.size() != carrier.size())
    throw std::invalid_argument("mu: distance vector size mismatch");
  Rat dmin = dists[0];
  for (const Rat& d : dists) dmin = std::min(dmin, d);
  std::vector<Rat> num(dists.size());
  Rat sum(0);
  for (size_t i = 0; i < dists.size(); ++i) {
    num[i] = rat_monus(dmin + delta, dists[i]);
    sum += num[i];
  }
  // The minimizing carrier point always contributes delta > 0.
  Dist d;
  d.mass.resize(num.size());
  for (size_t i = 0; i < num.size(); ++i) d.mass[i] = num[i] / sum;
  return d;
}

Dist SelectionLevel::mu(const SpacePoint& x) const {
  std::vector<Rat> dists(carrier.size());
  for (size_t i = 0; i < carrier.size(); ++i)
    dists[i] = point_dense_dist(*space, x, carrier[i], eval_precision);
  return mu_from_dists(dists);
}

Dist SelectionLevel::mu_coords(const std::vector<Rat>& x) const {
  if (!space->coords) throw std::invalid_argument("mu_coords: space has no coordinates");
  std::vector<Rat> dists(carrier.size());
  for (size_t i = 0; i < carrier.size(); ++i) {
    auto c = space->coords(carrier[i]);
    if (c.size() != x.size()) throw std::invalid_argument("mu_coords: dimension mismatch");
    Rat m(0);
    for (size_t k = 0; k < c.size(); ++k) m = std::max(m, rat_abs(c[k] - x[k]));
    dists[i] = m;
  }
  return mu_from_dists(dists);
}

SelectionLevel metric_selection_level(EffSpacePtr x, int n) {
  if (n < 0) throw std::invalid_argument("metric_selection_level: negative level");
  SelectionLevel lvl;
  lvl.space = x;
  lvl.n = n;
  lvl.eval_precision = n + 4;
  int count = n + 1;
  if (x->dense_size) count = std::min(count, *x->dense_size);
  for (int i = 0; i < count; ++i) lvl.carrier.push_back(i);
  lvl.delta = pow2_neg(n);
  for (size_t i = 0; i < lvl.carrier.size(); ++i)
    for (size_t j = i + 1; j < lvl.carrier.size(); ++j)
      lvl.delta = std::min(lvl.delta, x->dist(lvl.carrier[i], lvl.carrier[j], lvl.eval_precision));
  if (lvl.delta <= 0)
    throw std::invalid_argument("metric_selection_level: coincident carrier points");
  return lvl;
}

BanachSemiconvex banach_semiconvex(const std::vector<std::vector<Rat>>& nu) {
  if (nu.empty()) throw std::invalid_argument("banach_semiconvex: empty carrier");
  for (const auto& v : nu)
    if (v.size() != nu.front().size())
      throw std::invalid_argument("banach_semiconvex: ragged vectors");
  return BanachSemiconvex{nu};
}

std::vector<Rat> BanachSemiconvex::combine(const Dist& m) const {
  if (m.mass.size() != vectors.size())
    throw std::invalid_argument("combine: distribution size mismatch");
  std::vector<Rat> out(vectors.front().size(), Rat(0));
  for (size_t i = 0; i < vectors.size(); ++i)
    for (size_t k = 0; k < out.size(); ++k) out[k] += m.mass[i] * vectors[i][k];
  return out;
}

UrysohnSemiconvex::UrysohnSemiconvex(UrysohnBuilder& b, std::vector<int> points)
    : b_(&b), points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("urysohn_semiconvex: empty carrier");
  for (int p : points_)
    if (p < 0 || p >= b_->space().size())
      throw std::invalid_argument("urysohn_semiconvex: unknown builder point");
}

UPoint UrysohnSemiconvex::combine(const Dist& m) {
  if (m.mass.size() != points_.size())
    throw std::invalid_argument("combine: distribution size mismatch");
  size_t k = points_.size();
  // w = sum_i m(a_i) * phi(v_i), phi the max-norm coordinate map.
  std::vector<Rat> w(k, Rat(0));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      w[j] += m.mass[i] * b_->space().d(points_[i], points_[j]);
  std::ostringstream key;
  for (const Rat& c : w) key << rat_str(c) << ";";
  auto hit = cache_.find(key.str());
  if (hit != cache_.end()) return UPoint{hit->second};

  ExtensionRequest req;
  for (size_t i = 0; i < k; ++i) {
    Rat t(0);
    for (size_t j = 0; j < k; ++j)
      t = std::max(t, rat_abs(w[j] - b_->space().d(points_[i], points_[j])));
    if (t == 0) {
      cache_.emplace(key.str(), points_[i]);
      return UPoint{points_[i]};
    }
    req.base.push_back(points_[i]);
    req.targets.push_back(t);
  }
  if (!extension_admissible(b_->space(), req))
    throw std::logic_error("urysohn_semiconvex: max-norm targets inadmissible");
  UPoint u = b_->realize_rational(req);
  cache_.emplace(key.str(), u.index);
  return u;
}

HarnessReport convergence_harness(const EffSpacePtr& x_space, int max_level, const SpacePoint& x,
                                  const std::function<SpacePoint(int)>& moving, int trials,
                                  std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("convergence_harness: trials must be >= 1");
  std::mt19937_64 rng(seed);
  HarnessReport rep;
  for (int n = 0; n <= max_level; ++n) {
    SelectionLevel lvl = metric_selection_level(x_space, n);
    int p = lvl.eval_precision;
    SpacePoint xn = moving(n);
    std::vector<Rat> dists(lvl.carrier.size());
    for (size_t i = 0; i < lvl.carrier.size(); ++i)
      dists[i] = point_dense_dist(*x_space, xn, lvl.carrier[i], p);
    Rat dmin = *std::min_element(dists.begin(), dists.end());
    int q = p + 2;
    Rat drift = x_space->dist(xn.at(q), x.at(q), q) + pow2_neg(q - 1);
    Rat envelope = dmin + lvl.delta + drift + pow2_neg(p - 3);
    Dist d = lvl.mu_from_dists(dists);
    for (int t = 0; t < trials; ++t) {
      int a = d.sample(uniform_unit(rng));
      Rat sample_dist = point_dense_dist(*x_space, x, lvl.carrier[a], p);
      bool inside = sample_dist <= envelope;
      if (!inside) rep.all_inside = false;
      rep.rows.push_back({n, t, a, sample_dist, envelope, inside});
    }
  }
  return rep;
}

std::vector<EnvelopeRow> envelope_schedule(const EffSpacePtr& x_space, int max_level,
                                           const FastCauchy& x,
                                           const std::function<FastCauchy(int)>& moving) {
  if (!x_space->value)
    throw std::invalid_argument("envelope_schedule: space has no scalar values");
  std::vector<EnvelopeRow> rows;
  for (int n = 0; n <= max_level; ++n) {
    int p = n + 4;
    int count = n + 1;
    if (x_space->dense_size) count = std::min(count, *x_space->dense_size);
    std::vector<Rat> carrier;
    for (int i = 0; i < count; ++i) carrier.push_back(x_space->value(i));
    Rat delta = pow2_neg(n);
    for (size_t i = 0; i < carrier.size(); ++i)
      for (size_t j = i + 1; j < carrier.size(); ++j)
        delta = std::min(delta, rat_abs(carrier[i] - carrier[j]));
    FastCauchy xn = moving(n);
    Rat v = xn.at(p);
    Rat dmin = rat_abs(v - carrier[0]);
    for (const Rat& c : carrier) dmin = std::min(dmin, rat_abs(v - c));
    Rat drift = rat_abs(v - x.at(p));
    // Both streams carry 2^-p slack; fold it into the bound.
    rows.push_back({n, dmin + delta + drift + 3 * pow2_neg(p)});
  }
  return rows;
}

}  // namespace ury
