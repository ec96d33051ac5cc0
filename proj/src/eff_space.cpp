#include "ury/eff_space.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ury/urysohn.hpp"

namespace ury {

namespace {

std::vector<Rat>& rational_table() {
  static std::vector<Rat> table = {Rat(0)};
  return table;
}

std::map<Rat, int>& rational_index() {
  static std::map<Rat, int> index = {{Rat(0), 0}};
  return index;
}

void extend_rationals(size_t need) {
  auto& table = rational_table();
  auto& index = rational_index();
  static int height = 0;
  while (table.size() < need) {
    ++height;
    // Reduced p/q with max(p, q) = height: fix one side at the height.
    std::vector<Rat> level;
    for (int q = 1; q <= height; ++q)
      if (std::gcd(height, q) == 1) level.emplace_back(height, q);
    for (int p = 1; p < height; ++p)
      if (std::gcd(p, height) == 1) level.emplace_back(p, height);
    std::sort(level.begin(), level.end());
    for (const Rat& v : level) {
      index.emplace(v, static_cast<int>(table.size()));
      table.push_back(v);
      index.emplace(-v, static_cast<int>(table.size()));
      table.push_back(-v);
    }
  }
}

int rational_height(const Rat& v) {
  Int p = numerator(v) < 0 ? Int(-numerator(v)) : numerator(v);
  Int q = denominator(v);
  Int h = std::max(p, q);
  return static_cast<int>(h);
}

std::string plain_label(const Rat& v) { return rat_str(v); }

}  // namespace

const Rat& rational_at(int i) {
  if (i < 0) throw std::invalid_argument("rational_at: negative index");
  extend_rationals(static_cast<size_t>(i) + 1);
  return rational_table()[static_cast<size_t>(i)];
}

int index_of_rational(const Rat& v) {
  // Height h occupies a contiguous block; extend past it and look up.
  for (size_t need = 64;; need *= 4) {
    auto hit = rational_index().find(v);
    if (hit != rational_index().end()) return hit->second;
    if (static_cast<Int>(need) > 8 * Int(rational_height(v)) * rational_height(v))
      throw std::logic_error("index_of_rational: enumeration did not reach " + rat_str(v));
    extend_rationals(need);
  }
}

Rat simplest_rational_in(const Rat& lo, const Rat& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_rational_in: empty interval");
  if (lo <= 0 && 0 <= hi) return Rat(0);
  if (hi < 0) return -simplest_rational_in(-hi, -lo);
  // 0 < lo <= hi: continued-fraction descent; minimal denominator, ties to
  // the smaller numerator.
  Int a = numerator(lo) / denominator(lo);  // floor, lo > 0
  if (hi >= Rat(a + 1) || lo == Rat(a)) {
    // An integer lies in [lo, hi]; the smallest one is the ceiling of lo.
    return lo == Rat(a) ? Rat(a) : Rat(a + 1) <= hi ? Rat(a + 1) : lo;
  }
  Rat fl = lo - Rat(a), fh = hi - Rat(a);  // both in (0, 1)
  return Rat(a) + 1 / simplest_rational_in(1 / fh, 1 / fl);
}

EffSpacePtr builtin_space(const std::string& kind, int dim) {
  auto sp = std::make_shared<EffSpace>();
  if (kind == "real-line") {
    sp->name = "real-line";
    sp->dist = [](int i, int j, int) { return rat_abs(rational_at(i) - rational_at(j)); };
    sp->label = [](int i) { return plain_label(rational_at(i)); };
    sp->value = [](int i) { return rational_at(i); };
    sp->index_of = [](const Rat& v) { return index_of_rational(v); };
    sp->coords = [](int i) { return std::vector<Rat>{rational_at(i)}; };
    sp->convex_combinable = true;
    return sp;
  }
  if (kind == "unit-interval") {
    // Dyadics: 0, 1, 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, ...
    auto dyadic = [](int i) -> Rat {
      if (i == 0) return Rat(0);
      if (i == 1) return Rat(1);
      int k = 1, count = 2;
      for (;; ++k) {
        int level = 1 << (k - 1);  // odd numerators at denominator 2^k
        if (i < count + level) {
          int odd = 2 * (i - count) + 1;
          return Rat(odd, Int(1) << k);
        }
        count += level;
      }
    };
    sp->name = "unit-interval";
    sp->dist = [dyadic](int i, int j, int) { return rat_abs(dyadic(i) - dyadic(j)); };
    sp->label = [dyadic](int i) { return plain_label(dyadic(i)); };
    sp->value = dyadic;
    sp->coords = [dyadic](int i) { return std::vector<Rat>{dyadic(i)}; };
    sp->convex_combinable = true;
    return sp;
  }
  if (kind == "maxnorm-rd") {
    if (dim < 1) throw std::invalid_argument("maxnorm-rd: dimension must be >= 1");
    // Q^dim enumerated by the max of the component indices.
    auto tuple_of = [dim](int i) {
      // Per-dimension cache of generated tuples plus the next shell index.
      static std::map<int, std::pair<int, std::vector<std::vector<int>>>> cache;
      auto& [m, tuples] = cache[dim];
      while (static_cast<int>(tuples.size()) <= i) {
        std::vector<int> t(dim, 0);
        std::function<void(int, bool)> rec = [&](int pos, bool has_max) {
          if (pos == dim) {
            if (has_max) tuples.push_back(t);
            return;
          }
          for (int c = 0; c <= m; ++c) {
            t[pos] = c;
            rec(pos + 1, has_max || c == m);
          }
        };
        rec(0, false);
        ++m;
      }
      return tuples[i];
    };
    auto coords = [tuple_of](int i) {
      std::vector<Rat> v;
      for (int c : tuple_of(i)) v.push_back(rational_at(c));
      return v;
    };
    sp->name = "maxnorm-r" + std::to_string(dim);
    sp->dist = [coords](int i, int j, int) {
      auto a = coords(i), b = coords(j);
      Rat m(0);
      for (size_t k = 0; k < a.size(); ++k) m = std::max(m, rat_abs(a[k] - b[k]));
      return m;
    };
    sp->label = [coords](int i) {
      std::ostringstream os;
      os << "(";
      auto v = coords(i);
      for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << rat_str(v[k]);
      os << ")";
      return os.str();
    };
    sp->coords = coords;
    sp->convex_combinable = true;
    return sp;
  }
  throw std::invalid_argument("builtin_space: unknown kind '" + kind + "'");
}

EffSpacePtr builtin_finite(const FinMetric& m) {
  auto rep = validate_metric_serial(m);
  if (!rep.ok()) throw std::invalid_argument("builtin_finite: matrix is not a metric");
  auto sp = std::make_shared<EffSpace>();
  auto mat = std::make_shared<FinMetric>(m);
  sp->name = "finite-" + std::to_string(m.size());
  sp->dense_size = m.size();
  sp->dist = [mat](int i, int j, int) { return mat->d(i, j); };
  sp->label = [](int i) { return "p" + std::to_string(i); };
  return sp;
}

EffSpacePtr builtin_rational_points(const std::vector<Rat>& pts) {
  if (pts.empty()) throw std::invalid_argument("rational-points: empty point list");
  auto sp = std::make_shared<EffSpace>();
  auto v = std::make_shared<std::vector<Rat>>(pts);
  sp->name = "rational-points-" + std::to_string(pts.size());
  sp->dense_size = static_cast<int>(pts.size());
  sp->dist = [v](int i, int j, int) { return rat_abs((*v)[i] - (*v)[j]); };
  sp->label = [v](int i) { return plain_label((*v)[i]); };
  sp->value = [v](int i) { return (*v)[i]; };
  sp->coords = [v](int i) { return std::vector<Rat>{(*v)[i]}; };
  sp->convex_combinable = true;
  return sp;
}

EffSpacePtr builtin_real_line_prefixed(const std::vector<Rat>& prefix) {
  auto sp = std::make_shared<EffSpace>();
  auto pre = std::make_shared<std::vector<Rat>>(prefix);
  auto val = [pre](int i) -> Rat {
    if (i < static_cast<int>(pre->size())) return (*pre)[i];
    // Continue with the canonical enumeration, skipping prefix members.
    int want = i - static_cast<int>(pre->size());
    for (int k = 0;; ++k) {
      const Rat& r = rational_at(k);
      if (std::find(pre->begin(), pre->end(), r) != pre->end()) continue;
      if (want == 0) return r;
      --want;
    }
  };
  sp->name = "real-line";
  sp->dist = [val](int i, int j, int) { return rat_abs(val(i) - val(j)); };
  sp->label = [val](int i) { return plain_label(val(i)); };
  sp->value = val;
  sp->index_of = [val](const Rat& v) {
    for (int i = 0;; ++i)
      if (val(i) == v) return i;
  };
  sp->coords = [val](int i) { return std::vector<Rat>{val(i)}; };
  sp->convex_combinable = true;
  return sp;
}

EffSpacePtr eff_from_builder(const UrysohnBuilder& b) {
  auto sp = std::make_shared<EffSpace>();
  const UrysohnBuilder* bp = &b;
  sp->name = "urysohn-U0";
  sp->dist = [bp](int i, int j, int) { return bp->space().d(i, j); };
  sp->label = [](int i) { return "u" + std::to_string(i); };
  return sp;
}

Rat point_dense_dist(const EffSpace& x, const SpacePoint& pt, int j, int p) {
  int i = pt.at(p + 2);
  return x.dist(i, j, p + 2);
}

SpacePoint dense_point(const EffSpace& x, int i) {
  if (x.dense_size && i >= *x.dense_size)
    throw std::invalid_argument("dense_point: index beyond dense set");
  return SpacePoint{[i](int) { return i; }, x.name};
}

SpacePoint point_from_stream(const EffSpacePtr& x, const FastCauchy& stream) {
  if (!x->value) throw std::invalid_argument("point_from_stream: space has no scalar values");
  EffSpacePtr sp = x;
  return SpacePoint{[sp, stream](int n) {
                      if (sp->dense_size) {
                        // Nearest listed point; the stream must converge to one.
                        Rat v = stream.at(n);
                        int best = 0;
                        Rat bd = rat_abs(sp->value(0) - v);
                        for (int i = 1; i < *sp->dense_size; ++i) {
                          Rat d = rat_abs(sp->value(i) - v);
                          if (d < bd) {
                            bd = d;
                            best = i;
                          }
                        }
                        return best;
                      }
                      // Query one level deeper and take the simplest rational
                      // within the remaining budget: this keeps enumeration
                      // indices small (the exact stream value may sit
                      // arbitrarily deep in the enumeration) and still lands
                      // within 2^-(n+1) + 2^-(n+1) = 2^-n of the point.
                      Rat v = stream.at(n + 1);
                      Rat eps = pow2_neg(n + 1);
                      Rat r = simplest_rational_in(v - eps, v + eps);
                      if (sp->index_of) return sp->index_of(r);
                      return index_of_rational(r);
                    },
                    x->name};
}

}  // namespace ury
