#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ury/fin_metric.hpp"

using namespace ury;

namespace {

FinMetric make_space(const std::vector<std::vector<Rat>>& d) {
  FinMetric m;
  for (size_t i = 0; i < d.size(); ++i) m.points.push_back(static_cast<int>(i));
  m.dist = d;
  return m;
}

FinMetric random_metric(std::mt19937_64& rng, int n) {
  // Shortest-path closure of a random positive symmetric matrix is a metric.
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat w(static_cast<int>(rng() % 8) + 1, static_cast<int>(rng() % 4) + 1);
      d[i][j] = d[j][i] = w;
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return make_space(d);
}

}  // namespace

TEST_CASE("validate_metric examples") {
  FinMetric one = make_space({{Rat(0)}});
  CHECK(validate_metric(one).ok());

  FinMetric bad_tri = make_space({{Rat(0), Rat(1), Rat(3)},
                                  {Rat(1), Rat(0), Rat(1)},
                                  {Rat(3), Rat(1), Rat(0)}});
  auto rep = validate_metric(bad_tri);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.kind == MetricViolation::Triangle) found = true;
  CHECK(found);

  FinMetric glued = make_space({{Rat(0), Rat(0)}, {Rat(0), Rat(0)}});
  auto rep2 = validate_metric(glued);
  CHECK_FALSE(rep2.ok());
  bool identity = false;
  for (const auto& v : rep2.violations)
    if (v.kind == MetricViolation::Identity) identity = true;
  CHECK(identity);

  FinMetric negative = make_space({{Rat(0), Rat(-1)}, {Rat(-1), Rat(0)}});
  auto rep3 = validate_metric(negative);
  bool positivity = false;
  for (const auto& v : rep3.violations)
    if (v.kind == MetricViolation::Positivity) positivity = true;
  CHECK(positivity);
}

TEST_CASE("serial and parallel validation agree") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    FinMetric m = random_metric(rng, 2 + static_cast<int>(rng() % 8));
    if (t % 3 == 0 && m.size() >= 3) m.dist[0][2] = m.dist[2][0] = Rat(1000);  // break it
    auto a = validate_metric(m);
    auto b = validate_metric_serial(m);
    CHECK(a.ok() == b.ok());
    CHECK(a.violations.size() == b.violations.size());
  }
}

TEST_CASE("extension_admissible examples") {
  FinMetric two = make_space({{Rat(0), Rat(2)}, {Rat(2), Rat(0)}});
  CHECK(extension_admissible(two, {{0}, {Rat(5, 3)}}));
  CHECK(extension_admissible(two, {{0, 1}, {Rat(1), Rat(1)}}));
  CHECK_FALSE(extension_admissible(two, {{0, 1}, {Rat(1, 2), Rat(1, 2)}}));
  CHECK_FALSE(extension_admissible(two, {{0}, {Rat(0)}}));
  CHECK_FALSE(extension_admissible(two, {{0}, {Rat(-1)}}));
  CHECK_THROWS_AS(extension_admissible(two, {{7}, {Rat(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(extension_admissible(two, {{0, 0}, {Rat(1), Rat(1)}}), std::invalid_argument);
}

TEST_CASE("admissibility is monotone under shrinking the base") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    FinMetric m = random_metric(rng, 4);
    ExtensionRequest req;
    for (int i = 0; i < 4; ++i) {
      req.base.push_back(i);
      req.targets.push_back(Rat(static_cast<int>(rng() % 6) + 1, static_cast<int>(rng() % 3) + 1));
    }
    if (!extension_admissible(m, req)) continue;
    size_t drop = rng() % req.base.size();
    ExtensionRequest smaller;
    for (size_t i = 0; i < req.base.size(); ++i)
      if (i != drop) {
        smaller.base.push_back(req.base[i]);
        smaller.targets.push_back(req.targets[i]);
      }
    CHECK(extension_admissible(m, smaller));
  }
}

TEST_CASE("urysohn_extend examples") {
  FinMetric two = make_space({{Rat(0), Rat(2)}, {Rat(2), Rat(0)}});

  FinMetric e1 = urysohn_extend(two, {{0}, {Rat(1)}});
  CHECK(e1.size() == 3);
  CHECK(e1.d(0, 2) == Rat(1));
  CHECK(e1.d(1, 2) == Rat(3));  // min over the base: 2 + 1

  FinMetric e2 = urysohn_extend(two, {{0, 1}, {Rat(1), Rat(1)}});
  CHECK(e2.d(0, 2) == Rat(1));
  CHECK(e2.d(1, 2) == Rat(1));
  CHECK(validate_metric(e2).ok());
  // Existing distances untouched.
  CHECK(e2.d(0, 1) == Rat(2));

  CHECK_THROWS_AS(urysohn_extend(two, {{0, 1}, {Rat(1, 2), Rat(1, 2)}}), std::invalid_argument);
}

TEST_CASE("every admissible extension of a valid metric is a valid metric") {
  std::mt19937_64 rng(23);
  int accepted = 0;
  for (int t = 0; t < 400 || accepted < 100; ++t) {
    FinMetric m = random_metric(rng, 2 + static_cast<int>(rng() % 5));
    ExtensionRequest req;
    int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(m.size()));
    for (int i = 0; i < k; ++i) {
      req.base.push_back(i);
      req.targets.push_back(Rat(static_cast<int>(rng() % 8) + 1, static_cast<int>(rng() % 4) + 1));
    }
    if (!extension_admissible(m, req)) continue;
    ++accepted;
    FinMetric ext = urysohn_extend(m, req);
    CHECK(validate_metric(ext).ok());
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) CHECK(ext.d(i, j) == m.d(i, j));
    for (int i = 0; i < k; ++i) CHECK(ext.d(req.base[i], m.size()) == req.targets[i]);
    if (t > 4000) break;
  }
  CHECK(accepted >= 100);
}

TEST_CASE("repair_targets") {
  FinMetric two = make_space({{Rat(0), Rat(2)}, {Rat(2), Rat(0)}});

  // Already admissible: unchanged.
  std::vector<Rat> ok = repair_targets(two, {0, 1}, {Rat(1), Rat(1)}, Rat(1, 100));
  CHECK(ok == std::vector<Rat>{Rat(1), Rat(1)});

  // Too small a pair gets raised into admissibility.
  std::vector<Rat> fixed = repair_targets(two, {0, 1}, {Rat(1, 2), Rat(1, 2)}, Rat(1, 100));
  CHECK(extension_admissible(two, {{0, 1}, fixed}));

  // Negative raw targets clamp to at least the floor.
  std::vector<Rat> floored = repair_targets(two, {0}, {Rat(-3)}, Rat(1, 4));
  CHECK(floored[0] >= Rat(1, 4));
  CHECK(extension_admissible(two, {{0}, floored}));

  CHECK_THROWS_AS(repair_targets(two, {0}, {Rat(1)}, Rat(0)), std::invalid_argument);
}

TEST_CASE("repair_targets always yields an admissible request on random input") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    FinMetric m = random_metric(rng, 2 + static_cast<int>(rng() % 5));
    std::vector<int> base;
    std::vector<Rat> raw;
    int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(m.size()));
    for (int i = 0; i < k; ++i) {
      base.push_back(i);
      raw.push_back(Rat(static_cast<int>(rng() % 16) - 4, static_cast<int>(rng() % 4) + 1));
    }
    std::vector<Rat> rep = repair_targets(m, base, raw, Rat(1, 64));
    CHECK(extension_admissible(m, {base, rep}));
  }
}
