#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ury/domain_rep.hpp"

using namespace ury;

TEST_CASE("cluster_valid examples on the real line") {
  auto rl = builtin_space("real-line");
  int i0 = rl->index_of(Rat(0));
  int i32 = rl->index_of(Rat(3, 2));

  CHECK(cluster_valid(*rl, Cluster{{Ball{i0, Rat(5)}}}));
  CHECK(cluster_valid(*rl, Cluster{{Ball{i0, Rat(1)}, Ball{i32, Rat(1)}}}));
  CHECK_FALSE(cluster_valid(*rl, Cluster{{Ball{i0, Rat(1, 2)}, Ball{i32, Rat(1, 2)}}}));
  CHECK_THROWS_AS(cluster_valid(*rl, Cluster{{Ball{i0, Rat(0)}}}), std::invalid_argument);

  auto inexact = std::make_shared<EffSpace>(*rl);
  inexact->exact = false;
  CHECK_THROWS_AS(cluster_valid(*inexact, Cluster{{Ball{i0, Rat(1)}}}), std::invalid_argument);
  CHECK(cluster_valid_at(*inexact, Cluster{{Ball{i0, Rat(1)}, Ball{i32, Rat(1)}}}, 8) ==
        TriState::Yes);
  CHECK(cluster_valid_at(*inexact, Cluster{{Ball{i0, Rat(1, 2)}, Ball{i32, Rat(1, 2)}}}, 8) ==
        TriState::No);
  // Exactly on the boundary with a fuzzy oracle: undecided.
  CHECK(cluster_valid_at(*inexact, Cluster{{Ball{i0, Rat(3, 4)}, Ball{i32, Rat(3, 4)}}}, 8) ==
        TriState::Unknown);
}

TEST_CASE("cluster_leq examples") {
  auto rl = builtin_space("real-line");
  int i0 = rl->index_of(Rat(0));
  int ih = rl->index_of(Rat(1, 2));
  int i1 = rl->index_of(Rat(1));

  Cluster k{{Ball{i0, Rat(1)}}};
  CHECK(cluster_leq(*rl, k, k));
  CHECK(cluster_leq(*rl, k, Cluster{{Ball{ih, Rat(1, 4)}}}));
  CHECK_FALSE(cluster_leq(*rl, Cluster{{Ball{i0, Rat(1, 4)}}}, Cluster{{Ball{i1, Rat(1, 4)}}}));
}

TEST_CASE("cluster_leq is a preorder on random clusters") {
  auto rl = builtin_space("real-line");
  std::mt19937_64 rng(41);
  auto random_cluster = [&]() {
    Cluster k;
    int n = 1 + static_cast<int>(rng() % 3);
    // Centers near each other so validity is common.
    for (int i = 0; i < n; ++i)
      k.balls.push_back(Ball{static_cast<int>(rng() % 5),
                             Rat(static_cast<int>(rng() % 6) + 2, static_cast<int>(rng() % 2) + 1)});
    return k;
  };
  for (int t = 0; t < 150; ++t) {
    Cluster a = random_cluster(), b = random_cluster(), c = random_cluster();
    if (!cluster_valid(*rl, a) || !cluster_valid(*rl, b) || !cluster_valid(*rl, c)) continue;
    CHECK(cluster_leq(*rl, a, a));
    if (cluster_leq(*rl, a, b) && cluster_leq(*rl, b, c)) CHECK(cluster_leq(*rl, a, c));
  }
}

TEST_CASE("least_ideal_clusters examples") {
  auto rl = builtin_space("real-line");
  SpacePoint half = dense_point(*rl, rl->index_of(Rat(1, 2)));
  int i0 = rl->index_of(Rat(0));
  int ih = rl->index_of(Rat(1, 2));

  auto has_ball = [&](int k, int center, const Rat& r) {
    for (const auto& cl : least_ideal_clusters(*rl, half, k))
      for (const auto& b : cl.balls)
        if (b.center == center && b.radius == r) return true;
    return false;
  };

  // x is the center: B(x, 1) included once 2^-(k+2) < 1.
  CHECK(has_ball(3, ih, Rat(1)));
  // Boundary ball B(0, 1/2) never enters the least ideal.
  for (int k = 0; k <= 3; ++k) CHECK_FALSE(has_ball(k, i0, Rat(1, 2)));
  // Interior ball B(0, 3/4): certified from stage 2 on.
  CHECK(has_ball(2, i0, Rat(3, 4)));
  CHECK(has_ball(3, i0, Rat(3, 4)));

  // Monotone growth: every stage-k cluster persists at stage k+1.
  for (int k = 0; k <= 2; ++k) {
    auto now = least_ideal_clusters(*rl, half, k);
    auto next = least_ideal_clusters(*rl, half, k + 1);
    auto key = [](const Cluster& c) {
      std::vector<std::pair<int, Rat>> v;
      for (const auto& b : c.balls) v.push_back({b.center, b.radius});
      return v;
    };
    std::vector<std::vector<std::pair<int, Rat>>> later;
    for (const auto& c : next) later.push_back(key(c));
    for (const auto& c : now)
      CHECK(std::find(later.begin(), later.end(), key(c)) != later.end());
  }
}

TEST_CASE("ideal_represents tri-state") {
  auto rl = builtin_space("real-line");
  SpacePoint half = dense_point(*rl, rl->index_of(Rat(1, 2)));
  int i0 = rl->index_of(Rat(0));
  int ih = rl->index_of(Rat(1, 2));
  int i2 = rl->index_of(Rat(2));

  IdealApprox tight{{Cluster{{Ball{ih, Rat(1, 16)}}}}};
  CHECK(ideal_represents(*rl, tight, half, Rat(1, 8), 10) == TriState::Yes);

  IdealApprox missing{{Cluster{{Ball{i2, Rat(1, 4)}}}}};
  CHECK(ideal_represents(*rl, missing, half, Rat(1), 10) == TriState::No);

  // Boundary-only information stays undecided.
  IdealApprox boundary{{Cluster{{Ball{i0, Rat(1, 2)}}}}};
  CHECK(ideal_represents(*rl, boundary, half, Rat(1), 10) == TriState::Unknown);

  CHECK_THROWS_AS(ideal_represents(*rl, tight, half, Rat(0), 10), std::invalid_argument);
}

TEST_CASE("upward closure") {
  auto rl = builtin_space("real-line");
  std::mt19937_64 rng(47);
  SpacePoint half = dense_point(*rl, rl->index_of(Rat(1, 2)));
  int ih = rl->index_of(Rat(1, 2));
  for (int t = 0; t < 50; ++t) {
    IdealApprox i{{Cluster{{Ball{ih, Rat(1, 16)}}}}};
    REQUIRE(ideal_represents(*rl, i, half, Rat(1, 8), 12) == TriState::Yes);
    // Extend chain-wise with a smaller ball around a nearby dense point.
    Rat r(1, 32 + static_cast<int>(rng() % 32));
    IdealApprox j = i;
    j.chain.push_back(Cluster{{Ball{ih, r}}});
    if (!ideal_approx_valid(*rl, j)) continue;
    CHECK(ideal_represents(*rl, j, half, Rat(1, 8), 12) != TriState::No);
  }
}

TEST_CASE("Hausdorff uniqueness") {
  auto rl = builtin_space("real-line");
  int ih = rl->index_of(Rat(1, 2));
  SpacePoint x = dense_point(*rl, ih);
  SpacePoint y = dense_point(*rl, rl->index_of(Rat(2)));
  // d(x, y) = 3/2; a cluster of radii < 3/4 representing x must refute y.
  IdealApprox i{{Cluster{{Ball{ih, Rat(1, 2)}}}}};
  REQUIRE(ideal_represents(*rl, i, x, Rat(1), 12) == TriState::Yes);
  CHECK(ideal_represents(*rl, i, y, Rat(1), 12) == TriState::No);
}

TEST_CASE("delta_extract and the round trip") {
  auto rl = builtin_space("real-line");
  int ih = rl->index_of(Rat(1, 2));
  SpacePoint half = dense_point(*rl, ih);

  // Constant stream of balls around x extracts x.
  std::vector<Cluster> constant;
  for (int n = 0; n <= 8; ++n) constant.push_back(Cluster{{Ball{ih, pow2_neg(n + 1)}}});
  SpacePoint back = delta_extract(*rl, constant);
  for (int n = 0; n <= 8; ++n) CHECK(back.at(n) == ih);

  // Round trip through the canonical least-ideal chain.
  auto chain = least_ideal_chain(*rl, half, 10);
  SpacePoint rt = delta_extract(*rl, chain);
  for (int n = 0; n <= 10; ++n)
    CHECK(rat_abs(rl->value(rt.at(n)) - Rat(1, 2)) <= pow2_neg(n));

  CHECK_THROWS_AS(delta_extract(*rl, {}), std::invalid_argument);
  std::vector<Cluster> bad = {Cluster{{Ball{ih, Rat(1)}}}};
  CHECK_THROWS_AS(delta_extract(*rl, bad), std::invalid_argument);
}

TEST_CASE("witness-based cluster validity agrees with the syntactic one") {
  UrysohnBuilder b;
  b.run_bookkeeping(20, 2);
  auto u0 = eff_from_builder(b);
  std::mt19937_64 rng(53);
  int n = b.space().size();
  for (int t = 0; t < 60; ++t) {
    Cluster k;
    int sz = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < sz; ++i)
      k.balls.push_back(Ball{static_cast<int>(rng() % static_cast<unsigned>(n)),
                             Rat(static_cast<int>(rng() % 4) + 1, static_cast<int>(rng() % 3) + 1)});
    // The witness realizes a common sphere point, a strictly stronger demand
    // than pairwise consistency (it adds |r_i - r_j| <= d).
    bool sphere_ok = true;
    for (size_t i = 0; i < k.balls.size(); ++i)
      for (size_t j = i + 1; j < k.balls.size(); ++j)
        if (rat_abs(k.balls[i].radius - k.balls[j].radius) >
            b.space().d(k.balls[i].center, k.balls[j].center))
          sphere_ok = false;
    if (cluster_valid_by_witness(b, k)) CHECK(cluster_valid(*u0, k));
    if (cluster_valid(*u0, k) && sphere_ok) CHECK(cluster_valid_by_witness(b, k));
  }
}
