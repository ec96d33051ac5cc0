#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ury/funcspace.hpp"

using namespace ury;

namespace {

EffSpacePtr unit_grid_line() { return builtin_real_line_prefixed({Rat(0), Rat(1, 2), Rat(1)}); }

const std::vector<Rat>& vec_of(const FnPointPtr& p) { return std::get<std::vector<Rat>>(p->v); }

FnPointPtr identity_fn() {
  return fn_lambda([](const FnPointPtr& x) { return x; });
}

}  // namespace

TEST_CASE("FnPoint values and apply") {
  auto v = fn_vec({Rat(1, 3), Rat(2)});
  CHECK(v->describe() == "(1/3,2)");
  CHECK(fn_upoint(UPoint{4})->describe() == "u4");
  CHECK(fn_tuple({v, v})->describe() == "<(1/3,2),(1/3,2)>");

  auto id = identity_fn();
  CHECK(ury::apply(id, v) == v);
  CHECK_THROWS_AS(ury::apply(v, v), std::invalid_argument);
}

TEST_CASE("base level on the real line") {
  auto lvl = base_level(builtin_space("real-line"), 1);
  CHECK(lvl->size() == 2);
  CHECK(vec_of(lvl->nu(0)) == std::vector<Rat>{Rat(0)});
  CHECK(vec_of(lvl->nu(1)) == std::vector<Rat>{Rat(1)});
  CHECK(lvl->label(1) == "1");

  Dist d = lvl->mu(fn_vec({Rat(1, 2)}));
  CHECK(d.mass == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
  CHECK(lvl->semiconvex());
  CHECK(vec_of(lvl->combine(d)) == std::vector<Rat>{Rat(1, 2)});

  CHECK_THROWS_AS(lvl->mu(fn_upoint(UPoint{0})), std::invalid_argument);
  CHECK_THROWS_AS(lvl->nu(5), std::invalid_argument);
}

TEST_CASE("urysohn base level") {
  UrysohnBuilder b;
  b.realize_rational({{}, {}});
  b.realize_rational({{0}, {Rat(2)}});
  auto lvl = urysohn_base_level(b, 1);
  CHECK(lvl->size() == 2);
  CHECK(std::get<UPoint>(lvl->nu(1)->v).index == 1);
  Dist d = lvl->mu(fn_upoint(UPoint{0}));
  d.check();
  CHECK(d.mass[0] == Rat(1));
  CHECK(lvl->semiconvex());
  FnPointPtr mid = lvl->combine(Dist{{Rat(1, 2), Rat(1, 2)}});
  CHECK(b.dist(std::get<UPoint>(mid->v), UPoint{0}) == Rat(1));

  UrysohnBuilder empty;
  CHECK_THROWS_AS(urysohn_base_level(empty, 1), std::invalid_argument);
}

TEST_CASE("product selection") {
  auto rl = builtin_space("real-line");
  auto p = std::make_shared<ProductLevel>(
      std::vector<LevelPtr>{base_level(rl, 1), base_level(rl, 1)});
  CHECK(p->size() == 4);
  CHECK(p->decode(0) == std::vector<int>{0, 0});
  CHECK(p->decode(1) == std::vector<int>{1, 0});  // first component fastest
  CHECK(p->decode(2) == std::vector<int>{0, 1});
  CHECK(p->label(1) == "<1,0>");

  // (1/2,1/2) x (1,0): masses (1/2, 1/2, 0, 0) in mixed-radix order.
  Dist joint = p->mu(fn_tuple({fn_vec({Rat(1, 2)}), fn_vec({Rat(0)})}));
  joint.check();
  CHECK(joint.mass == std::vector<Rat>{Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)});

  CHECK_THROWS_AS(p->mu(fn_vec({Rat(0)})), std::invalid_argument);
  CHECK_THROWS_AS(std::make_shared<ProductLevel>(
                      std::vector<LevelPtr>{base_level(rl, 1), base_level(rl, 2)}),
                  std::invalid_argument);

  // Singleton product is passed through unchanged.
  auto single = base_level(rl, 2);
  CHECK(product_selection({single}) == single);
}

TEST_CASE("product marginals are exact on random cases") {
  auto rl = builtin_space("real-line");
  std::mt19937_64 rng(71);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng() % 5);
    auto a = base_level(rl, n);
    auto b = base_level(rl, n);
    ProductLevel prod({a, b});
    Rat xa(static_cast<int>(rng() % 20) - 10, static_cast<int>(rng() % 6) + 1);
    Rat xb(static_cast<int>(rng() % 20) - 10, static_cast<int>(rng() % 6) + 1);
    Dist da = a->mu(fn_vec({xa}));
    Dist db = b->mu(fn_vec({xb}));
    Dist joint = prod.mu(fn_tuple({fn_vec({xa}), fn_vec({xb})}));
    joint.check();
    for (int i = 0; i < a->size(); ++i) {
      Rat marg(0);
      for (int j = 0; j < b->size(); ++j) marg += joint.mass[static_cast<size_t>(j * a->size() + i)];
      CHECK(marg == da.mass[static_cast<size_t>(i)]);
    }
    for (int j = 0; j < b->size(); ++j) {
      Rat marg(0);
      for (int i = 0; i < a->size(); ++i) marg += joint.mass[static_cast<size_t>(j * a->size() + i)];
      CHECK(marg == db.mass[static_cast<size_t>(j)]);
    }
  }
}

TEST_CASE("pushforward") {
  Dist mu{{Rat(1, 2), Rat(1, 3), Rat(1, 6)}};
  Dist push = pushforward(mu, {1, 1, 0}, 2);
  push.check();
  CHECK(push.mass == std::vector<Rat>{Rat(1, 6), Rat(5, 6)});
  CHECK_THROWS_AS(pushforward(mu, {0, 1}, 2), std::invalid_argument);
}

TEST_CASE("lifted level on the 0, 1/2, 1 grid") {
  auto grid = unit_grid_line();
  LiftedLevel lift(base_level(grid, 2), base_level(grid, 2));
  CHECK(lift.size() == 27);
  CHECK(lift.decode(lift.encode({0, 1, 2})) == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(lift.encode({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(lift.encode({0, 1, 9}), std::invalid_argument);

  // Identity table on a carrier point: point-mass pushforward, exact value.
  std::vector<int> id_phi = {0, 1, 2};
  CHECK(vec_of(lift.apply_table(id_phi, fn_vec({Rat(1, 2)}))) == std::vector<Rat>{Rat(1, 2)});
  // Constant table: combine of a point mass, the constant itself.
  CHECK(vec_of(lift.apply_table({1, 1, 1}, fn_vec({Rat(0)}))) == std::vector<Rat>{Rat(1, 2)});

  // Off-carrier input: the convex combination of supported grid values.
  Dist mu_x = base_level(grid, 2)->mu(fn_vec({Rat(1, 4)}));
  Rat by_hand(0);
  for (size_t i = 0; i < mu_x.mass.size(); ++i)
    by_hand += mu_x.mass[i] * grid->value(static_cast<int>(i));
  CHECK(vec_of(lift.apply_table(id_phi, fn_vec({Rat(1, 4)}))) == std::vector<Rat>{by_hand});

  // eta over all 27 tables: exact product masses summing to 1.
  auto f = identity_fn();
  Dist eta = lift.mu(f);
  eta.check();
  std::vector<Dist> factors;
  for (int a = 0; a < 3; ++a) factors.push_back(lift.factor(f, a));
  for (int b = 0; b < 27; ++b) {
    auto phi = lift.decode(b);
    Rat m(1);
    for (size_t a = 0; a < phi.size(); ++a) m *= factors[a].mass[static_cast<size_t>(phi[a])];
    CHECK(eta.mass[static_cast<size_t>(b)] == m);
  }

  // Identity factors: each lambda_n(f(nu(a))) is the point mass at a.
  for (int a = 0; a < 3; ++a) {
    CHECK(factors[static_cast<size_t>(a)].mass[static_cast<size_t>(a)] == Rat(1));
  }
}

TEST_CASE("lift sampling stays in the factor supports") {
  auto grid = unit_grid_line();
  LiftedLevel lift(base_level(grid, 2), base_level(grid, 2));
  auto f = fn_lambda([](const FnPointPtr& x) {
    // Shift by a quarter: keeps every factor genuinely spread.
    return fn_vec({vec_of(x)[0] + Rat(1, 4)});
  });
  std::vector<Dist> factors;
  for (int a = 0; a < 3; ++a) factors.push_back(lift.factor(f, a));
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    auto phi = lift.sample(f, rng);
    REQUIRE(phi.size() == 3);
    for (size_t a = 0; a < phi.size(); ++a)
      CHECK(factors[a].mass[static_cast<size_t>(phi[a])] > 0);
  }
}

TEST_CASE("support propagation through the lift") {
  auto grid = unit_grid_line();
  LiftedLevel lift(base_level(grid, 2), base_level(grid, 2));
  auto f = identity_fn();
  auto x = fn_vec({Rat(1, 4)});
  Dist mu_x = lift.domain()->mu(x);
  std::mt19937_64 rng(37);
  for (int t = 0; t < 100; ++t) {
    auto phi = lift.sample(f, rng);
    for (int a : mu_x.support()) {
      Dist lam = lift.factor(f, a);
      CHECK(lam.mass[static_cast<size_t>(phi[static_cast<size_t>(a)])] > 0);
    }
  }
}

TEST_CASE("type parsing") {
  CHECK(parse_type("V1")->str() == "V1");
  CHECK(parse_type(" ( V1 -> V2 ) ")->str() == "(V1->V2)");
  CHECK(parse_type("(V1,V2)->V1")->str() == "((V1,V2)->V1)");
  CHECK(parse_type("(V1->V1)->V1")->str() == "((V1->V1)->V1)");
  CHECK(parse_type("(V1,V2,V3)")->str() == "(V1,V2,V3)");
  CHECK(parse_type("(V1)")->str() == "V1");
  CHECK_THROWS_AS(parse_type("V"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type("(V1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type("V1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type("W1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type(""), std::invalid_argument);
}

TEST_CASE("interpret_type") {
  BaseAssignment bases;
  bases.spaces[1] = builtin_space("real-line");

  auto base = interpret_type(parse_type("V1"), bases, 1);
  CHECK(base->size() == 2);

  auto arrow = interpret_type(parse_type("V1->V1"), bases, 1);
  CHECK(arrow->size() == 4);  // 2^2 finite tables
  Dist eta = arrow->mu(identity_fn());
  eta.check();

  // Nested lift: the outer level consumes lifted arguments.
  auto nested = interpret_type(parse_type("(V1->V1)->V1"), bases, 1);
  CHECK(nested->size() == 16);  // 2^4
  auto eval_at_half =
      fn_lambda([](const FnPointPtr& g) { return ury::apply(g, fn_vec({Rat(1, 2)})); });
  Dist eta2 = nested->mu(eval_at_half);
  eta2.check();

  // Curried arrows share one lift over the product of the domains.
  auto curried = interpret_type(parse_type("V1->V1->V1"), bases, 1);
  CHECK(curried->size() == 16);  // codomain^(2*2)

  // Unsupported shapes.
  CHECK_THROWS_AS(interpret_type(parse_type("V2"), bases, 1), std::invalid_argument);
  CHECK_THROWS_AS(interpret_type(parse_type("V1->(V1,V1)"), bases, 1), std::invalid_argument);
  FinMetric m;
  m.points = {0, 1};
  m.dist = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  bases.spaces[2] = builtin_finite(m);
  CHECK_THROWS_AS(interpret_type(parse_type("V1->V2"), bases, 1), std::invalid_argument);

  // Urysohn codomain is accepted.
  UrysohnBuilder b;
  b.run_bookkeeping(4, 2);
  bases.urysohn[3] = &b;
  auto into_u = interpret_type(parse_type("V1->V3"), bases, 1);
  CHECK(into_u->semiconvex() == false);  // the lift itself is not semiconvex
  CHECK(into_u->size() >= 1);
}

TEST_CASE("enumerate_dense") {
  BaseAssignment bases;
  bases.spaces[1] = builtin_space("real-line");

  auto pts = enumerate_dense(parse_type("V1"), bases, 3);
  REQUIRE(pts.size() == 3);
  CHECK(vec_of(pts[0]) == std::vector<Rat>{Rat(0)});  // level 0 carrier
  CHECK(vec_of(pts[1]) == std::vector<Rat>{Rat(0)});  // level 1 carrier starts over
  CHECK(vec_of(pts[2]) == std::vector<Rat>{Rat(1)});

  CHECK(enumerate_dense(parse_type("V1"), bases, 0).empty());

  // Enumerated functions are total and evaluable on a grid.
  auto fns = enumerate_dense(parse_type("V1->V1"), bases, 6);
  REQUIRE(fns.size() == 6);
  for (const auto& f : fns)
    for (Rat x : {Rat(0), Rat(1, 3), Rat(1)}) {
      auto y = ury::apply(f, fn_vec({x}));
      CHECK(vec_of(y).size() == 1);
    }
}

TEST_CASE("desk-scale approximation of the identity") {
  auto grid = unit_grid_line();
  LiftedLevel lift(base_level(grid, 2), base_level(grid, 2));
  auto f = identity_fn();
  std::vector<Rat> test_grid = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};

  // Brute-force threshold: the worst grid error over all supported tables.
  Dist eta = lift.mu(f);
  Rat threshold(0);
  for (int b = 0; b < lift.size(); ++b) {
    if (eta.mass[static_cast<size_t>(b)] == 0) continue;
    auto phi = lift.decode(b);
    for (const Rat& x : test_grid) {
      Rat err = rat_abs(vec_of(lift.apply_table(phi, fn_vec({x})))[0] - x);
      threshold = std::max(threshold, err);
    }
  }
  // The grid has mesh 1/2; supported tables track the identity to within it.
  CHECK(threshold <= Rat(1, 2));

  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    auto phi = lift.sample(f, rng);
    for (const Rat& x : test_grid) {
      Rat err = rat_abs(vec_of(lift.apply_table(phi, fn_vec({x})))[0] - x);
      CHECK(err <= threshold);
    }
  }
}
