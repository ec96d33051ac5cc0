#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ury/rational.hpp"

using namespace ury;

TEST_CASE("rat_monus basic cases") {
  CHECK(rat_monus(Rat(3, 2), Rat(1, 2)) == Rat(1));
  CHECK(rat_monus(Rat(1, 2), Rat(3, 2)) == Rat(0));
  CHECK(rat_monus(Rat(7, 3), Rat(7, 3)) == Rat(0));
  CHECK(rat_monus(Rat(0), Rat(0)) == Rat(0));
  CHECK_THROWS_AS(rat_monus(Rat(-1), Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(rat_monus(Rat(1), Rat(-1, 2)), std::invalid_argument);
}

TEST_CASE("rat_monus properties on random non-negative rationals") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 500; ++t) {
    Rat u(static_cast<int>(rng() % 200), static_cast<int>(rng() % 50) + 1);
    Rat v(static_cast<int>(rng() % 200), static_cast<int>(rng() % 50) + 1);
    Rat m = rat_monus(u, v);
    CHECK(m >= 0);
    CHECK(m + v >= u);
    if (u >= v) CHECK(m == u - v);
  }
}

TEST_CASE("pow2_neg") {
  CHECK(pow2_neg(0) == Rat(1));
  CHECK(pow2_neg(1) == Rat(1, 2));
  CHECK(pow2_neg(10) == Rat(1, 1024));
  CHECK(pow2_neg(5) * 32 == 1);
  CHECK_THROWS_AS(pow2_neg(-1), std::invalid_argument);
}

TEST_CASE("rat_abs") {
  CHECK(rat_abs(Rat(-3, 7)) == Rat(3, 7));
  CHECK(rat_abs(Rat(3, 7)) == Rat(3, 7));
  CHECK(rat_abs(Rat(0)) == Rat(0));
}

TEST_CASE("serialization round trip") {
  CHECK(rat_str(Rat(1, 3)) == "1/3");
  CHECK(rat_str(Rat(-5, 10)) == "-1/2");
  CHECK(rat_str(Rat(4)) == "4");
  CHECK(rat_str(Rat(0)) == "0");
  CHECK(parse_rat("1/3") == Rat(1, 3));
  CHECK(parse_rat("-7/2") == Rat(-7, 2));
  CHECK(parse_rat("12") == Rat(12));
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("x/y"), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Rat r(static_cast<int>(rng() % 1000) - 500, static_cast<int>(rng() % 99) + 1);
    CHECK(parse_rat(rat_str(r)) == r);
  }
}
