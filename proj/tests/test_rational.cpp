#include <doctest.h>

#include "finnet/rational.hpp"

using namespace finnet;

TEST_CASE("parse and print rationals") {
  CHECK(parse_rat("1/8") == Rat(1, 8));
  CHECK(parse_rat("-3/4") == Rat(-3, 4));
  CHECK(parse_rat("7") == Rat(7));
  CHECK(parse_rat("0.25") == Rat(1, 4));
  CHECK(parse_rat("-0.5") == Rat(-1, 2));
  CHECK(rat_to_string(Rat(1, 8)) == "1/8");
  CHECK(rat_to_string(Rat(4)) == "4");
  CHECK_THROWS(parse_rat("1/0"));
}

TEST_CASE("rat_pow") {
  CHECK(rat_pow(Rat(1, 2), 3) == Rat(1, 8));
  CHECK(rat_pow(Rat(2, 3), 0) == Rat(1));
  CHECK(rat_pow(Rat(2), -2) == Rat(1, 4));
}

TEST_CASE("exact square roots") {
  CHECK(*rat_sqrt_exact(Rat(1, 4)) == Rat(1, 2));
  CHECK(*rat_sqrt_exact(Rat(9, 16)) == Rat(3, 4));
  CHECK(!rat_sqrt_exact(Rat(1, 2)).has_value());
  CHECK(!rat_sqrt_exact(Rat(-1)).has_value());
}

TEST_CASE("log2_exact") {
  CHECK(*log2_exact(Rat(1, 8)) == -3);
  CHECK(*log2_exact(Rat(4)) == 2);
  CHECK(*log2_exact(Rat(1)) == 0);
  CHECK(!log2_exact(Rat(1, 3)).has_value());
  CHECK(!log2_exact(Rat(3, 4)).has_value());
}

TEST_CASE("rank and solve") {
  RatMat a{{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(1)}, {Rat(1), Rat(0), Rat(1)}};
  CHECK(rat_rank(a) == 3);
  auto x = rat_solve(a, {Rat(1), Rat(1), Rat(1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(1, 2));
  CHECK((*x)[1] == Rat(1, 2));
  CHECK((*x)[2] == Rat(1, 2));

  RatMat sing{{Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
  CHECK(rat_rank(sing) == 1);
  CHECK(!rat_solve(sing, {Rat(1), Rat(2)}).has_value());
}

TEST_CASE("lcm of denominators") {
  CHECK(lcm_denominators({Rat(1, 2), Rat(1, 3), Rat(5)}) == 6);
  CHECK(lcm_denominators({}) == 1);
}
