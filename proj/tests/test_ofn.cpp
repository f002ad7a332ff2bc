#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sdc/ofn.hpp"

using sdc::Condition;
using sdc::Ofn;

TEST_CASE("add") {
  CHECK(Ofn(2, 3, 3, 3) + Ofn(0, 2, 2, 2) == Ofn(2, 5, 5, 5));
  CHECK(Ofn(0, 0, 0, 0) + Ofn(1, 2, 2, 3) == Ofn(1, 2, 2, 3));
  CHECK(Ofn::crisp(1) + Ofn::crisp(1) == Ofn::crisp(2));
}

TEST_CASE("sub keeps width") {
  CHECK(Ofn(2, 3, 3, 3) - Ofn(1, 1, 1, 1) == Ofn(1, 2, 2, 2));
  CHECK(Ofn(2, 7, 7, 8) - Ofn(1, 4, 4, 4) == Ofn(1, 3, 3, 4));
  const Ofn a{-3, 4, 9, 11};
  CHECK(a - a == Ofn{});
}

TEST_CASE("cwise_min") {
  CHECK(cwise_min(Ofn(0, 3, 3, 3), Ofn(1, 2, 2, 3)) == Ofn(0, 2, 2, 3));
  CHECK(cwise_min(Ofn(0, 1, 1, 1), Ofn(0, 0, 0, 0)) == Ofn(0, 0, 0, 0));
  const Ofn a{5, 1, 7, 2};
  CHECK(cwise_min(a, a) == a);
}

TEST_CASE("scalar_div rounds half away from zero") {
  CHECK(scalar_div(Ofn(3, 3, 3, 9), 2) == Ofn(2, 2, 2, 5));
  CHECK(scalar_div(Ofn(4, 8, 8, 12), 4) == Ofn(1, 2, 2, 3));
  CHECK(scalar_div(Ofn(-3, -1, 1, 3), 2) == Ofn(-2, -1, 1, 2));
  CHECK(scalar_div(Ofn(1, 2, 4, 5), 3) == Ofn(0, 1, 1, 2));
  const Ofn a{7, -2, 0, 13};
  CHECK(scalar_div(a, 1) == a);
  CHECK_THROWS_AS(scalar_div(a, 0), std::invalid_argument);
  CHECK_THROWS_AS(scalar_div(a, -2), std::invalid_argument);
}

TEST_CASE("div_round_half_away against floating rounding") {
  for (int n = 1; n <= 12; ++n)
    for (int v = -100; v <= 100; ++v) {
      const double q = static_cast<double>(v) / n;
      const int expect = static_cast<int>(q < 0 ? -std::floor(-q + 0.5) : std::floor(q + 0.5));
      CHECK(sdc::div_round_half_away(v, n) == expect);
    }
}

TEST_CASE("s_c worked values") {
  CHECK(s_c(Ofn(1, 2, 2, 3), Condition::equal(0)) == Ofn(0, 0, 0, 0));
  CHECK(s_c(Ofn(0, 2, 2, 3), Condition::equal(0)) == Ofn(0, 0, 0, 1));
  CHECK(s_c(Ofn(0, 1, 1, 1), Condition::greater(0)) == Ofn(0, 1, 1, 1));
  CHECK(s_c(Ofn(0, 0, 3, 4), Condition::less(3)) == Ofn(0, 0, 1, 1));
}

TEST_CASE("s_c truth table over every satisfying count") {
  const Ofn expected[5] = {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 1}};
  // every 0/1 pattern; condition "= 1" is satisfied by exactly the ones
  for (int mask = 0; mask < 16; ++mask) {
    const Ofn a{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
    const int count = (mask & 1) + ((mask >> 1) & 1) + ((mask >> 2) & 1) + ((mask >> 3) & 1);
    CAPTURE(mask);
    CHECK(s_c(a, Condition::equal(1)) == expected[count]);
    CHECK(s_c(a, Condition::greater(0)) == expected[count]);
    CHECK(s_c(a, Condition::less(1)) == expected[4 - count]);
  }
}

TEST_CASE("property: component-wise ops equal scalar ops") {
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (std::size_t i = 0; i < 4; ++i) {
        Ofn a, b;
        // place x, y at index i and distinct fillers elsewhere
        int av[4] = {10, 20, 30, 40}, bv[4] = {-5, 7, -9, 11};
        av[i] = x;
        bv[i] = y;
        a = {av[0], av[1], av[2], av[3]};
        b = {bv[0], bv[1], bv[2], bv[3]};
        CHECK((a + b)[i] == x + y);
        CHECK((a - b)[i] == x - y);
        CHECK(cwise_min(a, b)[i] == std::min(x, y));
        CHECK(cwise_max(a, b)[i] == std::max(x, y));
      }
}

TEST_CASE("property: algebra laws on random numbers") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-1000, 1000);
  auto any = [&] { return Ofn{d(rng), d(rng), d(rng), d(rng)}; };
  for (int k = 0; k < 2000; ++k) {
    const Ofn a = any(), b = any(), c = any();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a + b) - b == a);
    CHECK(scalar_div(a + a, 2) == a);
  }
}

TEST_CASE("property: s_c output is a monotone 0/1 pattern") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-3, 3);
  const Condition conds[] = {Condition::equal(0), Condition::greater(1), Condition::less(-1)};
  for (int k = 0; k < 3000; ++k) {
    const Ofn a{d(rng), d(rng), d(rng), d(rng)};
    for (Condition c : conds) {
      const Ofn s = s_c(a, c);
      for (std::size_t i = 0; i < 4; ++i) CHECK((s[i] == 0 || s[i] == 1));
      CHECK(s.is_sorted());
    }
  }
}

TEST_CASE("property: s_c on crisp numbers") {
  for (int k = -5; k <= 5; ++k) {
    const Ofn a = Ofn::crisp(k);
    CHECK(s_c(a, Condition::equal(0)) == Ofn::crisp(k == 0 ? 1 : 0));
    CHECK(s_c(a, Condition::greater(0)) == Ofn::crisp(k > 0 ? 1 : 0));
    CHECK(s_c(a, Condition::less(2)) == Ofn::crisp(k < 2 ? 1 : 0));
  }
}

TEST_CASE("text form round-trips") {
  const Ofn a{-4, 0, 12, 305};
  CHECK(to_string(a) == "(-4,0,12,305)");
  CHECK(sdc::parse_ofn(to_string(a)) == a);
  CHECK(sdc::parse_ofn(" ( 1, 2 ,2,3 ) ") == Ofn(1, 2, 2, 3));
  std::ostringstream os;
  os << Ofn(1, 2, 2, 3);
  CHECK(os.str() == "(1,2,2,3)");
  CHECK_THROWS_AS(sdc::parse_ofn("(1,2,3)"), std::invalid_argument);
  CHECK_THROWS_AS(sdc::parse_ofn("1,2,3,4"), std::invalid_argument);
  CHECK_THROWS_AS(sdc::parse_ofn("(1,2,3,x)"), std::invalid_argument);
}
