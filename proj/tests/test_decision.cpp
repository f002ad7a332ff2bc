#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "sdc/decision.hpp"

using sdc::ComparisonResult;
using sdc::Decision;
using sdc::Ofn;
using sdc::StrategyEvaluation;

namespace {

// Each alpha-level interval is replaced by M evenly spaced sample points
// and all pairs are counted; converges to the exact level probability at
// rate 1/M.
ComparisonResult sampled_compare(Ofn a, Ofn b, int m = 400) {
  auto sorted = [](Ofn x) {
    auto c = x.components();
    std::sort(c.begin(), c.end());
    return c;
  };
  const auto sa = sorted(a), sb = sorted(b);
  auto points = [m](const std::array<int, 4>& s, double alpha) {
    const double lo = s[0] + alpha * (s[1] - s[0]);
    const double hi = s[3] - alpha * (s[3] - s[2]);
    std::vector<double> p;
    if (hi <= lo) return std::vector<double>{lo};
    for (int k = 0; k < m; ++k) p.push_back(lo + (hi - lo) * (k + 0.5) / m);
    return p;
  };
  double less = 0, greater = 0;
  const int levels = sdc::kAlphaLevels;
  for (int l = 0; l < levels; ++l) {
    const double alpha = static_cast<double>(l) / (levels - 1);
    const auto pa = points(sa, alpha), pb = points(sb, alpha);
    double lt = 0, gt = 0;
    for (double x : pa)
      for (double y : pb) {
        if (x < y) ++lt;
        else if (x > y) ++gt;
      }
    const double total = static_cast<double>(pa.size() * pb.size());
    less += lt / total;
    greater += gt / total;
  }
  return {less / levels, greater / levels};
}

Decision decide_list(std::vector<StrategyEvaluation> e) { return sdc::decide(e); }

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

} // namespace

TEST_CASE("prob_compare worked pairs") {
  auto r = sdc::prob_compare({12, 20, 29, 35}, {27, 33, 45, 53});
  CHECK(near(r.p_less, 0.99, 0.05));
  CHECK(r.p_less >= 0.94);
  CHECK(r.p_greater <= 0.05);

  r = sdc::prob_compare({10, 11, 12, 13}, {20, 21, 22, 23});
  CHECK(r.p_less == 1.0);
  CHECK(r.p_greater == 0.0);

  r = sdc::prob_compare({21, 25, 38, 45}, {27, 33, 45, 53});
  CHECK(near(r.p_less, 0.8181, 0.001));
  CHECK(near(r.p_greater, 0.1819, 0.001));
  CHECK(near(r.p_less + r.p_greater, 1.0, 1e-9));

  r = sdc::prob_compare({15, 23, 26, 32}, {30, 36, 42, 50});
  CHECK(r.p_less >= 0.95);

  r = sdc::prob_compare({3, 6, 8, 12}, {3, 6, 8, 12});
  CHECK(r.p_less == r.p_greater);
  CHECK(r.p_less + r.p_greater == doctest::Approx(1.0));
}

TEST_CASE("prob_compare agrees with a sampled quadrature") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> d(0, 40);
  for (int k = 0; k < 60; ++k) {
    Ofn a{d(rng), d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng), d(rng)};
    if (k % 5 == 0) b = Ofn::crisp(d(rng));
    const ComparisonResult got = sdc::prob_compare(a, b);
    const ComparisonResult want = sampled_compare(a, b);
    CAPTURE(to_string(a));
    CAPTURE(to_string(b));
    CHECK(near(got.p_less, want.p_less, 0.01));
    CHECK(near(got.p_greater, want.p_greater, 0.01));
  }
}

TEST_CASE("counting oracle") {
  const int a[] = {1, 2}, b[] = {2, 3}, five[] = {5}, one[] = {1}, two[] = {2};
  auto r = sdc::prob_compare_counting_oracle(a, b);
  CHECK(r.p_less == 0.75);
  CHECK(r.p_greater == 0.0);
  r = sdc::prob_compare_counting_oracle(five, five);
  CHECK(r.p_less == 0.0);
  CHECK(r.p_greater == 0.0);
  r = sdc::prob_compare_counting_oracle(one, two);
  CHECK(r.p_less == 1.0);
  CHECK(r.p_greater == 0.0);
  CHECK_THROWS_AS(sdc::prob_compare_counting_oracle(std::span<const int>{}, one), std::invalid_argument);
  CHECK_THROWS_AS(sdc::prob_compare_counting_oracle(one, std::span<const int>{}), std::invalid_argument);
}

TEST_CASE("property: crisp comparison matches the counting oracle") {
  for (int k = -10; k <= 10; ++k)
    for (int m = -10; m <= 10; ++m) {
      const auto r = sdc::prob_compare(Ofn::crisp(k), Ofn::crisp(m));
      const int sk[] = {k}, sm[] = {m};
      const auto o = sdc::prob_compare_counting_oracle(sk, sm);
      CHECK(r.p_less == o.p_less);
      CHECK(r.p_greater == o.p_greater);
      CHECK(r.p_less == (k < m ? 1.0 : 0.0));
      CHECK(r.p_greater == (k > m ? 1.0 : 0.0));
    }
}

TEST_CASE("property: anti-symmetry is exact") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int k = 0; k < 500; ++k) {
    const Ofn a{d(rng), d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng), d(rng)};
    const auto ab = sdc::prob_compare(a, b), ba = sdc::prob_compare(b, a);
    CHECK(ab.p_less == ba.p_greater);
    CHECK(ab.p_greater == ba.p_less);
    CHECK(ab.p_less >= 0.0);
    CHECK(ab.p_greater >= 0.0);
    CHECK(ab.p_less + ab.p_greater <= 1.0 + 1e-12);
  }
}

TEST_CASE("more_effective") {
  const StrategyEvaluation low{0, {12, 20, 29, 35}}, high{1, {27, 33, 45, 53}};
  CHECK(sdc::more_effective(low, high));
  CHECK_FALSE(sdc::more_effective(high, low));
  CHECK_FALSE(sdc::more_effective(low, low));
  CHECK(sdc::more_effective({0, {1, 2, 3, 4}}, {1, {8, 9, 9, 10}}));
}

TEST_CASE("conclusion_uncertainty") {
  CHECK(sdc::conclusion_uncertainty({0.99, 0.00}) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(sdc::conclusion_uncertainty({0.91, 0.06}) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(sdc::conclusion_uncertainty({1.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(sdc::conclusion_uncertainty({0.4, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(sdc::conclusion_uncertainty({0.1, 0.7}), std::invalid_argument);
}

TEST_CASE("property: conclusion_uncertainty range") {
  for (int l = 1; l <= 100; ++l)
    for (int g = 0; g < l && l + g <= 100; ++g) {
      const double u = sdc::conclusion_uncertainty({l / 100.0, g / 100.0});
      if (l < 100) {
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
      } else {
        CHECK(u == 0.0);
      }
    }
}

TEST_CASE("decide") {
  SUBCASE("three-way example") {
    const Decision d = decide_list({{0, {24, 28, 35, 42}}, {1, {30, 36, 42, 50}}, {2, {15, 23, 26, 32}}});
    REQUIRE(d.chosen);
    CHECK(*d.chosen == 2);
    CHECK(near(d.uncertainty, 0.03, 0.10));
  }
  SUBCASE("identical candidates") {
    const Decision d = decide_list({{0, {1, 2, 3, 4}}, {1, {1, 2, 3, 4}}});
    CHECK_FALSE(d.chosen);
    CHECK(d.uncertainty == 1.0);
  }
  SUBCASE("single candidate") {
    const Decision d = decide_list({{4, {9, 9, 9, 12}}});
    REQUIRE(d.chosen);
    CHECK(*d.chosen == 4);
    CHECK(d.uncertainty == 0.0);
  }
  SUBCASE("uncertainty is the worst pairwise conclusion") {
    const std::vector<StrategyEvaluation> e{{0, {21, 25, 38, 45}}, {1, {27, 33, 45, 53}}, {2, {12, 20, 29, 35}}};
    const Decision d = sdc::decide(e);
    REQUIRE(d.chosen);
    CHECK(*d.chosen == 2);
    double worst = 0;
    for (int k : {0, 1}) worst = std::max(worst, sdc::conclusion_uncertainty(sdc::prob_compare(e[2].objective, e[k].objective)));
    CHECK(d.uncertainty == worst);
  }
  CHECK_THROWS_AS(decide_list({}), std::invalid_argument);
}

TEST_CASE("property: decide is permutation and shift invariant") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(0, 30);
  auto sorted_ofn = [&] {
    std::array<int, 4> c{d(rng), d(rng), d(rng), d(rng)};
    std::sort(c.begin(), c.end());
    return Ofn{c[0], c[1], c[2], c[3]};
  };
  for (int k = 0; k < 200; ++k) {
    std::vector<StrategyEvaluation> e;
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < n; ++i) e.push_back({i, sorted_ofn()});
    const Decision base = sdc::decide(e);
    CHECK(base.uncertainty >= 0.0);
    CHECK(base.uncertainty <= 1.0);
    if (base.chosen) CHECK(base.uncertainty < 1.0);

    auto perm = e;
    std::shuffle(perm.begin(), perm.end(), rng);
    const Decision p = sdc::decide(perm);
    CHECK(p.chosen == base.chosen);
    CHECK(p.uncertainty == base.uncertainty);

    const int shift = std::uniform_int_distribution<int>(-20, 20)(rng);
    auto shifted = e;
    for (auto& s : shifted) s.objective += Ofn::crisp(shift);
    const Decision s = sdc::decide(shifted);
    CHECK(s.chosen == base.chosen);
    CHECK(s.uncertainty == base.uncertainty);
  }
}
