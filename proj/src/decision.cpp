#include "sdc/decision.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>

namespace sdc {
namespace {

// Interval endpoints scaled by kScale so every alpha cut has integer
// endpoints; degeneracy tests and shifts are then exact.
constexpr std::int64_t kScale = kAlphaLevels - 1;

struct Cut {
  std::int64_t lo;
  std::int64_t hi;
};

std::array<int, 4> sorted(const Ofn& a) {
  std::array<int, 4> c = a.components();
  std::sort(c.begin(), c.end());
  return c;
}

Cut alpha_cut(const std::array<int, 4>& c, std::int64_t base, int k) {
  return {(c[0] - base) * kScale + k * static_cast<std::int64_t>(c[1] - c[0]),
          (c[3] - base) * kScale - k * static_cast<std::int64_t>(c[3] - c[2])};
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Integral of the CDF of U[c, d] from c to x.
double cdf_integral(std::int64_t x, const Cut& y) {
  if (x <= y.lo) return 0.0;
  const double w = static_cast<double>(y.hi - y.lo);
  if (x >= y.hi) return w / 2.0 + static_cast<double>(x - y.hi);
  const double r = static_cast<double>(x - y.lo);
  return r * r / (2.0 * w);
}

// P(Y < X) for independent X ~ U[x], Y ~ U[y].
double prob_below(const Cut& x, const Cut& y) {
  const bool x_point = x.lo == x.hi;
  const bool y_point = y.lo == y.hi;
  if (x_point && y_point) return y.lo < x.lo ? 1.0 : 0.0;
  if (x_point) return clamp01(static_cast<double>(x.lo - y.lo) / static_cast<double>(y.hi - y.lo));
  if (y_point) return clamp01(static_cast<double>(x.hi - y.lo) / static_cast<double>(x.hi - x.lo));
  return clamp01((cdf_integral(x.hi, y) - cdf_integral(x.lo, y)) / static_cast<double>(x.hi - x.lo));
}

// Mean over alpha levels of P(second < first).
double mean_prob_below(const std::array<int, 4>& first, const std::array<int, 4>& second, std::int64_t base) {
  double sum = 0.0;
  for (int k = 0; k < kAlphaLevels; ++k) sum += prob_below(alpha_cut(first, base, k), alpha_cut(second, base, k));
  return sum / kAlphaLevels;
}

} // namespace

ComparisonResult prob_compare(const Ofn& a, const Ofn& b) {
  const auto sa = sorted(a);
  const auto sb = sorted(b);
  const std::int64_t base = std::min(sa[0], sb[0]);
  // Both fields come from the same routine with swapped roles, which makes
  // the anti-symmetry exact in floating point.
  return {mean_prob_below(sb, sa, base), mean_prob_below(sa, sb, base)};
}

ComparisonResult prob_compare_counting_oracle(std::span<const int> a, std::span<const int> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("counting comparison needs non-empty outcome sets");
  std::int64_t less = 0;
  std::int64_t greater = 0;
  for (int x : a)
    for (int y : b) {
      if (x < y) ++less;
      else if (x > y) ++greater;
    }
  const double total = static_cast<double>(a.size()) * static_cast<double>(b.size());
  return {static_cast<double>(less) / total, static_cast<double>(greater) / total};
}

bool more_effective(const StrategyEvaluation& a, const StrategyEvaluation& b) {
  const ComparisonResult cmp = prob_compare(a.objective, b.objective);
  return cmp.p_less > cmp.p_greater;
}

double conclusion_uncertainty(const ComparisonResult& cmp) {
  if (!(cmp.p_less > cmp.p_greater))
    throw std::invalid_argument("conclusion uncertainty is undefined unless p_less > p_greater");
  return std::clamp(1.0 - cmp.p_less + cmp.p_greater, 0.0, 1.0);
}

Decision decide(std::span<const StrategyEvaluation> evals) {
  if (evals.empty()) throw std::invalid_argument("decide: no strategies to compare");
  if (evals.size() == 1) return {evals.front().strategy, 0.0};

  for (std::size_t i = 0; i < evals.size(); ++i) {
    double worst = 0.0;
    bool dominates = true;
    for (std::size_t j = 0; j < evals.size() && dominates; ++j) {
      if (i == j) continue;
      const ComparisonResult cmp = prob_compare(evals[i].objective, evals[j].objective);
      if (cmp.p_less > cmp.p_greater) worst = std::max(worst, conclusion_uncertainty(cmp));
      else dominates = false;
    }
    // At most one strategy can beat every other one.
    if (dominates) return {evals[i].strategy, worst};
  }
  return {std::nullopt, 1.0};
}

} // namespace sdc
