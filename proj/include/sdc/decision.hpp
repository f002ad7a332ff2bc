#pragma once

#include <optional>
#include <span>

#include "sdc/ofn.hpp"

namespace sdc {

using StrategyId = int;

struct StrategyEvaluation {
  StrategyId strategy = 0;
  Ofn objective; // predicted average delay, s/vehicle
};

struct ComparisonResult {
  double p_less = 0.0;
  double p_greater = 0.0;
};

/// Chosen strategy and its uncertainty. `chosen` is empty when no strategy
/// is more effective than every other one.
struct Decision {
  std::optional<StrategyId> chosen;
  double uncertainty = 1.0;
};

/// Number of alpha levels used by prob_compare.
inline constexpr int kAlphaLevels = 101;

/// P(A < B) and P(A > B) for two ordered fuzzy numbers read as trapezoids.
///
/// Each alpha level alpha = k / (kAlphaLevels - 1) yields the interval
/// [a1 + alpha (a2 - a1), a4 - alpha (a4 - a3)]; the two intervals are
/// treated as independent uniform variables (point masses when degenerate)
/// and the per-level probabilities are averaged. Inputs are sorted first.
/// Exactly anti-symmetric: prob_compare(b, a) swaps the fields.
ComparisonResult prob_compare(const Ofn& a, const Ofn& b);

/// Literal cardinality-count comparison of two finite outcome sets (with
/// multiplicity). Throws std::invalid_argument on an empty set.
ComparisonResult prob_compare_counting_oracle(std::span<const int> a, std::span<const int> b);

/// `a` is more effective (lower objective) than `b`.
bool more_effective(const StrategyEvaluation& a, const StrategyEvaluation& b);

/// 1 - p_less + p_greater; throws std::invalid_argument unless
/// p_less > p_greater.
double conclusion_uncertainty(const ComparisonResult& cmp);

/// Picks the strategy more effective than all others, with the largest
/// pairwise conclusion uncertainty as the decision uncertainty. No dominant
/// strategy gives an empty choice with uncertainty 1. Throws
/// std::invalid_argument on an empty list.
Decision decide(std::span<const StrategyEvaluation> evals);

} // namespace sdc
