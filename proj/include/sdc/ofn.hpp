#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sdc {

/// Ordered fuzzy number carried as four raw integers (a1, a2, a3, a4).
///
/// The algebra is component-wise and never reorders components, so an
/// instance is not required to be sorted. Units come from context: cells,
/// cells per step, time steps or vehicles.
class Ofn {
public:
  constexpr Ofn() = default;
  constexpr Ofn(int a1, int a2, int a3, int a4) : m_a{a1, a2, a3, a4} {}

  static constexpr Ofn crisp(int k) { return {k, k, k, k}; }

  constexpr int operator[](std::size_t i) const { return m_a[i]; }
  constexpr const std::array<int, 4>& components() const { return m_a; }

  constexpr bool is_crisp() const { return m_a[0] == m_a[1] && m_a[1] == m_a[2] && m_a[2] == m_a[3]; }
  constexpr bool is_sorted() const { return m_a[0] <= m_a[1] && m_a[1] <= m_a[2] && m_a[2] <= m_a[3]; }
  constexpr int min_component() const {
    int m = m_a[0];
    for (int v : m_a) m = v < m ? v : m;
    return m;
  }
  constexpr int max_component() const {
    int m = m_a[0];
    for (int v : m_a) m = v > m ? v : m;
    return m;
  }
  /// a4 - a1 for sorted numbers.
  constexpr int support_width() const { return m_a[3] - m_a[0]; }

  friend constexpr Ofn operator+(const Ofn& a, const Ofn& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
  }
  friend constexpr Ofn operator-(const Ofn& a, const Ofn& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
  }
  Ofn& operator+=(const Ofn& b) { return *this = *this + b; }
  Ofn& operator-=(const Ofn& b) { return *this = *this - b; }

  /// Fuzzy equality: all four integers equal.
  friend constexpr bool operator==(const Ofn&, const Ofn&) = default;

private:
  std::array<int, 4> m_a{};
};

constexpr Ofn cwise_min(const Ofn& a, const Ofn& b) {
  auto lo = [](int x, int y) { return x < y ? x : y; };
  return {lo(a[0], b[0]), lo(a[1], b[1]), lo(a[2], b[2]), lo(a[3], b[3])};
}

constexpr Ofn cwise_max(const Ofn& a, const Ofn& b) {
  auto hi = [](int x, int y) { return x > y ? x : y; };
  return {hi(a[0], b[0]), hi(a[1], b[1]), hi(a[2], b[2]), hi(a[3], b[3])};
}

/// Integer division rounded to nearest, ties away from zero.
int div_round_half_away(int value, int divisor);

/// Each component divided by a vehicle count and rounded to nearest
/// (ties away from zero). Throws std::invalid_argument when n < 1.
Ofn scalar_div(const Ofn& a, int n);

/// Single-integer predicate used by the condition-satisfaction operator.
struct Condition {
  enum class Op { Equal, Greater, Less };
  Op op = Op::Equal;
  int k = 0;

  static constexpr Condition equal(int k) { return {Op::Equal, k}; }
  static constexpr Condition greater(int k) { return {Op::Greater, k}; }
  static constexpr Condition less(int k) { return {Op::Less, k}; }

  constexpr bool holds(int v) const {
    switch (op) {
    case Op::Equal: return v == k;
    case Op::Greater: return v > k;
    case Op::Less: return v < k;
    }
    return false;
  }
};

/// Confidence that `cond` holds for `a`: with c satisfying components
/// (counted with multiplicity), s_i = 1 iff c >= 5 - i.
Ofn s_c(const Ofn& a, Condition cond);

/// "(a1,a2,a3,a4)"
std::string to_string(const Ofn& a);
/// Inverse of to_string; throws std::invalid_argument on malformed text.
Ofn parse_ofn(std::string_view text);
std::ostream& operator<<(std::ostream& os, const Ofn& a);

} // namespace sdc
