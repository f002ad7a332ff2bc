#include "sdc/ofn.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace sdc {

int div_round_half_away(int value, int divisor) {
  if (divisor < 1) throw std::invalid_argument("divisor must be >= 1");
  // Widen so 2*|value| cannot overflow.
  const long long mag = std::llabs(static_cast<long long>(value));
  const long long q = (2 * mag + divisor) / (2LL * divisor);
  return static_cast<int>(value < 0 ? -q : q);
}

Ofn scalar_div(const Ofn& a, int n) {
  if (n < 1) throw std::invalid_argument("scalar_div: vehicle count must be >= 1");
  return {div_round_half_away(a[0], n), div_round_half_away(a[1], n), div_round_half_away(a[2], n),
          div_round_half_away(a[3], n)};
}

Ofn s_c(const Ofn& a, Condition cond) {
  int satisfied = 0;
  for (int v : a.components())
    if (cond.holds(v)) ++satisfied;
  auto bit = [&](int i) { return satisfied >= 5 - i ? 1 : 0; };
  return {bit(1), bit(2), bit(3), bit(4)};
}

std::string to_string(const Ofn& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) out += ',';
    out += std::to_string(a[i]);
  }
  out += ')';
  return out;
}

Ofn parse_ofn(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("malformed fuzzy number: '" + std::string(text) + "'"); };
  auto skip_ws = [&](std::size_t& i) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  std::size_t i = 0;
  skip_ws(i);
  if (i >= text.size() || text[i] != '(') throw fail();
  ++i;
  std::array<int, 4> v{};
  for (std::size_t k = 0; k < 4; ++k) {
    skip_ws(i);
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v[k]);
    if (ec != std::errc{}) throw fail();
    i = static_cast<std::size_t>(ptr - text.data());
    skip_ws(i);
    const char expected = k < 3 ? ',' : ')';
    if (i >= text.size() || text[i] != expected) throw fail();
    ++i;
  }
  skip_ws(i);
  if (i != text.size()) throw fail();
  return {v[0], v[1], v[2], v[3]};
}

std::ostream& operator<<(std::ostream& os, const Ofn& a) { return os << to_string(a); }

} // namespace sdc
