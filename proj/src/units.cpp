#include "detroute/units.hpp"

namespace detroute {

std::string format_scaled(std::int64_t value, std::int64_t scale) {
  if (scale <= 0) throw std::invalid_argument("format_scaled: scale must be positive");
  bool neg = value < 0;
  std::uint64_t v = neg ? static_cast<std::uint64_t>(-(value + 1)) + 1 : static_cast<std::uint64_t>(value);
  std::uint64_t s = static_cast<std::uint64_t>(scale);
  std::uint64_t whole = v / s;
  std::uint64_t frac = v % s;
  std::string out = (neg ? "-" : "") + std::to_string(whole);
  if (frac != 0) {
    std::string digits;
    for (std::uint64_t d = s / 10; d >= 1; d /= 10) {
      digits.push_back(static_cast<char>('0' + (frac / d) % 10));
      if (d == 1) break;
    }
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out.push_back('.');
    out += digits;
  }
  return out;
}

}  // namespace detroute
