#include "emvt/count.hpp"

#include <algorithm>

namespace emvt {

std::uint64_t Count::to_u64() const {
  if (!fits_u64()) throw OverflowError("count " + to_string() + " does not fit 64 bits");
  return static_cast<std::uint64_t>(v_);
}

std::string Count::to_string() const {
  if (v_ == 0) return "0";
  std::string out;
  u128 v = v_;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Count Count::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty count", 0);
  Count c;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw ParseError("invalid digit in count '" + std::string(text) + "'", 0);
    try {
      c *= Count(10);
      c += Count(static_cast<std::uint64_t>(ch - '0'));
    } catch (const OverflowError&) {
      throw ParseError("count '" + std::string(text) + "' exceeds 128 bits", 0);
    }
  }
  return c;
}

Count pow(Count base, unsigned exponent) {
  Count result(1);
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return result;
}

}  // namespace emvt
