#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "emvt/errors.hpp"

namespace emvt {

using u128 = unsigned __int128;

/// Exact nonnegative solution count backed by a 128-bit accumulator.
///
/// Every arithmetic operation is checked: wrapping throws OverflowError,
/// subtracting past zero throws InvariantViolation. Counts of the form
/// Y^{2s} exceed 64 bits at desk scale, which is why the engine never
/// accumulates exact counts in anything narrower.
class Count {
 public:
  constexpr Count() noexcept = default;
  constexpr Count(std::uint64_t v) noexcept : v_(v) {}  // NOLINT: implicit by design of literals

  static constexpr Count from_raw(u128 v) noexcept {
    Count c;
    c.v_ = v;
    return c;
  }

  constexpr u128 raw() const noexcept { return v_; }
  constexpr bool is_zero() const noexcept { return v_ == 0; }
  constexpr bool fits_u64() const noexcept { return (v_ >> 64) == 0; }
  std::uint64_t to_u64() const;  // throws OverflowError
  double to_double() const noexcept { return static_cast<double>(v_); }
  long double to_long_double() const noexcept { return static_cast<long double>(v_); }

  Count& operator+=(Count o) {
    if (__builtin_add_overflow(v_, o.v_, &v_)) throw OverflowError("count addition overflows 128 bits");
    return *this;
  }
  Count& operator-=(Count o) {
    if (o.v_ > v_) throw InvariantViolation("count subtraction would go negative");
    v_ -= o.v_;
    return *this;
  }
  Count& operator*=(Count o) {
    if (__builtin_mul_overflow(v_, o.v_, &v_)) throw OverflowError("count multiplication overflows 128 bits");
    return *this;
  }
  Count& operator/=(Count o) {
    if (o.v_ == 0) throw InvalidArgument("count division by zero");
    v_ /= o.v_;
    return *this;
  }
  Count& operator%=(Count o) {
    if (o.v_ == 0) throw InvalidArgument("count division by zero");
    v_ %= o.v_;
    return *this;
  }

  friend Count operator+(Count a, Count b) { return a += b; }
  friend Count operator-(Count a, Count b) { return a -= b; }
  friend Count operator*(Count a, Count b) { return a *= b; }
  friend Count operator/(Count a, Count b) { return a /= b; }
  friend Count operator%(Count a, Count b) { return a %= b; }

  friend constexpr bool operator==(Count a, Count b) noexcept { return a.v_ == b.v_; }
  friend constexpr std::strong_ordering operator<=>(Count a, Count b) noexcept {
    return a.v_ < b.v_ ? std::strong_ordering::less
                       : (a.v_ > b.v_ ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const;
  static Count parse(std::string_view text);  // throws ParseError

 private:
  u128 v_ = 0;
};

Count pow(Count base, unsigned exponent);

}  // namespace emvt
