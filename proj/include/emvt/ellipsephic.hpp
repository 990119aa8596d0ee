#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emvt/count.hpp"
#include "emvt/digitset.hpp"

namespace emvt::ellipsephic {

using digitset::DigitSet;

/// Base-p expansion, least significant digit first. Zero has the single digit 0.
struct DigitExpansion {
  std::vector<std::uint64_t> digits;
  std::uint64_t value = 0;
};

DigitExpansion expand(std::uint64_t n, std::uint64_t p);
/// Most-significant-first with base suffix, e.g. 4 in base 3 is "11_3".
std::string format_expansion(const DigitExpansion& e, std::uint64_t p);

/// The positive integers whose base-p digits all lie in A_p. Zero is never a member.
class EllipsephicSet {
 public:
  explicit EllipsephicSet(DigitSet digits) : digits_(std::move(digits)) {}

  const DigitSet& digit_set() const noexcept { return digits_; }
  std::uint64_t base() const noexcept { return digits_.base(); }

  bool contains(std::uint64_t n) const noexcept;

  /// Members in [1, X], ascending. Generated digit by digit, O(output * log_p X).
  std::vector<std::uint64_t> enumerate_up_to(std::uint64_t X) const;

  /// #E(X) by digit DP.
  Count count_up_to(std::uint64_t X) const;

  /// Members of E(X) congruent to xi mod p^a. Empty when no member can lie
  /// in the class (xi's low digits forbidden).
  std::vector<std::uint64_t> class_members(std::uint64_t xi, int a, std::uint64_t X) const;

  /// Residues xi in [0, p^a) whose class mod p^a meets E: the a-digit
  /// strings over A_p, together with members of E below p^a.
  std::vector<std::uint64_t> class_labels(int a) const;

 private:
  DigitSet digits_;
};

/// p^e, throwing OverflowError when it does not fit 64 bits.
std::uint64_t checked_pow(std::uint64_t p, int e);

/// True when every one of the `width` low base-p digits of v is permitted
/// (positions above v's own length read as 0).
bool padded_digits_permitted(const DigitSet& ds, std::uint64_t v, int width);

}  // namespace emvt::ellipsephic
