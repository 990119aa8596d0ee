#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emvt/count.hpp"

namespace emvt::digitset {

bool is_prime(std::uint64_t n);

/// A prime base p > 2 together with its permitted digits A_p.
///
/// Invariants: p prime, p > 2; digits strictly increasing, each in [0, p-1];
/// 2 <= |digits| <= p - 1.
class DigitSet {
 public:
  std::uint64_t base() const noexcept { return p_; }
  std::span<const std::uint64_t> digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }
  std::uint64_t max_digit() const noexcept { return digits_.back(); }
  bool permits(std::uint64_t digit) const noexcept {
    return digit < p_ && allowed_[static_cast<std::size_t>(digit)];
  }
  // "0,1,4,9"
  std::string digits_string() const;

  friend bool operator==(const DigitSet&, const DigitSet&) = default;

 private:
  friend DigitSet make_digit_set(std::uint64_t p, std::vector<std::int64_t> digits);
  std::uint64_t p_ = 0;
  std::vector<std::uint64_t> digits_;
  std::vector<bool> allowed_;
};

/// Filters to [0, p-1], sorts and deduplicates, then validates.
/// Throws NonPrimeBase or InadmissibleDigits.
DigitSet make_digit_set(std::uint64_t p, std::vector<std::int64_t> digits);

/// Digits {k^2 : k^2 <= p-1}.
DigitSet squares_digit_set(std::uint64_t p);

/// A finite truncation of an ambient set A of nonnegative integers.
struct DigitSourceSet {
  std::vector<std::uint64_t> elements;  // strictly increasing
  std::string description;
};

/// Sorts and deduplicates; throws InvalidArgument on negative input.
DigitSourceSet make_source_set(std::vector<std::int64_t> elements, std::string description);
DigitSourceSet squares_up_to(std::uint64_t bound);
DigitSourceSet source_from_digits(const DigitSet& digits);

/// r_t(n): ordered t-tuples from the source summing to n, for 0 <= n <= max_n.
struct RepresentationProfile {
  int t = 0;
  std::uint64_t max_n = 0;
  std::vector<Count> counts;  // size max_n + 1
};

RepresentationProfile representation_counts(const DigitSourceSet& source, int t, std::uint64_t max_n);

/// Entry-wise convolution of two profiles, truncated to the smaller max_n.
RepresentationProfile convolve_profiles(const RepresentationProfile& a, const RepresentationProfile& b);

struct DeltaFitReport {
  double delta = 0.0;
  double max_ratio = 0.0;
  std::uint64_t argmax_n = 0;
};

/// max over 1 <= n <= max_n of r_t(n) / n^delta; smallest maximiser wins ties.
DeltaFitReport delta_fit(const RepresentationProfile& profile, double delta);

}  // namespace emvt::digitset
