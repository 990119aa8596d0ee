#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emvt/count.hpp"
#include "emvt/counting.hpp"
#include "emvt/digitset.hpp"

namespace emvt::carry {

using digitset::DigitSet;

/// A_t(h): ordered t-tuples of permitted digits summing to h.
struct DigitSumTupleSet {
  int t = 0;
  std::int64_t h = 0;
  std::vector<std::vector<std::uint64_t>> tuples;
};

DigitSumTupleSet tuples_with_digit_sum(const DigitSet& digits, int t, std::int64_t h);

/// |A_t(h)| for every h in [0, t * max digit].
std::vector<Count> digit_sum_counts(const DigitSet& digits, int t);

/// |Ã_t(h)|: pairs (u, v) of t-tuples with sum(u) - sum(v) = h.
Count paired_count(const DigitSet& digits, int t, std::int64_t h);

struct MaxTupleCount {
  Count count;
  std::int64_t argmax_h = 0;  // smallest h attaining the maximum
};

MaxTupleCount max_tuple_count(const DigitSet& digits, int t);

/// Carry DP outcome. The DP tracks carries over a range wider than
/// [1-t, t-1] so the reported extremes witness the range actually reached.
struct CarryDpResult {
  Count count;
  int min_carry = 0;
  int max_carry = 0;
};

/// Pairs (x, y) of t-tuples of length-D base-p digit strings over A_p
/// (value 0 and leading zeros included) with x = y = z mod p^c and
/// sum x = sum y mod p^d, counted digit by digit through the carries.
/// Throws InvalidRange unless 0 <= c <= d <= D.
CarryDpResult carry_dp_count(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z, int D);

/// Values in [0, p^D) whose D-digit string (with leading zeros) uses only A_p.
std::vector<std::uint64_t> digit_string_universe(const DigitSet& digits, int D);

/// G_{c,d}(z) by direct construction over an explicit universe of values:
/// the distribution of sum x_i mod p^d over class-restricted tuples, squared.
Count direct_congruence_count(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                              std::span<const std::uint64_t> universe);
double direct_congruence_count(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                               std::span<const std::uint64_t> universe, const counting::WeightAssignment& weights);

/// Same, over E(X) (positive members only).
Count direct_congruence_count(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                              std::uint64_t X);

/// Both sides of the diagonal-lifting comparison for one (c, d, z).
struct LiftingReport {
  std::uint64_t p = 0;
  std::string digits;
  int t = 0;
  int c = 0;
  int d = 0;
  std::vector<std::uint64_t> z;
  std::uint64_t X = 0;
  bool weighted = false;
  std::string lhs;       // decimal
  std::string rhs_core;  // decimal
  double lhs_value = 0.0;
  double rhs_value = 0.0;
  double ratio = 0.0;         // lhs / rhs_core, 1 when both vanish
  double bound_factor = 0.0;  // (max_h |A_t(h)|)^{d-c}
};

/// LHS = G_{c,d}(z); RHS_core = sum over u = z mod p^c of |sum_{x = u mod p^d} b_x|^2.
/// Throws InvariantViolation if LHS < RHS_core (diagonal solutions are a subset).
LiftingReport lifting_ratio_report(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                                 std::uint64_t X);
LiftingReport lifting_ratio_report(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                                 std::uint64_t X, const counting::WeightAssignment& weights);

}  // namespace emvt::carry
