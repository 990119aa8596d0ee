#include "emvt/carry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <type_traits>

#include "emvt/ellipsephic.hpp"

namespace emvt::carry {

DigitSumTupleSet tuples_with_digit_sum(const DigitSet& digits, int t, std::int64_t h) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
  DigitSumTupleSet out;
  out.t = t;
  out.h = h;
  if (h < 0 || h > static_cast<std::int64_t>(t * digits.max_digit())) return out;
  const auto allowed = digits.digits();
  std::vector<std::size_t> index(static_cast<std::size_t>(t), 0);
  while (true) {
    std::int64_t sum = 0;
    for (auto i : index) sum += static_cast<std::int64_t>(allowed[i]);
    if (sum == h) {
      std::vector<std::uint64_t> tuple;
      for (auto i : index) tuple.push_back(allowed[i]);
      out.tuples.push_back(std::move(tuple));
    }
    // Last coordinate varies fastest: tuples come out lexicographically.
    int pos = t - 1;
    while (pos >= 0 && ++index[static_cast<std::size_t>(pos)] == allowed.size()) index[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return out;
}

std::vector<Count> digit_sum_counts(const DigitSet& digits, int t) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
  std::vector<Count> counts{Count(1)};
  for (int k = 0; k < t; ++k) {
    std::vector<Count> next(counts.size() + digits.max_digit(), Count{});
    for (std::size_t h = 0; h < counts.size(); ++h) {
      if (counts[h].is_zero()) continue;
      for (auto d : digits.digits()) next[h + d] += counts[h];
    }
    counts = std::move(next);
  }
  return counts;
}

namespace {

Count paired_from(const std::vector<Count>& counts, std::int64_t h) {
  Count total;
  const auto n = static_cast<std::int64_t>(counts.size());
  for (std::int64_t m = std::max<std::int64_t>(0, h); m < n && m - h < n; ++m) {
    if (m - h < 0) continue;
    total += counts[static_cast<std::size_t>(m)] * counts[static_cast<std::size_t>(m - h)];
  }
  return total;
}

}  // namespace

Count paired_count(const DigitSet& digits, int t, std::int64_t h) { return paired_from(digit_sum_counts(digits, t), h); }

MaxTupleCount max_tuple_count(const DigitSet& digits, int t) {
  const auto counts = digit_sum_counts(digits, t);
  MaxTupleCount best;
  for (std::size_t h = 0; h < counts.size(); ++h) {
    if (counts[h] > best.count) {
      best.count = counts[h];
      best.argmax_h = static_cast<std::int64_t>(h);
    }
  }
  return best;
}

CarryDpResult carry_dp_count(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z, int D) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
  if (c < 0 || c > d || d > D) throw InvalidRange("carry DP needs 0 <= c <= d <= D");
  if (!z.empty() && z.size() != static_cast<std::size_t>(t)) throw InvalidArgument("z must have t entries");
  const std::uint64_t p = digits.base();
  const std::uint64_t class_modulus = ellipsephic::checked_pow(p, c);

  CarryDpResult result;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] >= class_modulus) throw InvalidArgument("z entries must lie in [0, p^c)");
    if (!ellipsephic::padded_digits_permitted(digits, z[i], c)) return result;
  }

  const auto sums = digit_sum_counts(digits, t);
  // A carry out of a position is (delta + carry_in) / p with |delta| <= t(p-1);
  // starting from 0, |carry| <= t is closed under that map.
  const int width = t;
  const auto states = static_cast<std::size_t>(2 * width + 1);
  std::vector<Count> dp(states, Count{});
  dp[static_cast<std::size_t>(width)] = Count(1);  // carry into position c is 0

  const auto pi = static_cast<std::int64_t>(p);
  int min_carry = std::numeric_limits<int>::max();
  int max_carry = std::numeric_limits<int>::min();
  for (int r = c; r < d; ++r) {
    std::vector<Count> next(states, Count{});
    for (int prev = -width; prev <= width; ++prev) {
      const Count& ways_in = dp[static_cast<std::size_t>(prev + width)];
      if (ways_in.is_zero()) continue;
      for (int carry = -width; carry <= width; ++carry) {
        const Count ways = paired_from(sums, carry * pi - prev);
        if (ways.is_zero()) continue;
        next[static_cast<std::size_t>(carry + width)] += ways_in * ways;
        min_carry = std::min(min_carry, carry);
        max_carry = std::max(max_carry, carry);
      }
    }
    dp = std::move(next);
  }
  for (const auto& v : dp) result.count += v;
  // Positions d..D-1 are unconstrained for all 2t variables.
  result.count *= pow(Count(digits.size()), static_cast<unsigned>(2 * t * (D - d)));
  if (c < d && min_carry <= max_carry) {
    result.min_carry = min_carry;
    result.max_carry = max_carry;
  }
  return result;
}

std::vector<std::uint64_t> digit_string_universe(const DigitSet& digits, int D) {
  if (D < 0) throw InvalidArgument("D must be >= 0");
  std::vector<std::uint64_t> values{0};
  std::uint64_t weight = 1;
  for (int pos = 0; pos < D; ++pos) {
    std::vector<std::uint64_t> next;
    next.reserve(values.size() * digits.size());
    for (auto dgt : digits.digits()) {
      for (auto v : values) next.push_back(v + dgt * weight);
    }
    values = std::move(next);
    if (pos + 1 < D && __builtin_mul_overflow(weight, digits.base(), &weight))
      throw OverflowError("p^D does not fit 64 bits");
  }
  std::sort(values.begin(), values.end());
  return values;
}

namespace {

struct Moduli {
  std::uint64_t class_mod = 1;  // p^c
  bool reduce_sums = true;      // false when p^d exceeds 64 bits
  std::uint64_t sum_mod = 1;    // p^d
};

Moduli moduli_for(std::uint64_t p, int c, int d) {
  if (c < 0 || c > d) throw InvalidRange("need 0 <= c <= d");
  Moduli m;
  m.class_mod = ellipsephic::checked_pow(p, c);
  for (int i = 0; i < d; ++i) {
    if (__builtin_mul_overflow(m.sum_mod, p, &m.sum_mod)) {
      m.reduce_sums = false;
      break;
    }
  }
  return m;
}

template <class Mass>
Mass direct_impl(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                 std::span<const std::uint64_t> universe, const counting::WeightAssignment* weights) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
  if (!z.empty() && z.size() != static_cast<std::size_t>(t)) throw InvalidArgument("z must have t entries");
  const Moduli m = moduli_for(digits.base(), c, d);
  auto residue = [&](std::uint64_t v) { return m.reduce_sums ? v % m.sum_mod : v; };

  std::map<std::uint64_t, Mass> sums{{0, Mass(1)}};
  for (int i = 0; i < t; ++i) {
    const std::uint64_t zi = z.empty() ? 0 : z[static_cast<std::size_t>(i)];
    std::map<std::uint64_t, Mass> cls;
    for (auto x : universe) {
      if (x % m.class_mod != zi) continue;
      Mass w;
      if constexpr (std::is_same_v<Mass, Count>) {
        w = Count(1);
      } else {
        w = weights->weight(x);
        if (w == 0.0) continue;
      }
      cls[residue(x)] += w;
    }
    std::map<std::uint64_t, Mass> next;
    for (const auto& [s, ws] : sums) {
      for (const auto& [r, wr] : cls) {
        std::uint64_t key = 0;
        if (m.reduce_sums) {
          key = static_cast<std::uint64_t>((static_cast<u128>(s) + r) % m.sum_mod);
        } else if (__builtin_add_overflow(s, r, &key)) {
          throw OverflowError("digit sums overflow");
        }
        next[key] += ws * wr;
      }
    }
    sums = std::move(next);
  }
  Mass total{};
  for (const auto& [key, w] : sums) total += w * w;
  return total;
}

template <class Mass>
Mass diagonal_impl(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                   std::span<const std::uint64_t> universe, const counting::WeightAssignment* weights) {
  const Moduli m = moduli_for(digits.base(), c, d);
  Mass product(1);
  for (int i = 0; i < t; ++i) {
    const std::uint64_t zi = z.empty() ? 0 : z[static_cast<std::size_t>(i)];
    std::map<std::uint64_t, Mass> by_residue;
    for (auto x : universe) {
      if (x % m.class_mod != zi) continue;
      if constexpr (std::is_same_v<Mass, Count>) {
        by_residue[m.reduce_sums ? x % m.sum_mod : x] += Count(1);
      } else {
        by_residue[m.reduce_sums ? x % m.sum_mod : x] += weights->weight(x);
      }
    }
    Mass factor{};
    for (const auto& [r, w] : by_residue) factor += w * w;
    product *= factor;
  }
  return product;
}

std::string format_mass(const Count& c) { return c.to_string(); }
std::string format_mass(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
double mass_value(const Count& c) { return c.to_double(); }
double mass_value(double v) { return v; }

template <class Mass>
LiftingReport report_impl(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                         std::uint64_t X, const counting::WeightAssignment* weights) {
  const auto universe = ellipsephic::EllipsephicSet(digits).enumerate_up_to(X);
  const Mass lhs = direct_impl<Mass>(digits, t, c, d, z, universe, weights);
  const Mass rhs = diagonal_impl<Mass>(digits, t, c, d, z, universe, weights);

  LiftingReport r;
  r.p = digits.base();
  r.digits = digits.digits_string();
  r.t = t;
  r.c = c;
  r.d = d;
  r.z.assign(z.begin(), z.end());
  if (r.z.empty()) r.z.assign(static_cast<std::size_t>(t), 0);
  r.X = X;
  r.weighted = !std::is_same_v<Mass, Count>;
  r.lhs = format_mass(lhs);
  r.rhs_core = format_mass(rhs);
  r.lhs_value = mass_value(lhs);
  r.rhs_value = mass_value(rhs);
  if constexpr (std::is_same_v<Mass, Count>) {
    if (lhs < rhs) throw InvariantViolation("G_{c,d}(z) fell below its diagonal part");
  } else {
    if (lhs < rhs * (1.0 - 1e-9)) throw InvariantViolation("G_{c,d}(z) fell below its diagonal part");
  }
  r.ratio = r.rhs_value == 0.0 ? 1.0 : r.lhs_value / r.rhs_value;
  r.bound_factor = std::pow(max_tuple_count(digits, t).count.to_double(), d - c);
  return r;
}

}  // namespace

Count direct_congruence_count(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                              std::span<const std::uint64_t> universe) {
  return direct_impl<Count>(digits, t, c, d, z, universe, nullptr);
}

double direct_congruence_count(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                               std::span<const std::uint64_t> universe, const counting::WeightAssignment& weights) {
  return direct_impl<double>(digits, t, c, d, z, universe, &weights);
}

Count direct_congruence_count(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                              std::uint64_t X) {
  const auto universe = ellipsephic::EllipsephicSet(digits).enumerate_up_to(X);
  return direct_impl<Count>(digits, t, c, d, z, universe, nullptr);
}

LiftingReport lifting_ratio_report(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                                 std::uint64_t X) {
  return report_impl<Count>(digits, t, c, d, z, X, nullptr);
}

LiftingReport lifting_ratio_report(const DigitSet& digits, int t, int c, int d, std::span<const std::uint64_t> z,
                                 std::uint64_t X, const counting::WeightAssignment& weights) {
  return report_impl<double>(digits, t, c, d, z, X, &weights);
}

}  // namespace emvt::carry
