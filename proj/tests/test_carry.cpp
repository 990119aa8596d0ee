#include <set>
#include <vector>

#include "doctest.h"
#include "emvt/carry.hpp"
#include "oracles.hpp"

using namespace emvt;
using namespace emvt::carry;
using Tuples = std::vector<std::vector<std::uint64_t>>;

namespace {

const auto kBinary = digitset::make_digit_set(3, {0, 1});
const auto kSquares11 = digitset::make_digit_set(11, {0, 1, 4, 9});

std::set<std::uint64_t> digit_set(const DigitSet& ds) { return {ds.digits().begin(), ds.digits().end()}; }

// Every z in [0, p^c)^t.
std::vector<std::vector<std::uint64_t>> all_z(std::uint64_t p, int c, int t) {
  const std::uint64_t m = oracle::pow_u64(p, c);
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> z(static_cast<std::size_t>(t), 0);
  while (true) {
    out.push_back(z);
    int pos = 0;
    while (pos < t && ++z[static_cast<std::size_t>(pos)] == m) z[static_cast<std::size_t>(pos++)] = 0;
    if (pos == t) break;
  }
  return out;
}

}  // namespace

TEST_CASE("digit-sum tuples") {
  CHECK(tuples_with_digit_sum(kBinary, 2, 1).tuples == Tuples{{0, 1}, {1, 0}});
  CHECK(tuples_with_digit_sum(kBinary, 2, 3).tuples.empty());
  CHECK(tuples_with_digit_sum(kSquares11, 2, 5).tuples == Tuples{{1, 4}, {4, 1}});
  CHECK(tuples_with_digit_sum(kBinary, 2, -1).tuples.empty());
}

TEST_CASE("maximal tuple counts") {
  auto m = max_tuple_count(kSquares11, 2);
  CHECK(m.count == Count(2));
  CHECK(m.argmax_h == 1);
  m = max_tuple_count(kBinary, 2);
  CHECK(m.count == Count(2));
  CHECK(m.argmax_h == 1);
  m = max_tuple_count(kBinary, 1);
  CHECK(m.count == Count(1));
  CHECK(m.argmax_h == 0);
}

TEST_CASE("completeness and pairing identities") {
  for (const auto& ds : {kBinary, kSquares11, digitset::make_digit_set(7, {0, 2, 3, 6})}) {
    for (int t = 1; t <= 4; ++t) {
      const auto counts = digit_sum_counts(ds, t);
      Count total;
      for (std::size_t h = 0; h < counts.size(); ++h) {
        total += counts[h];
        CHECK(counts[h] == Count(tuples_with_digit_sum(ds, t, static_cast<std::int64_t>(h)).tuples.size()));
      }
      CHECK(total == pow(Count(ds.size()), t));
      const auto n = static_cast<std::int64_t>(counts.size());
      for (std::int64_t h = -n; h <= n; ++h) {
        Count want;
        for (std::int64_t m = 0; m < n; ++m) {
          if (m - h >= 0 && m - h < n) want += counts[static_cast<std::size_t>(m)] * counts[static_cast<std::size_t>(m - h)];
        }
        CHECK(paired_count(ds, t, h) == want);
      }
    }
  }
}

TEST_CASE("carry DP small cases") {
  const std::vector<std::uint64_t> z0 = {0};
  // Values {0, 1}: only the diagonal is congruent mod 3.
  CHECK(carry_dp_count(kBinary, 1, 0, 1, z0, 1).count == Count(2));
  // Frozen from the pair-by-pair oracle over all 16 pairs of 2-digit strings.
  CHECK(carry_dp_count(kBinary, 1, 0, 1, z0, 2).count == Count(8));
  CHECK(oracle::congruence_tuple_pairs(oracle::digit_strings(3, {0, 1}, 2), 1, 1, 3, {0}) == 8);
  // t = 1 and c = d: the square of the class size.
  const std::vector<std::uint64_t> z1 = {1};
  const auto universe = digit_string_universe(kBinary, 3);
  std::uint64_t cls = 0;
  for (auto x : universe) cls += x % 3 == 1;
  CHECK(carry_dp_count(kBinary, 1, 1, 1, z1, 3).count == Count(cls * cls));
  // A forbidden digit in z empties the class.
  const std::vector<std::uint64_t> z2 = {2};
  CHECK(carry_dp_count(kBinary, 1, 1, 2, z2, 3).count == Count(0));
  CHECK_THROWS_AS(carry_dp_count(kBinary, 1, 2, 1, z1, 3), InvalidRange);
  CHECK_THROWS_AS(carry_dp_count(kBinary, 1, 1, 4, z1, 3), InvalidRange);
}

TEST_CASE("carry DP equals direct counting and the pair oracle") {
  for (const auto& ds : {kBinary, digitset::make_digit_set(5, {0, 1, 4}), digitset::make_digit_set(5, {1, 3})}) {
    const std::uint64_t p = ds.base();
    for (int D = 1; D <= 3; ++D) {
      const auto universe = digit_string_universe(ds, D);
      CHECK(universe == oracle::digit_strings(p, digit_set(ds), D));
      for (int t = 1; t <= 2; ++t) {
        for (int c = 0; c <= D; ++c) {
          for (int d = c; d <= D; ++d) {
            for (const auto& z : all_z(p, c, t)) {
              const auto dp = carry_dp_count(ds, t, c, d, z, D);
              const auto direct = direct_congruence_count(ds, t, c, d, z, universe);
              CHECK(dp.count == direct);
              if (D <= 2) {
                CHECK(dp.count == Count(oracle::congruence_tuple_pairs(universe, t, oracle::pow_u64(p, c),
                                                                       oracle::pow_u64(p, d), z)));
              }
              if (!dp.count.is_zero()) {
                CHECK(dp.min_carry >= 1 - t);
                CHECK(dp.max_carry <= t - 1);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("direct congruence counts over E(X)") {
  const std::vector<std::uint64_t> z0 = {0};
  CHECK(direct_congruence_count(kBinary, 1, 0, 1, z0, 4) == Count(5));
  // p^d > t X: congruence is equality.
  const std::vector<std::uint64_t> zz = {0, 0};
  const auto members = oracle::members(40, 3, {0, 1});
  std::uint64_t eq = 0;
  oracle::each_tuple(members, 2, [&](const std::vector<std::uint64_t>& x) {
    oracle::each_tuple(members, 2, [&](const std::vector<std::uint64_t>& y) { eq += x[0] + x[1] == y[0] + y[1]; });
  });
  CHECK(direct_congruence_count(kBinary, 2, 0, 5, zz, 40) == Count(eq));
  const std::vector<std::uint64_t> bad = {2};
  CHECK(direct_congruence_count(kBinary, 1, 1, 2, bad, 40) == Count(0));
}

TEST_CASE("lifting report") {
  const std::vector<std::uint64_t> zz = {0, 0};
  const auto r = lifting_ratio_report(kBinary, 2, 0, 2, zz, 9);
  CHECK(r.lhs == "36");
  CHECK(r.lhs_value >= r.rhs_value);
  CHECK(r.bound_factor == doctest::Approx(4.0));
  // c = d: the congruence is the class restriction itself.
  const std::vector<std::uint64_t> z11 = {1, 1};
  CHECK(lifting_ratio_report(kBinary, 2, 1, 1, z11, 100).ratio == doctest::Approx(1.0));
  // t = 1: sums are the variables, so the diagonal is everything.
  const std::vector<std::uint64_t> z1 = {1};
  CHECK(lifting_ratio_report(kBinary, 1, 1, 3, z1, 200).ratio == doctest::Approx(1.0));
  // Empty on both sides.
  const std::vector<std::uint64_t> z2 = {2};
  const auto empty = lifting_ratio_report(kBinary, 1, 1, 2, z2, 50);
  CHECK(empty.lhs == "0");
  CHECK(empty.ratio == 1.0);
}

TEST_CASE("lifting report: subset inequality across a grid") {
  const auto ds = digitset::make_digit_set(5, {0, 1, 4});
  counting::WeightAssignment w;
  for (std::uint64_t x = 1; x <= 200; ++x) w.set(x, 0.25 + 0.5 * static_cast<double>(x % 3) / 2.0);
  for (int t = 1; t <= 2; ++t) {
    for (int c = 0; c <= 2; ++c) {
      for (int d = c; d <= 3; ++d) {
        for (const auto& z : all_z(5, c, t)) {
          const auto r = lifting_ratio_report(ds, t, c, d, z, 200);
          CHECK(r.lhs_value >= r.rhs_value);
          CHECK(r.ratio >= 1.0);
          const auto rw = lifting_ratio_report(ds, t, c, d, z, 200, w);
          CHECK(rw.lhs_value >= rw.rhs_value * (1 - 1e-12));
        }
      }
    }
  }
}
