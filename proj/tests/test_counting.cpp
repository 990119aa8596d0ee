#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "emvt/counting.hpp"
#include "oracles.hpp"

using namespace emvt;
using namespace emvt::counting;
using ellipsephic::EllipsephicSet;

namespace {

EllipsephicSet make(std::uint64_t p, std::vector<std::int64_t> digits) {
  return EllipsephicSet(digitset::make_digit_set(p, std::move(digits)));
}

std::set<std::uint64_t> digits_of(const EllipsephicSet& e) {
  return {e.digit_set().digits().begin(), e.digit_set().digits().end()};
}

Count oracle_count(const EllipsephicSet& e, std::uint64_t X, int s) {
  return Count::from_raw(oracle::vinogradov(oracle::members(X, e.base(), digits_of(e)), s));
}

const EllipsephicSet kBinary3 = make(3, {0, 1});

}  // namespace

TEST_CASE("base distribution") {
  const auto d = base_distribution(kBinary3, 4);
  REQUIRE(d.size() == 3);
  CHECK(d.mass_at({1, 1}) == Count(1));
  CHECK(d.mass_at({3, 9}) == Count(1));
  CHECK(d.mass_at({4, 16}) == Count(1));

  auto w = WeightAssignment::unit();
  w.set(3, 0.0);
  const auto dw = base_distribution(kBinary3, 4, w);
  CHECK(dw.size() == 2);
  CHECK(dw.mass_at({3, 9}) == 0.0);
  CHECK(dw.mass_at({4, 16}) == 1.0);

  CHECK(base_distribution(make(5, {2, 3}), 1).empty());
}

TEST_CASE("convolution") {
  const auto d = base_distribution(kBinary3, 4);
  const auto d2 = convolve(d, d);
  CHECK(d2.folds() == 2);
  CHECK(d2.total_mass() == Count(9));
  CHECK(d2.size() <= 6);
  CHECK(d2.mass_at({4, 10}) == Count(2));  // (1,3) and (3,1)
  CHECK(d2.mass_at({2, 2}) == Count(1));
  CHECK(convolve(d, MomentDistribution{}).empty());
  CHECK(convolve(MomentDistribution{}, d).empty());
  // Symmetric and asymmetric kernels agree.
  const auto copy = d;
  CHECK(convolve(d, copy) == d2);
}

TEST_CASE("convolution respects the memory budget") {
  EngineConfig cfg;
  cfg.memory_budget_bytes = 1024;
  const auto d = base_distribution(make(5, {0, 1, 4}), 625);
  CHECK_THROWS_AS(convolve(d, d, cfg), MemoryBudgetExceeded);
  CHECK_THROWS_AS(vinogradov_count(make(5, {0, 1, 4}), 625, 4, cfg, Strategy::FullConvolution),
                  MemoryBudgetExceeded);
}

TEST_CASE("energy and its streamed product form") {
  const auto base = base_distribution(kBinary3, 13);
  const auto d3 = power(base, 3);
  // 7^6 pairs of triples checked one by one.
  CHECK(energy(d3) == Count(1681));
  CHECK(oracle::vinogradov_pairs(oracle::members(13, 3, {0, 1}), 3) == 1681);
  CHECK(energy_of_product(power(base, 2), base) == Count(1681));
  CHECK(energy_of_product(base, power(base, 2)) == Count(1681));
  const auto d2 = power(base, 2);
  CHECK(inner_product(d2, d2) == energy(d2));
  CHECK(add(d2, d2).total_mass() == Count(98));
  CHECK_THROWS_AS(add(d2, d3), InvalidArgument);
}

TEST_CASE("fold reduces keys coordinate-wise") {
  const auto d = base_distribution(kBinary3, 4);
  const auto f = fold(d, 3);
  CHECK(f.mass_at({1, 1}) == Count(2));  // 1 and 4
  CHECK(f.mass_at({0, 0}) == Count(1));  // 3
  CHECK_THROWS_AS(fold(d, 0), InvalidArgument);
}

TEST_CASE("small counts") {
  CHECK(vinogradov_count(kBinary3, 13, 1).count == Count(7));
  const auto r = vinogradov_count(kBinary3, 13, 2);
  CHECK(r.count == Count(91));
  CHECK(r.Y == Count(7));
  CHECK(brute_force_count(kBinary3, 13, 1) == Count(7));
  CHECK(brute_force_count(kBinary3, 13, 2) == Count(91));
  CHECK(brute_force_count(make(5, {0, 1, 4}), 25, 2) == Count(153));
  CHECK(vinogradov_count(make(5, {2, 3}), 1, 3).count == Count(0));
}

TEST_CASE("engine matches the oracles and closed forms") {
  EngineConfig cfg;
  cfg.oracle_cap = 100'000'000'000ull;
  for (auto [p, digits] : {std::pair<std::uint64_t, std::vector<std::int64_t>>{3, {0, 1}},
                           {5, {0, 1, 4}}, {5, {2, 3}}, {7, {0, 3, 5}}, {11, {0, 1, 4, 9}}}) {
    const auto e = make(p, digits);
    for (std::uint64_t X : {10ull, 50ull, 121ull}) {
      const Count Y = e.count_up_to(X);
      for (int s = 1; s <= 3; ++s) {
        const auto c = vinogradov_count(e, X, s, cfg).count;
        CHECK(c == brute_force_count(e, X, s, cfg));
        CHECK(c == oracle_count(e, X, s));
        CHECK(c >= pow(Y, s));
        CHECK(c <= pow(Y, 2 * s));
      }
      CHECK(vinogradov_count(e, X, 1, cfg).count == Y);
      CHECK(vinogradov_count(e, X, 2, cfg).count == Count(2) * Y * Y - Y);
    }
  }
}

TEST_CASE("strategies return identical integers") {
  for (auto [p, digits, X] : {std::tuple<std::uint64_t, std::vector<std::int64_t>, std::uint64_t>{3, {0, 1}, 243},
                              {5, {0, 1, 4}, 125}, {7, {1, 2, 4}, 200}}) {
    const auto e = make(p, digits);
    for (int s = 1; s <= 5; ++s) {
      const auto full = vinogradov_count(e, X, s, {}, Strategy::FullConvolution);
      const auto mitm = vinogradov_count(e, X, s, {}, Strategy::MeetInTheMiddle);
      CHECK(full.count == mitm.count);
      CHECK(full.method == std::string(s == 1 ? "direct" : "full-convolution"));
    }
  }
}

TEST_CASE("worker count does not change results") {
  const auto e = make(5, {0, 1, 4});
  EngineConfig one, many;
  many.threads = 4;
  for (int s = 2; s <= 6; ++s) {
    CHECK(vinogradov_count(e, 125, s, one, Strategy::MeetInTheMiddle).count ==
          vinogradov_count(e, 125, s, many, Strategy::MeetInTheMiddle).count);
  }
}

TEST_CASE("oracle cap") {
  EngineConfig cfg;
  cfg.oracle_cap = 1000;
  CHECK_THROWS_AS(brute_force_count(kBinary3, 13, 2, cfg), OracleTooLarge);
}

TEST_CASE("weights") {
  const auto e = make(5, {0, 1, 4});
  const std::uint64_t X = 60;
  const auto unit = WeightAssignment::unit();
  for (int s = 1; s <= 3; ++s) {
    CHECK(vinogradov_count(e, X, s, unit).value == doctest::Approx(vinogradov_count(e, X, s).count.to_double()));
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  WeightAssignment w;
  for (auto x : e.enumerate_up_to(X)) w.set(x, unif(rng));
  const auto members = e.enumerate_up_to(X);
  for (int s = 1; s <= 3; ++s) {
    const double want = oracle::vinogradov_weighted(members, s, [&](std::uint64_t x) { return w.weight(x); });
    CHECK(vinogradov_count(e, X, s, w).value == doctest::Approx(want).epsilon(1e-12));
    CHECK(vinogradov_count(e, X, s, w, {}, Strategy::MeetInTheMiddle).value ==
          doctest::Approx(want).epsilon(1e-12));
  }
  CHECK_THROWS_AS(w.set(1, 1.5), InvalidArgument);
  CHECK_THROWS_AS(w.set(1, -0.1), InvalidArgument);
  CHECK(WeightAssignment{}.weight(4) == 0.0);
}

TEST_CASE("class norms") {
  CHECK(class_norm(kBinary3, 13, 1, 1).value2 == Count(4));
  CHECK(class_norm(kBinary3, 13, 0, 1).value2 == Count(3));
  CHECK(class_norm(kBinary3, 13, 0, 0).value2 == Count(7));
  CHECK(class_norm(kBinary3, 13, 2, 0).value2 == Count(7));
  CHECK(class_norm(kBinary3, 13, 2, 1).value2 == Count(0));
}

TEST_CASE("class norms sum to the total norm") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (auto [p, digits] : {std::pair<std::uint64_t, std::vector<std::int64_t>>{3, {0, 1}},
                           {5, {1, 4}}, {11, {0, 1, 4, 9}}}) {
    const auto e = make(p, digits);
    const std::uint64_t X = 300;
    WeightAssignment w;
    for (auto x : e.enumerate_up_to(X)) w.set(x, unif(rng));
    const Count total = class_norm(e, X, 0, 0).value2;
    const double wtotal = class_norm(e, X, 0, 0, w).value2;
    for (int a = 1; ellipsephic::checked_pow(p, a) <= X; ++a) {
      Count sum;
      double wsum = 0;
      for (auto xi : e.class_labels(a)) {
        sum += class_norm(e, X, xi, a).value2;
        wsum += class_norm(e, X, xi, a, w).value2;
      }
      CHECK(sum == total);
      CHECK(std::abs(wsum - wtotal) <= 1e-9 * wtotal);
    }
  }
}

TEST_CASE("restricted energy") {
  // Counted over all 4^2 * 3^4 class-restricted tuples.
  const auto r = restricted_energy(kBinary3, 13, 1, 1, 1, 1, 0);
  CHECK(r.raw == Count(60));
  CHECK(r.normalization == doctest::Approx(1.0 / (4.0 * 9.0)));
  CHECK(restricted_energy(kBinary3, 13, 1, 1, 1, 0, 1).raw == Count(84));
  CHECK(restricted_energy(kBinary3, 13, 1, 1, 1, 2, 0).raw == Count(0));
  CHECK(restricted_energy(kBinary3, 13, 1, 1, 1, 2, 0).normalization == 0.0);
  for (int t = 1; t <= 2; ++t) {
    CHECK(restricted_energy(kBinary3, 40, t, 0, 0, 0, 0).raw == vinogradov_count(kBinary3, 40, 3 * t).count);
  }
}

TEST_CASE("exact divisibility") {
  CHECK(exactly_divides(3, 0, 1, 0));
  CHECK(exactly_divides(3, 1, 3, 0));
  CHECK_FALSE(exactly_divides(3, 1, 9, 0));
  CHECK_FALSE(exactly_divides(3, 0, 3, 0));
  CHECK(exactly_divides(3, 2, 0, 18));
  CHECK_FALSE(exactly_divides(3, 0, 5, 5));
}

TEST_CASE("aggregate over class pairs") {
  // Only (1,0) and (0,1) have a difference exactly divisible by 3^0; class 2 is empty.
  // Each term is rho_a^2 rho_b^2 times the normalized count: 60/3 + 84/4, over 7^2.
  CHECK(k_aggregate(kBinary3, 13, 1, 1, 1, 1) == doctest::Approx(41.0 / 49.0).epsilon(1e-12));
  // 3^2 cannot exactly divide a nonzero difference of labels below 3.
  CHECK(k_aggregate(kBinary3, 13, 1, 1, 1, 3) == 0.0);
  CHECK(k_aggregate(kBinary3, 13, 1, 1, 1, 1, WeightAssignment::unit()) ==
        doctest::Approx(41.0 / 49.0).epsilon(1e-12));
}

TEST_CASE("congruence counts") {
  CHECK(reduced_energy_mod(kBinary3, 4, 1, 1) == Count(5));
  CHECK_THROWS_AS(reduced_energy_mod(kBinary3, 4, 1, 0), InvalidArgument);
  for (auto [p, digits, X, s] : {std::tuple<std::uint64_t, std::vector<std::int64_t>, std::uint64_t, int>{3, {0, 1}, 30, 2},
                                 {5, {0, 1, 4}, 30, 3}, {7, {0, 2}, 50, 2}}) {
    const auto e = make(p, digits);
    const auto members = oracle::members(X, p, digits_of(e));
    const Count exact = vinogradov_count(e, X, s).count;
    Count prev = Count::from_raw(~u128{0});
    for (int c = 1;; ++c) {
      const std::uint64_t m = oracle::pow_u64(p, c);
      const Count cur = reduced_energy_mod(e, X, s, c);
      CHECK(cur == Count(oracle::congruence_pairs(members, s, m)));
      CHECK(cur <= prev);
      prev = cur;
      if (m > static_cast<std::uint64_t>(s) * X * X) {
        CHECK(cur == exact);
        break;
      }
    }
  }
  WeightAssignment w = WeightAssignment::unit();
  CHECK(reduced_energy_mod(kBinary3, 4, 1, 1, w) == doctest::Approx(5.0));
}

TEST_CASE("congruence partition") {
  const auto part = partition_by_congruence(kBinary3, 13, 2, 1, 0);
  CHECK(part.all_congruent + part.remainder == Count(91));
  CHECK(part.restricted_total == Count(91));
  // All four variables share one class mod 3: classes {1,4,10,13} and {3,9,12}.
  const Count want = Count::from_raw(oracle::vinogradov({1, 4, 10, 13}, 2) + oracle::vinogradov({3, 9, 12}, 2));
  CHECK(part.all_congruent == want);

  const auto e = make(3, {0, 1});
  for (int h = 1; h <= 3; ++h) {
    for (std::uint64_t xi : {0ull, 1ull}) {
      const auto p = partition_by_congruence(e, 100, 2, h, xi);
      CHECK(p.all_congruent + p.remainder == p.restricted_total);
      const auto pw = partition_by_congruence(e, 100, 2, h, xi, WeightAssignment::unit());
      CHECK(pw.all_congruent == doctest::Approx(p.all_congruent.to_double()));
      CHECK(pw.remainder == doctest::Approx(p.remainder.to_double()));
    }
  }
}
