#include <cmath>
#include <vector>

#include "doctest.h"
#include "emvt/analysis.hpp"
#include "oracles.hpp"

using namespace emvt;
using namespace emvt::analysis;

namespace {

ellipsephic::EllipsephicSet make(std::uint64_t p, std::vector<std::int64_t> digits) {
  return ellipsephic::EllipsephicSet(digitset::make_digit_set(p, std::move(digits)));
}

GrowthSeries series_of(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& xc) {
  GrowthSeries s;
  int B = 1;
  for (auto [x, c] : xc) s.points.push_back({B++, x, Count(x), Count(c)});
  return s;
}

}  // namespace

TEST_CASE("exponent fit on an exact power law") {
  const auto fit = fit_exponent(series_of({{10, 100}, {100, 10000}, {1000, 1000000}}), Predictor::X);
  CHECK(std::abs(fit.slope - 2.0) < 1e-12);
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.n_points == 3);
  CHECK(fit.predictor == Predictor::X);

  GrowthSeries cubic;
  for (int B = 1; B <= 6; ++B) {
    const std::uint64_t Y = 3ull << B;
    cubic.points.push_back({B, 0, Count(Y), Count(Y * Y * Y * 5)});
  }
  const auto f3 = fit_exponent(cubic, Predictor::Y);
  CHECK(std::abs(f3.slope - 3.0) < 1e-12);
  CHECK(std::abs(f3.intercept - std::log(5.0)) < 1e-12);
  CHECK(std::abs(top_pair_slope(cubic, Predictor::Y) - 3.0) < 1e-12);
}

TEST_CASE("constant counts give slope 0") {
  const auto fit = fit_exponent(series_of({{2, 7}, {4, 7}, {8, 7}}), Predictor::Y);
  CHECK(fit.slope == doctest::Approx(0.0));
  CHECK(fit.r_squared == 1.0);
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS_AS(fit_exponent(series_of({{2, 4}, {4, 16}}), Predictor::X), TooFewPoints);
  CHECK_THROWS_AS(fit_exponent(series_of({{2, 4}, {4, 0}, {8, 64}}), Predictor::X), NonpositiveCount);
  CHECK(parse_predictor("Y") == Predictor::Y);
  CHECK_THROWS_AS(parse_predictor("Z"), InvalidArgument);
}

TEST_CASE("growth series") {
  const auto e = make(5, {0, 1, 4});
  const auto s = vinogradov_growth(e, 6, 1, 2);
  REQUIRE(s.points.size() == 2);
  // Frozen from the tuple-map oracle.
  CHECK(s.points[0].X == 5);
  CHECK(s.points[0].Y == Count(3));
  CHECK(s.points[0].count == Count(35169));
  CHECK(s.points[1].Y == Count(9));
  CHECK(s.points[1].count == Count(191446521));
  CHECK(oracle::vinogradov(oracle::members(25, 5, {0, 1, 4}), 6) == 191446521);
}

TEST_CASE("Waring counts") {
  const auto e = make(3, {0, 1});
  const auto w = waring_counts(e, 2, 25);
  REQUIRE(w.R.size() == 26);
  CHECK(w.R[25] == Count(2));
  CHECK(w.R[2] == Count(1));
  CHECK(w.R[0] == Count(0));
  const auto want = oracle::representations({1, 9, 16}, 2, 25);
  for (std::size_t n = 0; n <= 25; ++n) CHECK(w.R[n] == Count(want[n]));
  CHECK(w.Y_root == Count(3));
  CHECK(w.N == 5);  // 2, 10, 17, 18, 25
}

TEST_CASE("Cauchy check") {
  const auto e = make(3, {0, 1});
  const auto r = cauchy_bound_check(waring_counts(e, 2, 25));
  // Pairs from E(5) = {1, 3, 4}: R is 1, 2, 2, 1, 2 at n = 2, 10, 17, 18, 25.
  CHECK(r.S1 == Count(8));
  CHECK(r.S2 == Count(14));
  CHECK(r.N == 5);
  CHECK(r.lower_bound == Count(5));
  CHECK(r.holds);
  CHECK(r.S1 * r.S1 <= Count(r.N) * r.S2);
  CHECK(r.lower_bound <= Count(r.N));

  // s = 1: R is 0/1 valued, so the inequality is an equality.
  const auto one = cauchy_bound_check(waring_counts(make(5, {0, 1, 4}), 1, 1000));
  CHECK(one.S1 * one.S1 == Count(one.N) * one.S2);
}

TEST_CASE("Waring totals match direct tuple counting") {
  for (int s : {1, 2, 3}) {
    const auto e = make(5, {0, 1, 4});
    const std::uint64_t X = 3000;
    const auto w = waring_counts(e, s, X);
    Count total;
    for (std::size_t n = 1; n < w.R.size(); ++n) total += w.R[n];
    std::uint64_t direct = 0;
    oracle::each_tuple(oracle::members(integer_sqrt(X), 5, {0, 1, 4}), s, [&](const std::vector<std::uint64_t>& x) {
      std::uint64_t q = 0;
      for (auto v : x) q += v * v;
      direct += q <= X;
    });
    CHECK(total == Count(direct));
    CHECK(w.N <= X);

    // More equations, fewer solutions: sum R(n)^2 bounds the two-equation count
    // over members small enough that every s-tuple stays below X.
    Count second_moment;
    for (std::size_t n = 1; n < w.R.size(); ++n) second_moment += w.R[n] * w.R[n];
    const std::uint64_t small = integer_sqrt(X / static_cast<std::uint64_t>(s));
    CHECK(second_moment >= counting::vinogradov_count(e, small, s).count);
  }
}

TEST_CASE("integer square root") {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    const auto r = integer_sqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
  CHECK(integer_sqrt(~0ull) == 4294967295ull);
}
