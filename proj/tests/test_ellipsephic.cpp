#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "emvt/ellipsephic.hpp"
#include "oracles.hpp"

using namespace emvt;
using namespace emvt::ellipsephic;
using V = std::vector<std::uint64_t>;

namespace {

EllipsephicSet make(std::uint64_t p, std::vector<std::int64_t> digits) {
  return EllipsephicSet(digitset::make_digit_set(p, std::move(digits)));
}

std::set<std::uint64_t> digit_set_of(const EllipsephicSet& e) {
  return {e.digit_set().digits().begin(), e.digit_set().digits().end()};
}

}  // namespace

TEST_CASE("membership") {
  const auto e = make(3, {0, 1});
  CHECK(e.contains(4));
  CHECK_FALSE(e.contains(2));
  CHECK_FALSE(e.contains(0));
  CHECK(format_expansion(expand(4, 3), 3) == "11_3");
  CHECK(format_expansion(expand(0, 3), 3) == "0_3");
  CHECK(format_expansion(expand(130, 11), 11) == "1.0.9_11");
}

TEST_CASE("membership follows the digit recursion") {
  for (auto [p, digits] : {std::pair<std::uint64_t, std::vector<std::int64_t>>{3, {0, 1}},
                           {5, {0, 1, 4}}, {5, {1, 3}}, {11, {0, 1, 4, 9}}}) {
    const auto e = make(p, digits);
    const auto ds = digit_set_of(e);
    for (std::uint64_t n = 0; n <= 3000; ++n) {
      const bool low_ok = ds.count(n % p) > 0;
      const std::uint64_t high = n / p;
      const bool rec = n > 0 && low_ok && (high == 0 || e.contains(high));
      CHECK(e.contains(n) == rec);
      CHECK(e.contains(n) == oracle::member(n, p, ds));
    }
  }
}

TEST_CASE("enumeration") {
  CHECK(make(3, {0, 1}).enumerate_up_to(13) == V{1, 3, 4, 9, 10, 12, 13});
  CHECK(make(5, {0, 1, 4}).enumerate_up_to(25) == V{1, 4, 5, 6, 9, 20, 21, 24, 25});
  CHECK(make(3, {0, 1}).enumerate_up_to(1) == V{1});
  CHECK(make(5, {2, 3}).enumerate_up_to(1).empty());
  CHECK_THROWS_AS(make(3, {0, 1}).enumerate_up_to(0), InvalidArgument);
}

TEST_CASE("enumeration and counting agree with the digit-test oracle") {
  for (auto [p, digits] : {std::pair<std::uint64_t, std::vector<std::int64_t>>{3, {0, 1}},
                           {3, {1, 2}}, {5, {0, 1, 4}}, {7, {2, 3, 6}}, {11, {0, 1, 4, 9}}}) {
    const auto e = make(p, digits);
    for (std::uint64_t X : {1ull, 2ull, 7ull, 13ull, 100ull, 121ull, 300ull, 1000ull, 2400ull}) {
      const auto want = oracle::members(X, p, digit_set_of(e));
      CHECK(e.enumerate_up_to(X) == want);
      CHECK(e.count_up_to(X) == Count(want.size()));
    }
  }
}

TEST_CASE("count_up_to") {
  const auto e = make(3, {0, 1});
  CHECK(e.count_up_to(13) == Count(7));
  CHECK(e.count_up_to(9) == Count(4));
  CHECK(make(5, {2, 3}).count_up_to(1) == Count(0));
  CHECK(e.count_up_to(0) == Count(0));
  // Large X: digit DP only. Members below 3^30 are the nonzero 30-digit binary strings.
  CHECK(e.count_up_to(checked_pow(3, 30) - 1) == Count((1ull << 30) - 1));
}

TEST_CASE("density bound r^(B+1)") {
  for (auto [p, digits] : {std::pair<std::uint64_t, std::vector<std::int64_t>>{3, {0, 1}},
                           {5, {0, 1, 4}}, {11, {0, 1, 4, 9}}}) {
    const auto e = make(p, digits);
    const auto r = e.digit_set().size();
    for (int B = 0; B <= 8; ++B) CHECK(e.count_up_to(checked_pow(p, B)) <= pow(Count(r), B + 1));
  }
}

TEST_CASE("class members") {
  const auto e = make(3, {0, 1});
  CHECK(e.class_members(1, 1, 13) == V{1, 4, 10, 13});
  CHECK(e.class_members(0, 1, 13) == V{3, 9, 12});
  CHECK(e.class_members(2, 1, 13).empty());
  CHECK(e.class_members(0, 0, 13) == e.enumerate_up_to(13));
  CHECK_THROWS_AS(e.class_members(3, 1, 13), InvalidArgument);
}

TEST_CASE("class members partition the set for every level") {
  for (auto [p, digits] : {std::pair<std::uint64_t, std::vector<std::int64_t>>{3, {0, 1}},
                           {5, {0, 1, 4}}, {5, {1, 2}}, {11, {0, 1, 4, 9}}}) {
    const auto e = make(p, digits);
    for (std::uint64_t X : {13ull, 125ull, 300ull}) {
      const auto all = e.enumerate_up_to(X);
      for (int a = 1; a <= 4; ++a) {
        V joined;
        const std::uint64_t mod = checked_pow(p, a);
        for (std::uint64_t xi = 0; xi < mod; ++xi) {
          const auto part = e.class_members(xi, a, X);
          for (auto x : part) CHECK(x % mod == xi);
          joined.insert(joined.end(), part.begin(), part.end());
        }
        std::sort(joined.begin(), joined.end());
        CHECK(joined == all);
        // Labels cover every nonempty class.
        const auto labels = e.class_labels(a);
        std::size_t covered = 0;
        for (auto xi : labels) covered += e.class_members(xi, a, X).size();
        CHECK(covered == all.size());
      }
    }
  }
}

TEST_CASE("checked_pow") {
  CHECK(checked_pow(5, 4) == 625);
  CHECK(checked_pow(7, 0) == 1);
  CHECK_THROWS_AS(checked_pow(3, 41), OverflowError);
}
