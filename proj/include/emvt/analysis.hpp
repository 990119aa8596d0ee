#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emvt/count.hpp"
#include "emvt/counting.hpp"
#include "emvt/ellipsephic.hpp"

namespace emvt::analysis {

struct GrowthPoint {
  int B = 0;  // X = p^B
  std::uint64_t X = 0;
  Count Y;
  Count count;
};

struct GrowthSeries {
  std::vector<GrowthPoint> points;  // B strictly increasing, Y and count positive
};

enum class Predictor { Y, X };

const char* predictor_name(Predictor p);
Predictor parse_predictor(const std::string& name);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  Predictor predictor = Predictor::Y;
  std::size_t n_points = 0;
};

/// Ordinary least squares of log(count) on log(predictor).
/// Throws TooFewPoints (< 3 points) or NonpositiveCount.
ExponentFit fit_exponent(const GrowthSeries& series, Predictor predictor);

/// Slope between the last two points, in the same log-log coordinates.
double top_pair_slope(const GrowthSeries& series, Predictor predictor);

/// I_s(p^B) for B in [b_min, b_max].
GrowthSeries vinogradov_growth(const ellipsephic::EllipsephicSet& set, int s, int b_min, int b_max,
                               const EngineConfig& cfg = {},
                               counting::Strategy strategy = counting::Strategy::Auto);

/// R(n): ordered s-tuples from E with sum of squares n, for 0 <= n <= X.
struct WaringProfile {
  int s = 0;
  std::uint64_t X = 0;
  std::vector<Count> R;
  std::uint64_t N = 0;  // #{1 <= n <= X : R(n) > 0}
  Count Y_root;         // #E(floor(sqrt X)), the members that can appear
};

WaringProfile waring_counts(const ellipsephic::EllipsephicSet& set, int s, std::uint64_t X,
                            const EngineConfig& cfg = {});

struct CauchyReport {
  Count S1;  // sum_{1<=n<=X} R(n)
  Count S2;  // sum R(n)^2
  std::uint64_t N = 0;
  Count lower_bound;  // ceil(S1^2 / S2), at most N
  bool holds = false;  // S1^2 <= N * S2
};

/// Throws InvariantViolation if the inequality fails.
CauchyReport cauchy_bound_check(const WaringProfile& profile);

std::uint64_t integer_sqrt(std::uint64_t n);

}  // namespace emvt::analysis
