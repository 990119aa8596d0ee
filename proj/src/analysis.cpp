#include "emvt/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace emvt::analysis {

const char* predictor_name(Predictor p) { return p == Predictor::Y ? "Y" : "X"; }

Predictor parse_predictor(const std::string& name) {
  if (name == "Y" || name == "y") return Predictor::Y;
  if (name == "X" || name == "x") return Predictor::X;
  throw InvalidArgument("predictor must be Y or X, got '" + name + "'");
}

namespace {

void collect_logs(const GrowthSeries& series, Predictor predictor, std::vector<double>& xs, std::vector<double>& ys) {
  for (const auto& pt : series.points) {
    if (pt.count.is_zero()) throw NonpositiveCount("growth point B=" + std::to_string(pt.B) + " has count 0");
    const double x = predictor == Predictor::Y ? pt.Y.to_double() : static_cast<double>(pt.X);
    if (!(x > 0.0)) throw NonpositiveCount("growth point B=" + std::to_string(pt.B) + " has nonpositive predictor");
    xs.push_back(std::log(x));
    ys.push_back(std::log(pt.count.to_double()));
  }
}

}  // namespace

ExponentFit fit_exponent(const GrowthSeries& series, Predictor predictor) {
  if (series.points.size() < 3) throw TooFewPoints("exponent fit needs at least 3 points");
  std::vector<double> xs, ys;
  collect_logs(series, predictor, xs, ys);
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("predictor is constant across the series");
  ExponentFit fit;
  fit.predictor = predictor;
  fit.n_points = xs.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

double top_pair_slope(const GrowthSeries& series, Predictor predictor) {
  if (series.points.size() < 2) throw TooFewPoints("top pair slope needs at least 2 points");
  std::vector<double> xs, ys;
  collect_logs(series, predictor, xs, ys);
  const std::size_t k = xs.size() - 1;
  return (ys[k] - ys[k - 1]) / (xs[k] - xs[k - 1]);
}

GrowthSeries vinogradov_growth(const ellipsephic::EllipsephicSet& set, int s, int b_min, int b_max,
                               const EngineConfig& cfg, counting::Strategy strategy) {
  if (b_min < 0 || b_max < b_min) throw InvalidArgument("need 0 <= b_min <= b_max");
  GrowthSeries series;
  for (int B = b_min; B <= b_max; ++B) {
    const std::uint64_t X = ellipsephic::checked_pow(set.base(), B);
    const auto result = counting::vinogradov_count(set, X, s, cfg, strategy);
    series.points.push_back({B, X, result.Y, result.count});
  }
  return series;
}

std::uint64_t integer_sqrt(std::uint64_t n) {
  constexpr std::uint64_t kMax = 0xffffffffull;
  auto r = std::min(kMax, static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))));
  while (r > 0 && r * r > n) --r;
  while (r < kMax && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

WaringProfile waring_counts(const ellipsephic::EllipsephicSet& set, int s, std::uint64_t X, const EngineConfig& cfg) {
  if (s < 1) throw InvalidArgument("s must be >= 1");
  if (X < 1) throw InvalidArgument("X must be >= 1");
  if (static_cast<double>(X + 1) * sizeof(Count) * 2 > static_cast<double>(cfg.memory_budget_bytes))
    throw MemoryBudgetExceeded("Waring profile of length X+1 exceeds the memory budget");

  WaringProfile profile;
  profile.s = s;
  profile.X = X;
  const std::uint64_t root = integer_sqrt(X);
  std::vector<std::uint64_t> squares;
  if (root >= 1) {
    for (auto x : set.enumerate_up_to(root)) squares.push_back(x * x);
  }
  profile.Y_root = Count(squares.size());

  // R_1 is the indicator of the squares; R_k = R_{k-1} * R_1, truncated at X.
  std::vector<Count> current(X + 1, Count{});
  for (auto q : squares) current[q] = Count(1);
  for (int k = 2; k <= s; ++k) {
    std::vector<Count> next(X + 1, Count{});
    for (std::uint64_t n = 0; n <= X; ++n) {
      if (current[n].is_zero()) continue;
      for (auto q : squares) {
        if (n + q > X) break;
        next[n + q] += current[n];
      }
    }
    current = std::move(next);
  }
  profile.R = std::move(current);
  for (std::uint64_t n = 1; n <= X; ++n) profile.N += !profile.R[n].is_zero();
  return profile;
}

CauchyReport cauchy_bound_check(const WaringProfile& profile) {
  CauchyReport report;
  report.N = profile.N;
  for (std::uint64_t n = 1; n < profile.R.size(); ++n) {
    report.S1 += profile.R[n];
    report.S2 += profile.R[n] * profile.R[n];
  }
  const Count lhs = report.S1 * report.S1;
  report.holds = lhs <= Count(report.N) * report.S2;
  if (!report.S2.is_zero()) {
    report.lower_bound = lhs / report.S2;
    if (!(lhs % report.S2).is_zero()) report.lower_bound += Count(1);
  }
  if (!report.holds) throw InvariantViolation("Cauchy inequality S1^2 <= N * S2 failed");
  return report;
}

}  // namespace emvt::analysis
