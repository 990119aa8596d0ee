#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "emvt/analysis.hpp"
#include "emvt/carry.hpp"
#include "emvt/counting.hpp"
#include "emvt/digitset.hpp"

namespace emvt::io {

// CSV: representation profile "n,count".
void write_profile_csv(std::ostream& out, const digitset::RepresentationProfile& profile);
digitset::RepresentationProfile read_profile_csv(std::istream& in);

// JSON: {"delta", "max_ratio", "argmax_n"}.
std::string delta_report_json(const digitset::DeltaFitReport& report);
digitset::DeltaFitReport parse_delta_report_json(const std::string& text);

/// One count result: {p, digits, X, B (if X = p^B), s, Y, count, method, wall_ms}.
struct CountRecord {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> digits;
  std::uint64_t X = 0;
  std::optional<int> B;
  int s = 0;
  Count Y;
  std::string count;  // decimal; real-weighted counts use %.17g
  std::string method;
  std::optional<double> wall_ms;  // omitted with stable output
};

std::string count_record_json(const CountRecord& record);
CountRecord parse_count_record_json(const std::string& text);

std::string lifting_report_json(const carry::LiftingReport& report);
carry::LiftingReport parse_lifting_report_json(const std::string& text);

// CSV: growth series "B,X,Y,count".
void write_growth_csv(std::ostream& out, const analysis::GrowthSeries& series);
analysis::GrowthSeries read_growth_csv(std::istream& in);

// JSON: {predictor, slope, intercept, r_squared, n_points}.
std::string fit_json(const analysis::ExponentFit& fit);
analysis::ExponentFit parse_fit_json(const std::string& text);

// CSV: Waring profile "n,R" for 0 <= n <= X.
void write_waring_csv(std::ostream& out, const analysis::WaringProfile& profile);
std::vector<Count> read_waring_csv(std::istream& in);
std::string cauchy_report_json(const analysis::CauchyReport& report, const analysis::WaringProfile& profile,
                               std::optional<int> t);

/// Weights CSV "x,w". Unlisted members get `default_weight`.
counting::WeightAssignment read_weights_csv(std::istream& in, double default_weight);
counting::WeightAssignment load_weights_file(const std::string& path, double default_weight);

/// Binary distribution cache: 16-byte header (magic "EMVT", u32 version, u32 s,
/// u32 entry count) then little-endian records (m1: u64, m2: u64, mass: u128).
void write_distribution(std::ostream& out, const counting::MomentDistribution& d);
counting::MomentDistribution read_distribution(std::istream& in);
void save_distribution(const std::string& path, const counting::MomentDistribution& d);
counting::MomentDistribution load_distribution(const std::string& path);

inline constexpr std::uint32_t kDistributionFormatVersion = 1;

}  // namespace emvt::io
