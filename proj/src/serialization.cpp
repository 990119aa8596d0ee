#include "emvt/serialization.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace emvt::io {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    fields.push_back(field);
  }
  return fields;
}

void expect_header(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing CSV header '" + header + "'", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ParseError("expected CSV header '" + header + "', got '" + line + "'", 1);
}

std::uint64_t parse_u64(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size() || text.front() == '-') throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid integer '" + text + "'", line);
  }
}

template <class Row>
void for_each_row(std::istream& in, std::size_t columns, Row&& row) {
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != columns) throw ParseError("expected " + std::to_string(columns) + " fields", line_no);
    row(fields, line_no);
  }
}

Count parse_count_field(const std::string& text, int line) {
  try {
    return Count::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
}

template <class T>
T field(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing JSON key '") + key + "'", 0);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON value for '") + key + "': " + e.what(), 0);
  }
}

}  // namespace

void write_profile_csv(std::ostream& out, const digitset::RepresentationProfile& profile) {
  out << "n,count\n";
  for (std::size_t n = 0; n < profile.counts.size(); ++n) out << n << ',' << profile.counts[n].to_string() << '\n';
}

digitset::RepresentationProfile read_profile_csv(std::istream& in) {
  expect_header(in, "n,count");
  digitset::RepresentationProfile profile;
  for_each_row(in, 2, [&](const std::vector<std::string>& f, int line) {
    const auto n = parse_u64(f[0], line);
    if (n != profile.counts.size()) throw ParseError("profile rows must be consecutive from 0", line);
    profile.counts.push_back(parse_count_field(f[1], line));
  });
  if (profile.counts.empty()) throw ParseError("empty profile", 0);
  profile.max_n = profile.counts.size() - 1;
  return profile;
}

std::string delta_report_json(const digitset::DeltaFitReport& report) {
  ordered_json j;
  j["delta"] = report.delta;
  j["max_ratio"] = report.max_ratio;
  j["argmax_n"] = report.argmax_n;
  return j.dump();
}

digitset::DeltaFitReport parse_delta_report_json(const std::string& text) {
  const auto j = parse_json(text);
  digitset::DeltaFitReport r;
  r.delta = field<double>(j, "delta");
  r.max_ratio = field<double>(j, "max_ratio");
  r.argmax_n = field<std::uint64_t>(j, "argmax_n");
  return r;
}

std::string count_record_json(const CountRecord& record) {
  ordered_json j;
  j["p"] = record.p;
  j["digits"] = record.digits;
  j["X"] = record.X;
  if (record.B) j["B"] = *record.B;
  j["s"] = record.s;
  j["Y"] = record.Y.to_string();
  j["count"] = record.count;
  j["method"] = record.method;
  if (record.wall_ms) j["wall_ms"] = *record.wall_ms;
  return j.dump();
}

CountRecord parse_count_record_json(const std::string& text) {
  const auto j = parse_json(text);
  CountRecord r;
  r.p = field<std::uint64_t>(j, "p");
  r.digits = field<std::vector<std::uint64_t>>(j, "digits");
  r.X = field<std::uint64_t>(j, "X");
  if (j.contains("B")) r.B = field<int>(j, "B");
  r.s = field<int>(j, "s");
  r.Y = Count::parse(field<std::string>(j, "Y"));
  r.count = field<std::string>(j, "count");
  r.method = field<std::string>(j, "method");
  if (j.contains("wall_ms")) r.wall_ms = field<double>(j, "wall_ms");
  return r;
}

std::string lifting_report_json(const carry::LiftingReport& report) {
  ordered_json j;
  j["p"] = report.p;
  ordered_json digits = ordered_json::array();
  std::istringstream ds(report.digits);
  for (std::string part; std::getline(ds, part, ',');) digits.push_back(std::stoull(part));
  j["digits"] = digits;
  j["t"] = report.t;
  j["c"] = report.c;
  j["d"] = report.d;
  j["z"] = report.z;
  j["X"] = report.X;
  j["lhs"] = report.lhs;
  j["rhs_core"] = report.rhs_core;
  j["ratio"] = report.ratio;
  j["bound_factor"] = report.bound_factor;
  return j.dump();
}

carry::LiftingReport parse_lifting_report_json(const std::string& text) {
  const auto j = parse_json(text);
  carry::LiftingReport r;
  r.p = field<std::uint64_t>(j, "p");
  const auto digits = field<std::vector<std::uint64_t>>(j, "digits");
  for (std::size_t i = 0; i < digits.size(); ++i) r.digits += (i ? "," : "") + std::to_string(digits[i]);
  r.t = field<int>(j, "t");
  r.c = field<int>(j, "c");
  r.d = field<int>(j, "d");
  r.z = field<std::vector<std::uint64_t>>(j, "z");
  r.X = field<std::uint64_t>(j, "X");
  r.lhs = field<std::string>(j, "lhs");
  r.rhs_core = field<std::string>(j, "rhs_core");
  r.lhs_value = std::stod(r.lhs);
  r.rhs_value = std::stod(r.rhs_core);
  r.ratio = field<double>(j, "ratio");
  r.bound_factor = field<double>(j, "bound_factor");
  return r;
}

void write_growth_csv(std::ostream& out, const analysis::GrowthSeries& series) {
  out << "B,X,Y,count\n";
  for (const auto& pt : series.points)
    out << pt.B << ',' << pt.X << ',' << pt.Y.to_string() << ',' << pt.count.to_string() << '\n';
}

analysis::GrowthSeries read_growth_csv(std::istream& in) {
  expect_header(in, "B,X,Y,count");
  analysis::GrowthSeries series;
  for_each_row(in, 4, [&](const std::vector<std::string>& f, int line) {
    analysis::GrowthPoint pt;
    pt.B = static_cast<int>(parse_u64(f[0], line));
    pt.X = parse_u64(f[1], line);
    pt.Y = parse_count_field(f[2], line);
    pt.count = parse_count_field(f[3], line);
    if (!series.points.empty() && pt.B <= series.points.back().B)
      throw ParseError("B must be strictly increasing", line);
    series.points.push_back(pt);
  });
  return series;
}

std::string fit_json(const analysis::ExponentFit& fit) {
  ordered_json j;
  j["predictor"] = analysis::predictor_name(fit.predictor);
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["n_points"] = fit.n_points;
  return j.dump();
}

analysis::ExponentFit parse_fit_json(const std::string& text) {
  const auto j = parse_json(text);
  analysis::ExponentFit fit;
  fit.predictor = analysis::parse_predictor(field<std::string>(j, "predictor"));
  fit.slope = field<double>(j, "slope");
  fit.intercept = field<double>(j, "intercept");
  fit.r_squared = field<double>(j, "r_squared");
  fit.n_points = field<std::size_t>(j, "n_points");
  return fit;
}

void write_waring_csv(std::ostream& out, const analysis::WaringProfile& profile) {
  out << "n,R\n";
  for (std::size_t n = 0; n < profile.R.size(); ++n) out << n << ',' << profile.R[n].to_string() << '\n';
}

std::vector<Count> read_waring_csv(std::istream& in) {
  expect_header(in, "n,R");
  std::vector<Count> R;
  for_each_row(in, 2, [&](const std::vector<std::string>& f, int line) {
    if (parse_u64(f[0], line) != R.size()) throw ParseError("Waring rows must be consecutive from 0", line);
    R.push_back(parse_count_field(f[1], line));
  });
  return R;
}

std::string cauchy_report_json(const analysis::CauchyReport& report, const analysis::WaringProfile& profile,
                               std::optional<int> t) {
  ordered_json j;
  j["s"] = profile.s;
  j["X"] = profile.X;
  j["Y"] = profile.Y_root.to_string();
  j["N"] = report.N;
  j["S1"] = report.S1.to_string();
  j["S2"] = report.S2.to_string();
  j["lower_bound"] = report.lower_bound.to_string();
  j["holds"] = report.holds;
  if (t) j["y_scaled"] = profile.Y_root.to_double() * std::pow(static_cast<double>(profile.X), -1.0 / *t);
  return j.dump();
}

counting::WeightAssignment read_weights_csv(std::istream& in, double default_weight) {
  expect_header(in, "x,w");
  counting::WeightAssignment weights;
  weights.set_default(default_weight);
  for_each_row(in, 2, [&](const std::vector<std::string>& f, int line) {
    const auto x = parse_u64(f[0], line);
    double w = 0;
    try {
      std::size_t used = 0;
      w = std::stod(f[1], &used);
      if (used != f[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("invalid weight '" + f[1] + "'", line);
    }
    try {
      weights.set(x, w);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line);
    }
  });
  return weights;
}

counting::WeightAssignment load_weights_file(const std::string& path, double default_weight) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open weights file '" + path + "'");
  return read_weights_csv(in, default_weight);
}

namespace {

void put_le(std::ostream& out, std::uint64_t v, int bytes) {
  std::array<char, 8> buf{};
  for (int i = 0; i < bytes; ++i) buf[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf.data(), bytes);
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::array<unsigned char, 8> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), bytes);
  if (in.gcount() != bytes) throw ParseError("truncated distribution file", 0);
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | buf[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

void write_distribution(std::ostream& out, const counting::MomentDistribution& d) {
  if (d.size() > 0xffffffffull) throw OverflowError("distribution too large for the cache format");
  out.write("EMVT", 4);
  put_le(out, kDistributionFormatVersion, 4);
  put_le(out, static_cast<std::uint64_t>(d.folds()), 4);
  put_le(out, d.size(), 4);
  for (const auto& e : d.entries()) {
    put_le(out, e.key.m1, 8);
    put_le(out, e.key.m2, 8);
    put_le(out, static_cast<std::uint64_t>(e.mass.raw()), 8);
    put_le(out, static_cast<std::uint64_t>(e.mass.raw() >> 64), 8);
  }
}

counting::MomentDistribution read_distribution(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::string(magic, 4) != "EMVT") throw ParseError("not an EMVT distribution file", 0);
  const auto version = get_le(in, 4);
  if (version != kDistributionFormatVersion)
    throw ParseError("unsupported distribution format version " + std::to_string(version), 0);
  const auto folds = static_cast<int>(get_le(in, 4));
  const auto count = get_le(in, 4);
  std::vector<counting::MomentEntry<Count>> entries;
  entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    counting::MomentEntry<Count> e;
    e.key.m1 = get_le(in, 8);
    e.key.m2 = get_le(in, 8);
    const u128 lo = get_le(in, 8);
    const u128 hi = get_le(in, 8);
    e.mass = Count::from_raw(lo | (hi << 64));
    entries.push_back(e);
  }
  return counting::MomentDistribution(folds, std::move(entries));
}

void save_distribution(const std::string& path, const counting::MomentDistribution& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileNotFound("cannot write distribution file '" + path + "'");
  write_distribution(out, d);
}

counting::MomentDistribution load_distribution(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open distribution file '" + path + "'");
  return read_distribution(in);
}

}  // namespace emvt::io
