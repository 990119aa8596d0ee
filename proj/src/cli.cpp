#include "emvt/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "emvt/analysis.hpp"
#include "emvt/carry.hpp"
#include "emvt/config.hpp"
#include "emvt/counting.hpp"
#include "emvt/digitset.hpp"
#include "emvt/ellipsephic.hpp"
#include "emvt/errors.hpp"
#include "emvt/selftest.hpp"
#include "emvt/serialization.hpp"

namespace emvt::cli {

namespace {

using config::RunConfig;

// A usage problem tied to one flag.
class UsageError : public Error {
 public:
  UsageError(const std::string& what, std::string flag) : Error(what), flag_(std::move(flag)) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

std::string flag_of(const std::string& key) {
  std::string f = "--" + key;
  for (auto& ch : f) {
    if (ch == '_') ch = '-';
  }
  return f;
}

template <class T>
T require(const std::optional<T>& v, const std::string& key) {
  if (!v) throw UsageError("missing required option", flag_of(key));
  return *v;
}

// Runs `fn`, blaming `key` for any argument error it raises.
template <class Fn>
auto blame(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what(), flag_of(key));
  } catch (const NonPrimeBase& e) {
    throw UsageError(e.what(), flag_of(key));
  } catch (const InadmissibleDigits& e) {
    throw UsageError(e.what(), flag_of(key));
  } catch (const InvalidRange& e) {
    throw UsageError(e.what(), flag_of(key));
  }
}

int positive(const std::optional<int>& v, const std::string& key) {
  const int x = require(v, key);
  if (x < 1) throw UsageError("must be positive", flag_of(key));
  return x;
}

digitset::DigitSet digit_set(const RunConfig& cfg) {
  const auto p = require(cfg.prime, "prime");
  const auto digits = require(cfg.digits, "digits");
  if (digits == "squares") return blame("prime", [&] { return digitset::squares_digit_set(p); });
  const auto list = blame("digits", [&] { return config::parse_int_list(digits); });
  try {
    return digitset::make_digit_set(p, list);
  } catch (const NonPrimeBase& e) {
    throw UsageError(e.what(), "--prime");
  } catch (const InadmissibleDigits& e) {
    throw UsageError(e.what(), "--digits");
  }
}

struct Range {
  std::uint64_t X = 0;
  std::optional<int> B;
};

Range limit_of(const RunConfig& cfg, std::uint64_t p) {
  if (cfg.limit.has_value() == cfg.power.has_value())
    throw UsageError("exactly one of --limit and --power is required", cfg.limit ? "--power" : "--limit");
  if (cfg.limit) {
    if (*cfg.limit < 1) throw UsageError("must be positive", "--limit");
    return {*cfg.limit, std::nullopt};
  }
  if (*cfg.power < 1) throw UsageError("must be positive", "--power");
  return {blame("power", [&] { return ellipsephic::checked_pow(p, *cfg.power); }), *cfg.power};
}

std::optional<counting::WeightAssignment> weights_of(const RunConfig& cfg) {
  if (!cfg.weights_file && !cfg.default_weight) return std::nullopt;
  const double dflt = cfg.default_weight.value_or(0.0);
  if (!(dflt >= 0.0 && dflt <= 1.0)) throw UsageError("weight must lie in [0, 1]", "--default-weight");
  if (!cfg.weights_file) {
    counting::WeightAssignment w;
    w.set_default(dflt);
    return w;
  }
  try {
    return io::load_weights_file(*cfg.weights_file, dflt);
  } catch (const ParseError& e) {
    throw UsageError(e.what(), "--weights-file");
  } catch (const FileNotFound& e) {
    throw UsageError(e.what(), "--weights-file");
  }
}

counting::Strategy strategy_of(const RunConfig& cfg) {
  const auto m = cfg.method.value_or("auto");
  if (m == "auto") return counting::Strategy::Auto;
  if (m == "full" || m == "full-convolution") return counting::Strategy::FullConvolution;
  if (m == "mitm" || m == "meet-in-the-middle") return counting::Strategy::MeetInTheMiddle;
  throw UsageError("method must be auto, full or mitm", "--method");
}

std::string format_of(const RunConfig& cfg, const std::string& fallback) {
  const auto f = cfg.format.value_or(fallback);
  if (f != "json" && f != "csv") throw UsageError("format must be json or csv", "--format");
  return f;
}

std::vector<std::uint64_t> digits_of(const digitset::DigitSet& ds) {
  return {ds.digits().begin(), ds.digits().end()};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns the text to emit.

std::string cmd_enum(const RunConfig& cfg) {
  const ellipsephic::EllipsephicSet set(digit_set(cfg));
  const auto range = limit_of(cfg, set.base());
  std::ostringstream out;
  for (auto x : set.enumerate_up_to(range.X)) out << x << '\n';
  return out.str();
}

std::string cmd_count(const RunConfig& cfg, const EngineConfig& engine) {
  const ellipsephic::EllipsephicSet set(digit_set(cfg));
  const auto range = limit_of(cfg, set.base());
  const int s = positive(cfg.s, "s");
  format_of(cfg, "json");
  const auto strategy = strategy_of(cfg);
  const auto weights = weights_of(cfg);

  io::CountRecord rec;
  rec.p = set.base();
  rec.digits = digits_of(set.digit_set());
  rec.X = range.X;
  rec.B = range.B;
  rec.s = s;
  const auto start = std::chrono::steady_clock::now();
  if (weights) {
    const auto r = counting::vinogradov_count(set, range.X, s, *weights, engine, strategy);
    rec.Y = r.Y;
    rec.count = format_double(r.value);
    rec.method = r.method;
  } else {
    const auto r = counting::vinogradov_count(set, range.X, s, engine, strategy);
    rec.Y = r.Y;
    rec.count = r.count.to_string();
    rec.method = r.method;
  }
  const auto stop = std::chrono::steady_clock::now();
  if (!cfg.stable_output.value_or(false))
    rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return io::count_record_json(rec) + "\n";
}

std::string cmd_profile(const RunConfig& cfg) {
  digitset::DigitSourceSet source;
  if (cfg.elements) {
    const auto list = blame("elements", [&] { return config::parse_int_list(*cfg.elements); });
    source = blame("elements", [&] { return digitset::make_source_set(list, "explicit"); });
  } else if (cfg.digits == std::optional<std::string>("squares") && !cfg.prime) {
    source = digitset::squares_up_to(require(cfg.bound, "bound"));
  } else {
    source = digitset::source_from_digits(digit_set(cfg));
  }
  const int t = positive(cfg.t, "t");
  if (t < 2) throw UsageError("t must be at least 2", "--t");
  const auto max_n = cfg.max_n ? *cfg.max_n : require(cfg.bound, "max_n");
  const auto profile = blame("max_n", [&] { return digitset::representation_counts(source, t, max_n); });
  if (cfg.delta) {
    if (*cfg.delta < 0.0) throw UsageError("delta must be nonnegative", "--delta");
    return io::delta_report_json(digitset::delta_fit(profile, *cfg.delta)) + "\n";
  }
  std::ostringstream out;
  io::write_profile_csv(out, profile);
  return out.str();
}

std::string cmd_carry_check(const RunConfig& cfg) {
  const auto ds = digit_set(cfg);
  const auto range = limit_of(cfg, ds.base());
  const int t = positive(cfg.t, "t");
  const int c = require(cfg.c, "c");
  const int d = require(cfg.d, "d");
  if (c < 0) throw UsageError("must be nonnegative", "--c");
  if (d < c) throw UsageError("need c <= d", "--d");
  std::vector<std::uint64_t> z(static_cast<std::size_t>(t), 0);
  if (cfg.z) {
    const auto list = blame("z", [&] { return config::parse_int_list(*cfg.z); });
    if (list.size() != z.size()) throw UsageError("z needs exactly t entries", "--z");
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (list[i] < 0) throw UsageError("z entries must be nonnegative", "--z");
      z[i] = static_cast<std::uint64_t>(list[i]);
    }
  }
  const auto weights = weights_of(cfg);
  const auto report = blame("d", [&] {
    return weights ? carry::lifting_ratio_report(ds, t, c, d, z, range.X, *weights)
                   : carry::lifting_ratio_report(ds, t, c, d, z, range.X);
  });
  // With X = p^D the carry DP must agree with direct counting over digit strings.
  if (range.B && d <= *range.B) {
    const int D = *range.B;
    const auto dp = carry::carry_dp_count(ds, t, c, d, z, D).count;
    const auto universe = carry::digit_string_universe(ds, D);
    const auto direct = carry::direct_congruence_count(ds, t, c, d, z, universe);
    if (dp != direct)
      throw InvariantViolation("carry DP count " + dp.to_string() + " differs from direct count " + direct.to_string());
  }
  return io::lifting_report_json(report) + "\n";
}

std::string cmd_waring(const RunConfig& cfg, const EngineConfig& engine) {
  const ellipsephic::EllipsephicSet set(digit_set(cfg));
  const auto range = limit_of(cfg, set.base());
  const int s = positive(cfg.s, "s");
  const auto format = format_of(cfg, "csv");
  const auto profile = analysis::waring_counts(set, s, range.X, engine);
  if (format == "csv") {
    std::ostringstream out;
    io::write_waring_csv(out, profile);
    return out.str();
  }
  const auto report = analysis::cauchy_bound_check(profile);
  return io::cauchy_report_json(report, profile, cfg.t) + "\n";
}

std::string cmd_fit(const RunConfig& cfg, const EngineConfig& engine) {
  const auto format = format_of(cfg, "json");
  const auto predictor = blame("predictor", [&] { return analysis::parse_predictor(cfg.predictor.value_or("Y")); });
  analysis::GrowthSeries series;
  if (cfg.input) {
    std::ifstream in(*cfg.input);
    if (!in) throw UsageError("cannot open growth CSV '" + *cfg.input + "'", "--input");
    try {
      series = io::read_growth_csv(in);
    } catch (const ParseError& e) {
      throw UsageError(e.what(), "--input");
    }
  } else {
    const ellipsephic::EllipsephicSet set(digit_set(cfg));
    const int s = positive(cfg.s, "s");
    const int b_min = cfg.b_min.value_or(1);
    const int b_max = require(cfg.b_max, "b_max");
    if (b_min < 1) throw UsageError("must be positive", "--b-min");
    if (b_max < b_min) throw UsageError("need b-min <= b-max", "--b-max");
    series = blame("b_max", [&] { return analysis::vinogradov_growth(set, s, b_min, b_max, engine, strategy_of(cfg)); });
  }
  if (format == "csv") {
    std::ostringstream out;
    io::write_growth_csv(out, series);
    return out.str();
  }
  try {
    return io::fit_json(analysis::fit_exponent(series, predictor)) + "\n";
  } catch (const TooFewPoints& e) {
    throw UsageError(e.what(), cfg.input ? "--input" : "--b-max");
  }
}

std::string cmd_selftest(const EngineConfig& engine, bool& all_passed) {
  std::ostringstream out;
  all_passed = true;
  for (const auto& r : selftest::run_all(engine)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.passed) out << ": " << r.detail;
    out << '\n';
    all_passed = all_passed && r.passed;
  }
  return out.str();
}

// Options each subcommand accepts, besides the shared ones.
const std::map<std::string, std::vector<std::string>>& subcommand_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"enum", {"prime", "digits", "limit", "power"}},
      {"count", {"prime", "digits", "limit", "power", "s", "weights_file", "default_weight", "method"}},
      {"profile-digits", {"prime", "digits", "elements", "bound", "t", "max_n", "delta"}},
      {"carry-check", {"prime", "digits", "limit", "power", "t", "c", "d", "z", "weights_file", "default_weight"}},
      {"waring", {"prime", "digits", "limit", "power", "s", "t"}},
      {"fit", {"prime", "digits", "s", "b_min", "b_max", "predictor", "input", "method"}},
      {"selftest", {}},
  };
  return keys;
}

const std::vector<std::string> kSharedKeys = {"format", "threads", "memory_budget", "oracle_cap", "out"};

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (!cfg.out) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(*cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot write output file '" + *cfg.out + "'", "--out");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vinogradov mean values over integers with restricted digits", "emvt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::string> config_path;
  std::map<std::string, bool> stable;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, keys] : subcommand_keys()) {
    auto* sub = app.add_subcommand(name);
    subs[name] = sub;
    auto& slot = values[name];
    std::vector<std::string> all = keys;
    all.insert(all.end(), kSharedKeys.begin(), kSharedKeys.end());
    for (const auto& key : all) sub->add_option(flag_of(key), slot[key]);
    sub->add_option("--config", config_path[name], "flat key = value file; flags override it");
    sub->add_flag("--stable-output", stable[name], "omit wall-clock fields");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    // CLI11 messages name the flag involved.
    err << "emvt: " << e.what() << '\n';
    return kUsageError;
  }

  std::string name;
  for (const auto& [n, sub] : subs) {
    if (sub->parsed()) name = n;
  }

  try {
    RunConfig cfg;
    if (!config_path[name].empty()) {
      try {
        cfg = config::load_config(config_path[name]);
      } catch (const Error& e) {
        throw UsageError(e.what(), "--config");
      }
    }
    RunConfig flags;
    for (const auto& [key, value] : values[name]) {
      if (subs[name]->count(flag_of(key)) == 0) continue;
      blame(key, [&] { config::apply_setting(flags, key, value); });
    }
    if (stable[name]) flags.stable_output = true;
    cfg = config::merge(cfg, flags);
    const auto engine = blame("threads", [&] { return config::engine_config(cfg); });

    std::string text;
    int code = kSuccess;
    if (name == "enum") {
      text = cmd_enum(cfg);
    } else if (name == "count") {
      text = cmd_count(cfg, engine);
    } else if (name == "profile-digits") {
      text = cmd_profile(cfg);
    } else if (name == "carry-check") {
      text = cmd_carry_check(cfg);
    } else if (name == "waring") {
      text = cmd_waring(cfg, engine);
    } else if (name == "fit") {
      text = cmd_fit(cfg, engine);
    } else {
      bool passed = false;
      text = cmd_selftest(engine, passed);
      if (!passed) code = kInvariantViolation;
    }
    emit(text, cfg, out);
    return code;
  } catch (const UsageError& e) {
    err << "emvt " << name << ": " << e.what() << " (" << e.flag() << ")\n";
    return kUsageError;
  } catch (const MemoryBudgetExceeded& e) {
    err << "emvt " << name << ": memory budget exceeded: " << e.what() << '\n';
    return kResourceError;
  } catch (const OverflowError& e) {
    err << "emvt " << name << ": overflow: " << e.what() << '\n';
    return kResourceError;
  } catch (const OracleTooLarge& e) {
    err << "emvt " << name << ": oracle too large: " << e.what() << '\n';
    return kResourceError;
  } catch (const std::bad_alloc&) {
    err << "emvt " << name << ": out of memory\n";
    return kResourceError;
  } catch (const InvariantViolation& e) {
    err << "emvt " << name << ": invariant violated: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const Error& e) {
    err << "emvt " << name << ": " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "emvt " << name << ": internal error: " << e.what() << '\n';
    return kInvariantViolation;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace emvt::cli
