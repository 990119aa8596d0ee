#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emvt/parallel.hpp"

namespace emvt::config {

/// Every setting a subcommand can take. Unset fields stay empty so a config
/// file and command-line flags can be merged field by field.
struct RunConfig {
  std::optional<std::uint64_t> prime;
  std::optional<std::string> digits;  // "0,1,4" or "squares"
  std::optional<std::uint64_t> limit;  // X
  std::optional<int> power;            // B, X = p^B
  std::optional<int> s;
  std::optional<int> t;
  std::optional<int> c;
  std::optional<int> d;
  std::optional<std::string> z;  // comma-separated class labels
  std::optional<double> delta;
  std::optional<std::uint64_t> max_n;
  std::optional<std::uint64_t> bound;    // squares up to bound
  std::optional<std::string> elements;   // explicit source set
  std::optional<int> b_min;
  std::optional<int> b_max;
  std::optional<std::string> predictor;  // Y | X
  std::optional<std::string> input;      // growth CSV for `fit`
  std::optional<std::string> weights_file;
  std::optional<double> default_weight;
  std::optional<std::string> format;  // json | csv
  std::optional<std::string> method;  // auto | full | mitm
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> memory_budget_bytes;
  std::optional<std::uint64_t> oracle_cap;
  std::optional<std::string> out;
  std::optional<bool> stable_output;
};

/// Reads flat `key = value` lines; `#` starts a comment.
/// Throws FileNotFound, ParseError (with line number) or UnknownKey.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

/// Sets one field by its key (`max_n`; dashes are accepted for underscores).
/// Throws UnknownKey or InvalidArgument.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Every key load_config accepts, in canonical underscore form.
std::vector<std::string> known_keys();

/// Fields set in `overrides` replace those in `base`.
RunConfig merge(const RunConfig& base, const RunConfig& overrides);

/// Engine settings; the memory budget falls back to EMVT_MEMORY_BUDGET.
EngineConfig engine_config(const RunConfig& cfg);

/// Parses "0,1,4" into integers. Throws InvalidArgument.
std::vector<std::int64_t> parse_int_list(const std::string& text);

/// Accepts a plain byte count or a K/M/G suffix (powers of 1024).
std::uint64_t parse_byte_size(const std::string& text);

}  // namespace emvt::config
