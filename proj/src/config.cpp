#include "emvt/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "emvt/errors.hpp"

namespace emvt::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& text) {
  std::istringstream ss(text);
  T v{};
  if constexpr (std::is_unsigned_v<T>) {
    if (!text.empty() && text.front() == '-') throw InvalidArgument("expected a nonnegative number, got '" + text + "'");
  }
  if (!(ss >> v) || !ss.eof()) throw InvalidArgument("expected a number, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& text) {
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no") return false;
  throw InvalidArgument("expected a boolean, got '" + text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"prime", [](RunConfig& c, const std::string& v) { c.prime = parse_number<std::uint64_t>(v); }},
      {"digits", [](RunConfig& c, const std::string& v) { c.digits = v; }},
      {"limit", [](RunConfig& c, const std::string& v) { c.limit = parse_number<std::uint64_t>(v); }},
      {"power", [](RunConfig& c, const std::string& v) { c.power = parse_number<int>(v); }},
      {"s", [](RunConfig& c, const std::string& v) { c.s = parse_number<int>(v); }},
      {"t", [](RunConfig& c, const std::string& v) { c.t = parse_number<int>(v); }},
      {"c", [](RunConfig& c, const std::string& v) { c.c = parse_number<int>(v); }},
      {"d", [](RunConfig& c, const std::string& v) { c.d = parse_number<int>(v); }},
      {"z", [](RunConfig& c, const std::string& v) { c.z = v; }},
      {"delta", [](RunConfig& c, const std::string& v) { c.delta = parse_number<double>(v); }},
      {"max_n", [](RunConfig& c, const std::string& v) { c.max_n = parse_number<std::uint64_t>(v); }},
      {"bound", [](RunConfig& c, const std::string& v) { c.bound = parse_number<std::uint64_t>(v); }},
      {"elements", [](RunConfig& c, const std::string& v) { c.elements = v; }},
      {"b_min", [](RunConfig& c, const std::string& v) { c.b_min = parse_number<int>(v); }},
      {"b_max", [](RunConfig& c, const std::string& v) { c.b_max = parse_number<int>(v); }},
      {"predictor", [](RunConfig& c, const std::string& v) { c.predictor = v; }},
      {"input", [](RunConfig& c, const std::string& v) { c.input = v; }},
      {"weights_file", [](RunConfig& c, const std::string& v) { c.weights_file = v; }},
      {"default_weight", [](RunConfig& c, const std::string& v) { c.default_weight = parse_number<double>(v); }},
      {"format", [](RunConfig& c, const std::string& v) { c.format = v; }},
      {"method", [](RunConfig& c, const std::string& v) { c.method = v; }},
      {"threads", [](RunConfig& c, const std::string& v) { c.threads = parse_number<unsigned>(v); }},
      {"memory_budget", [](RunConfig& c, const std::string& v) { c.memory_budget_bytes = parse_byte_size(v); }},
      {"oracle_cap", [](RunConfig& c, const std::string& v) { c.oracle_cap = parse_number<std::uint64_t>(v); }},
      {"out", [](RunConfig& c, const std::string& v) { c.out = v; }},
      {"stable_output", [](RunConfig& c, const std::string& v) { c.stable_output = parse_bool(v); }},
  };
  return table;
}

template <class T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  std::string k = key;
  for (auto& ch : k) {
    if (ch == '-') ch = '_';
  }
  const auto it = setters().find(k);
  if (it == setters().end()) throw UnknownKey("unknown key '" + key + "'");
  it->second(cfg, value);
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    for (auto& ch : key) {
      if (ch == '-') ch = '_';
    }
    if (key.empty()) throw ParseError("missing key", line_no);
    if (value.empty()) throw ParseError("missing value for '" + key + "'", line_no);
    const auto it = setters().find(key);
    if (it == setters().end()) throw UnknownKey("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string(e.what()) + " for '" + key + "'", line_no);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RunConfig merge(const RunConfig& base, const RunConfig& o) {
  RunConfig r = base;
  take(r.prime, o.prime);
  take(r.digits, o.digits);
  take(r.limit, o.limit);
  take(r.power, o.power);
  take(r.s, o.s);
  take(r.t, o.t);
  take(r.c, o.c);
  take(r.d, o.d);
  take(r.z, o.z);
  take(r.delta, o.delta);
  take(r.max_n, o.max_n);
  take(r.bound, o.bound);
  take(r.elements, o.elements);
  take(r.b_min, o.b_min);
  take(r.b_max, o.b_max);
  take(r.predictor, o.predictor);
  take(r.input, o.input);
  take(r.weights_file, o.weights_file);
  take(r.default_weight, o.default_weight);
  take(r.format, o.format);
  take(r.method, o.method);
  take(r.threads, o.threads);
  take(r.memory_budget_bytes, o.memory_budget_bytes);
  take(r.oracle_cap, o.oracle_cap);
  take(r.out, o.out);
  take(r.stable_output, o.stable_output);
  // A limit on one side and a power on the other: the overriding side wins.
  if (o.limit && !o.power) r.power.reset();
  if (o.power && !o.limit) r.limit.reset();
  return r;
}

EngineConfig engine_config(const RunConfig& cfg) {
  EngineConfig e;
  if (cfg.threads) {
    if (*cfg.threads == 0) throw InvalidArgument("--threads must be positive");
    e.threads = *cfg.threads;
  }
  if (cfg.memory_budget_bytes) {
    e.memory_budget_bytes = *cfg.memory_budget_bytes;
  } else if (const char* env = std::getenv("EMVT_MEMORY_BUDGET"); env && *env) {
    e.memory_budget_bytes = parse_byte_size(env);
  }
  if (e.memory_budget_bytes == 0) throw InvalidArgument("--memory-budget must be positive");
  if (cfg.oracle_cap) e.oracle_cap = *cfg.oracle_cap;
  return e;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::istringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    part = trim(part);
    if (part.empty()) throw InvalidArgument("empty entry in list '" + text + "'");
    out.push_back(parse_number<std::int64_t>(part));
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::uint64_t parse_byte_size(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty byte size");
  std::uint64_t mult = 1;
  switch (t.back()) {
    case 'K': case 'k': mult = 1ull << 10; break;
    case 'M': case 'm': mult = 1ull << 20; break;
    case 'G': case 'g': mult = 1ull << 30; break;
    default: break;
  }
  if (mult != 1) t.pop_back();
  const auto v = parse_number<std::uint64_t>(t);
  if (v > UINT64_MAX / mult) throw InvalidArgument("byte size too large: '" + text + "'");
  return v * mult;
}

}  // namespace emvt::config
