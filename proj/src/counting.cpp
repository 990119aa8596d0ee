#include "emvt/counting.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "emvt/detail/convolution_kernel.hpp"

namespace emvt::counting {

// ---------------------------------------------------------------------------
// WeightAssignment

WeightAssignment WeightAssignment::unit() {
  WeightAssignment w;
  w.default_ = 1.0;
  return w;
}

void WeightAssignment::set(std::uint64_t x, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("weight for " + std::to_string(x) + " outside [0, 1]");
  weights_[x] = w;
}

void WeightAssignment::set_default(double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("default weight outside [0, 1]");
  default_ = w;
}

double WeightAssignment::weight(std::uint64_t x) const {
  auto it = weights_.find(x);
  return it == weights_.end() ? default_ : it->second;
}

// ---------------------------------------------------------------------------
// Distribution primitives

namespace {

std::uint64_t checked_square(std::uint64_t x) {
  std::uint64_t sq = 0;
  if (__builtin_mul_overflow(x, x, &sq)) throw OverflowError("x^2 overflows 64 bits for x = " + std::to_string(x));
  return sq;
}

template <class Mass>
Mass twice(const Mass& m) {
  if constexpr (std::is_same_v<Mass, Count>) {
    return Count(2) * m;
  } else {
    return 2.0 * m;
  }
}

template <class Mass>
long double as_long_double(const Mass& m) {
  if constexpr (std::is_same_v<Mass, Count>) {
    return m.to_long_double();
  } else {
    return static_cast<long double>(m);
  }
}

template <class Mass, class Acc>
Mass from_acc(const Acc& v) {
  if constexpr (std::is_same_v<Acc, std::uint64_t>) {
    return Count(v);
  } else {
    return v;
  }
}

// Count masses take the unchecked 64-bit path when the total product mass
// cannot exceed 2^64: then neither any cell nor any product can wrap.
template <class Mass>
bool fits_fast_path(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b) {
  if constexpr (std::is_same_v<Mass, Count>) {
    try {
      return (a.total_mass() * b.total_mass()).fits_u64();
    } catch (const OverflowError&) {
      return false;
    }
  } else {
    return false;
  }
}

template <class Acc, class Mass>
BasicMomentDistribution<Mass> convolve_with(const BasicMomentDistribution<Mass>& a,
                                            const BasicMomentDistribution<Mass>& b, bool symmetric,
                                            const EngineConfig& cfg) {
  using Entry = MomentEntry<Mass>;
  const auto plan = detail::plan_kernel(a, b, symmetric, sizeof(Acc), cfg);
  const double predicted_bytes = static_cast<double>(plan.predicted_entries) * sizeof(Entry) * 2;
  if (predicted_bytes > static_cast<double>(cfg.memory_budget_bytes)) {
    throw MemoryBudgetExceeded("predicted convolution support (" + std::to_string(plan.predicted_entries) +
                               " entries) exceeds the memory budget");
  }
  std::vector<std::vector<Entry>> slots(plan.targets.size());
  detail::run_kernel<Acc>(a, b, symmetric, plan, cfg, [&](std::size_t ti, std::uint64_t m1, auto values) {
    auto& slot = slots[ti];
    slot.reserve(values.size());
    for (const auto& [m2, v] : values) slot.push_back(Entry{MomentVector{m1, m2}, from_acc<Mass>(v)});
  });
  std::size_t total = 0;
  for (const auto& s : slots) total += s.size();
  std::vector<Entry> out;
  out.reserve(total);
  for (auto& s : slots) {
    out.insert(out.end(), s.begin(), s.end());
    std::vector<Entry>().swap(s);
  }
  return BasicMomentDistribution<Mass>::from_sorted(a.folds() + b.folds(), std::move(out));
}

template <class Acc, class Mass>
Mass energy_of_product_with(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b,
                            bool symmetric, const EngineConfig& cfg) {
  const auto plan = detail::plan_kernel(a, b, symmetric, sizeof(Acc), cfg);
  if constexpr (std::is_same_v<Acc, std::uint64_t>) {
    // Sum of squares is at most (total product mass)^2 < 2^128.
    std::vector<u128> partial(plan.targets.size(), 0);
    detail::run_kernel<Acc>(a, b, symmetric, plan, cfg, [&](std::size_t ti, std::uint64_t, auto values) {
      u128 sum = 0;
      for (const auto& [m2, v] : values) sum += static_cast<u128>(v) * v;
      partial[ti] = sum;
    });
    Count total;
    for (auto v : partial) total += Count::from_raw(v);
    return total;
  } else {
    std::vector<Mass> partial(plan.targets.size(), Mass{});
    detail::run_kernel<Acc>(a, b, symmetric, plan, cfg, [&](std::size_t ti, std::uint64_t, auto values) {
      Mass sum{};
      for (const auto& [m2, v] : values) sum += v * v;
      partial[ti] = sum;
    });
    Mass total{};
    for (const auto& v : partial) total += v;
    return total;
  }
}

}  // namespace

MomentDistribution distribution_of(std::span<const std::uint64_t> values) {
  std::vector<MomentEntry<Count>> entries;
  entries.reserve(values.size());
  for (auto x : values) entries.push_back({MomentVector{x, checked_square(x)}, Count(1)});
  return MomentDistribution(1, std::move(entries));
}

WeightedMomentDistribution distribution_of(std::span<const std::uint64_t> values, const WeightAssignment& weights) {
  std::vector<MomentEntry<double>> entries;
  entries.reserve(values.size());
  for (auto x : values) {
    const double w = weights.weight(x);
    if (w > 0.0) entries.push_back({MomentVector{x, checked_square(x)}, w});
  }
  return WeightedMomentDistribution(1, std::move(entries));
}

MomentDistribution base_distribution(const EllipsephicSet& set, std::uint64_t X) {
  const auto members = set.enumerate_up_to(X);
  return distribution_of(members);
}

WeightedMomentDistribution base_distribution(const EllipsephicSet& set, std::uint64_t X,
                                             const WeightAssignment& weights) {
  const auto members = set.enumerate_up_to(X);
  return distribution_of(members, weights);
}

template <class Mass>
BasicMomentDistribution<Mass> convolve(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b,
                                       const EngineConfig& cfg) {
  if (a.empty() || b.empty()) return BasicMomentDistribution<Mass>::from_sorted(a.folds() + b.folds(), {});
  const bool symmetric = &a == &b;
  if constexpr (std::is_same_v<Mass, Count>) {
    if (fits_fast_path(a, b)) return convolve_with<std::uint64_t>(a, b, symmetric, cfg);
    return convolve_with<Count>(a, b, symmetric, cfg);
  } else {
    return convolve_with<double>(a, b, symmetric, cfg);
  }
}

template <class Mass>
BasicMomentDistribution<Mass> power(const BasicMomentDistribution<Mass>& base, int s, const EngineConfig& cfg) {
  if (s < 1) throw InvalidArgument("power needs s >= 1");
  BasicMomentDistribution<Mass> result = base;
  for (int k = 2; k <= s; ++k) result = convolve(result, base, cfg);
  return result;
}

template <class Mass>
Mass energy(const BasicMomentDistribution<Mass>& d) {
  Mass total{};
  for (const auto& e : d.entries()) total += e.mass * e.mass;
  return total;
}

template <class Mass>
Mass energy_of_product(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b,
                       const EngineConfig& cfg) {
  if (a.empty() || b.empty()) return Mass{};
  const bool symmetric = &a == &b;
  if constexpr (std::is_same_v<Mass, Count>) {
    if (fits_fast_path(a, b)) return energy_of_product_with<std::uint64_t>(a, b, symmetric, cfg);
    return energy_of_product_with<Count>(a, b, symmetric, cfg);
  } else {
    return energy_of_product_with<double>(a, b, symmetric, cfg);
  }
}

template <class Mass>
Mass inner_product(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b) {
  Mass total{};
  auto ea = a.entries();
  auto eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].key < eb[j].key) {
      ++i;
    } else if (eb[j].key < ea[i].key) {
      ++j;
    } else {
      total += ea[i].mass * eb[j].mass;
      ++i;
      ++j;
    }
  }
  return total;
}

template <class Mass>
BasicMomentDistribution<Mass> add(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b) {
  if (a.folds() != b.folds() && !a.empty() && !b.empty())
    throw InvalidArgument("cannot add distributions of different fold counts");
  std::vector<MomentEntry<Mass>> entries(a.entries().begin(), a.entries().end());
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return BasicMomentDistribution<Mass>(std::max(a.folds(), b.folds()), std::move(entries));
}

template <class Mass>
BasicMomentDistribution<Mass> fold(const BasicMomentDistribution<Mass>& d, std::uint64_t modulus) {
  if (modulus == 0) throw InvalidArgument("fold modulus must be positive");
  std::vector<MomentEntry<Mass>> entries;
  entries.reserve(d.size());
  for (const auto& e : d.entries()) entries.push_back({MomentVector{e.key.m1 % modulus, e.key.m2 % modulus}, e.mass});
  return BasicMomentDistribution<Mass>(d.folds(), std::move(entries));
}

template MomentDistribution convolve(const MomentDistribution&, const MomentDistribution&, const EngineConfig&);
template WeightedMomentDistribution convolve(const WeightedMomentDistribution&, const WeightedMomentDistribution&,
                                             const EngineConfig&);
template MomentDistribution power(const MomentDistribution&, int, const EngineConfig&);
template WeightedMomentDistribution power(const WeightedMomentDistribution&, int, const EngineConfig&);
template Count energy(const MomentDistribution&);
template double energy(const WeightedMomentDistribution&);
template Count energy_of_product(const MomentDistribution&, const MomentDistribution&, const EngineConfig&);
template double energy_of_product(const WeightedMomentDistribution&, const WeightedMomentDistribution&,
                                  const EngineConfig&);
template Count inner_product(const MomentDistribution&, const MomentDistribution&);
template double inner_product(const WeightedMomentDistribution&, const WeightedMomentDistribution&);
template MomentDistribution add(const MomentDistribution&, const MomentDistribution&);
template WeightedMomentDistribution add(const WeightedMomentDistribution&, const WeightedMomentDistribution&);
template MomentDistribution fold(const MomentDistribution&, std::uint64_t);
template WeightedMomentDistribution fold(const WeightedMomentDistribution&, std::uint64_t);

// ---------------------------------------------------------------------------
// Vinogradov counts

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Auto:
      return "auto";
    case Strategy::FullConvolution:
      return "full-convolution";
    case Strategy::MeetInTheMiddle:
      return "meet-in-the-middle";
  }
  return "unknown";
}

namespace {

// Distribution of values with unit weights (weights == nullptr) or real weights.
template <class Mass>
BasicMomentDistribution<Mass> make_distribution(std::span<const std::uint64_t> values,
                                                const WeightAssignment* weights) {
  if constexpr (std::is_same_v<Mass, Count>) {
    return distribution_of(values);
  } else {
    return distribution_of(values, weights ? *weights : WeightAssignment::unit());
  }
}

template <class Mass>
Mass norm2(std::span<const std::uint64_t> values, const WeightAssignment* weights) {
  if constexpr (std::is_same_v<Mass, Count>) {
    return Count(values.size());
  } else {
    double total = 0.0;
    for (auto x : values) {
      const double w = weights ? weights->weight(x) : 1.0;
      total += w * w;
    }
    return total;
  }
}

// Upper bound on the s-fold support: distinct multisets, and the moment grid.
double predicted_support(std::size_t Y, int s, std::uint64_t X) {
  double multisets = 1.0;
  for (int i = 1; i <= s; ++i) multisets = multisets * (static_cast<double>(Y) + i - 1) / i;
  const double x = static_cast<double>(X);
  const double grid = (s * x + 1) * (s * x * x + 1);
  return std::min(multisets, grid);
}

template <class Mass>
Mass energy_by_strategy(const BasicMomentDistribution<Mass>& base, std::size_t Y, std::uint64_t X, int s,
                        const EngineConfig& cfg, Strategy strategy, std::string& method) {
  if (s < 1) throw InvalidArgument("s must be >= 1");
  if (s == 1) {
    method = "direct";
    return energy(base);
  }
  if (strategy == Strategy::Auto) {
    const double bytes = predicted_support(Y, s, X) * sizeof(MomentEntry<Mass>) * 2;
    strategy = bytes <= static_cast<double>(cfg.memory_budget_bytes) ? Strategy::FullConvolution
                                                                      : Strategy::MeetInTheMiddle;
  }
  method = strategy_name(strategy);
  if (strategy == Strategy::FullConvolution) return energy(power(base, s, cfg));

  const int low_folds = s / 2;
  const auto low = power(base, low_folds, cfg);
  if (s - low_folds == low_folds) return energy_of_product(low, low, cfg);
  const auto high = convolve(low, base, cfg);
  return energy_of_product(high, low, cfg);
}

}  // namespace

CountResult vinogradov_count(const EllipsephicSet& set, std::uint64_t X, int s, const EngineConfig& cfg,
                             Strategy strategy) {
  const auto members = set.enumerate_up_to(X);
  const auto base = distribution_of(members);
  CountResult result;
  result.Y = Count(members.size());
  result.count = energy_by_strategy(base, members.size(), X, s, cfg, strategy, result.method);
  return result;
}

WeightedCountResult vinogradov_count(const EllipsephicSet& set, std::uint64_t X, int s,
                                     const WeightAssignment& weights, const EngineConfig& cfg, Strategy strategy) {
  const auto members = set.enumerate_up_to(X);
  const auto base = distribution_of(members, weights);
  WeightedCountResult result;
  result.Y = Count(members.size());
  result.value = energy_by_strategy(base, members.size(), X, s, cfg, strategy, result.method);
  return result;
}

Count brute_force_count(const EllipsephicSet& set, std::uint64_t X, int s, const EngineConfig& cfg) {
  if (s < 1) throw InvalidArgument("s must be >= 1");
  const auto members = set.enumerate_up_to(X);
  const std::size_t Y = members.size();
  if (Y == 0) return Count{};
  bool too_large = false;
  Count tuples;
  try {
    tuples = pow(Count(Y), static_cast<unsigned>(s));
    too_large = tuples * tuples > Count(cfg.oracle_cap);
  } catch (const OverflowError&) {
    too_large = true;
  }
  if (too_large || tuples.to_double() * 16.0 > static_cast<double>(cfg.memory_budget_bytes))
    throw OracleTooLarge("oracle needs Y^{2s} <= " + std::to_string(cfg.oracle_cap) + " (Y=" + std::to_string(Y) +
                         ", s=" + std::to_string(s) + ")");

  std::vector<std::uint64_t> squares(Y);
  for (std::size_t i = 0; i < Y; ++i) squares[i] = checked_square(members[i]);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> keys;
  keys.reserve(static_cast<std::size_t>(tuples.to_u64()));
  std::vector<std::size_t> index(static_cast<std::size_t>(s), 0);
  while (true) {
    std::uint64_t m1 = 0, m2 = 0;
    for (auto i : index) {
      if (__builtin_add_overflow(m1, members[i], &m1) || __builtin_add_overflow(m2, squares[i], &m2))
        throw OverflowError("tuple moments overflow 64 bits");
    }
    keys.emplace_back(m1, m2);
    int pos = 0;
    while (pos < s && ++index[static_cast<std::size_t>(pos)] == Y) index[static_cast<std::size_t>(pos++)] = 0;
    if (pos == s) break;
  }
  std::sort(keys.begin(), keys.end());
  Count total;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    total += Count(j - i) * Count(j - i);
    i = j;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Congruence classes

ClassNorm class_norm(const EllipsephicSet& set, std::uint64_t X, std::uint64_t xi, int a) {
  const auto members = set.class_members(xi, a, X);
  return ClassNorm{a, xi, Count(members.size())};
}

WeightedClassNorm class_norm(const EllipsephicSet& set, std::uint64_t X, std::uint64_t xi, int a,
                             const WeightAssignment& weights) {
  const auto members = set.class_members(xi, a, X);
  return WeightedClassNorm{a, xi, norm2<double>(members, &weights)};
}

template <class Mass>
double BasicRestrictedEnergy<Mass>::normalized() const {
  return static_cast<double>(as_long_double(raw) * static_cast<long double>(normalization));
}

template struct BasicRestrictedEnergy<Count>;
template struct BasicRestrictedEnergy<double>;

namespace {

template <class Mass>
BasicRestrictedEnergy<Mass> restricted_energy_impl(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b,
                                                   std::uint64_t xi, std::uint64_t eta,
                                                   const WeightAssignment* weights, const EngineConfig& cfg) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
  if (a < 0 || b < 0) throw InvalidArgument("class levels must be >= 0");
  const auto x_class = set.class_members(xi, a, X);
  const auto u_class = set.class_members(eta, b, X);
  BasicRestrictedEnergy<Mass> result;
  const Mass rho_a2 = norm2<Mass>(x_class, weights);
  const Mass rho_b2 = norm2<Mass>(u_class, weights);
  if (x_class.empty() || u_class.empty() || rho_a2 == Mass{} || rho_b2 == Mass{}) return result;

  const auto t_fold = power(make_distribution<Mass>(x_class, weights), t, cfg);
  const auto two_t_fold = power(make_distribution<Mass>(u_class, weights), 2 * t, cfg);
  result.raw = energy_of_product(t_fold, two_t_fold, cfg);
  result.normalization = static_cast<double>(std::pow(as_long_double(rho_a2), -static_cast<long double>(t)) *
                                             std::pow(as_long_double(rho_b2), -2.0L * t));
  return result;
}

}  // namespace

RestrictedEnergy restricted_energy(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b, std::uint64_t xi,
                                   std::uint64_t eta, const EngineConfig& cfg) {
  return restricted_energy_impl<Count>(set, X, t, a, b, xi, eta, nullptr, cfg);
}

WeightedRestrictedEnergy restricted_energy(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b,
                                           std::uint64_t xi, std::uint64_t eta, const WeightAssignment& weights,
                                           const EngineConfig& cfg) {
  return restricted_energy_impl<double>(set, X, t, a, b, xi, eta, &weights, cfg);
}

bool exactly_divides(std::uint64_t p, int e, std::uint64_t xi, std::uint64_t eta) {
  const std::uint64_t d = xi > eta ? xi - eta : eta - xi;
  if (d == 0) return false;
  std::uint64_t q = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(q, p, &q) || q > d) return false;
  }
  if (d % q != 0) return false;
  std::uint64_t next = 0;
  if (__builtin_mul_overflow(q, p, &next)) return true;
  return d % next != 0;
}

namespace {

template <class Mass>
double k_aggregate_impl(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b, int h,
                        const WeightAssignment* weights, const EngineConfig& cfg) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
  if (a < 1 || b < 1 || h < 1) throw InvalidArgument("k_aggregate needs a, b, h >= 1");
  const auto all = set.enumerate_up_to(X);
  const long double rho0_2 = as_long_double(norm2<Mass>(all, weights));
  if (rho0_2 == 0.0L) return 0.0;

  struct ClassData {
    std::uint64_t label = 0;
    long double rho2 = 0;
    BasicMomentDistribution<Mass> fold_dist;
  };
  auto collect = [&](int level, int folds) {
    std::vector<ClassData> out;
    for (auto label : set.class_labels(level)) {
      const auto members = set.class_members(label, level, X);
      const Mass r2 = norm2<Mass>(members, weights);
      if (members.empty() || r2 == Mass{}) continue;
      out.push_back({label, as_long_double(r2), power(make_distribution<Mass>(members, weights), folds, cfg)});
    }
    return out;
  };
  const auto xi_classes = collect(a, t);
  const auto eta_classes = collect(b, 2 * t);

  long double total = 0.0L;
  for (const auto& xc : xi_classes) {
    for (const auto& ec : eta_classes) {
      if (!exactly_divides(set.base(), h - 1, xc.label, ec.label)) continue;
      const long double raw = as_long_double(energy_of_product(xc.fold_dist, ec.fold_dist, cfg));
      const long double normalized = raw * std::pow(xc.rho2, -static_cast<long double>(t)) *
                                     std::pow(ec.rho2, -2.0L * t);
      total += xc.rho2 * ec.rho2 * normalized;
    }
  }
  return static_cast<double>(total / (rho0_2 * rho0_2));
}

}  // namespace

double k_aggregate(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b, int h, const EngineConfig& cfg) {
  return k_aggregate_impl<Count>(set, X, t, a, b, h, nullptr, cfg);
}

double k_aggregate(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b, int h,
                   const WeightAssignment& weights, const EngineConfig& cfg) {
  return k_aggregate_impl<double>(set, X, t, a, b, h, &weights, cfg);
}

namespace {

template <class Mass>
Mass reduced_energy_impl(const EllipsephicSet& set, std::uint64_t X, int s, int c, const WeightAssignment* weights,
                         const EngineConfig& cfg) {
  if (s < 1) throw InvalidArgument("s must be >= 1");
  if (c < 1) throw InvalidArgument("reduced_energy_mod needs c >= 1");
  const auto members = set.enumerate_up_to(X);
  // Moduli beyond 64 bits cannot reduce any moment.
  u128 modulus = 1;
  bool reduces = true;
  for (int i = 0; i < c && reduces; ++i) {
    modulus *= set.base();
    if (modulus >> 64) reduces = false;
  }
  const u128 max_moment = static_cast<u128>(s) * X * X;
  const auto q = static_cast<std::uint64_t>(modulus);
  auto reduce = [&](const BasicMomentDistribution<Mass>& d) { return reduces ? fold(d, q) : d; };

  const auto base = reduce(make_distribution<Mass>(members, weights));
  try {
    auto acc = base;
    for (int k = 2; k <= s; ++k) acc = reduce(convolve(acc, base, cfg));
    return energy(acc);
  } catch (const MemoryBudgetExceeded&) {
    if (reduces && modulus <= max_moment) throw;
    // No moment difference reaches the modulus: the congruences are equations.
    std::string method;
    return energy_by_strategy(make_distribution<Mass>(members, weights), members.size(), X, s, cfg,
                              Strategy::MeetInTheMiddle, method);
  }
}

}  // namespace

Count reduced_energy_mod(const EllipsephicSet& set, std::uint64_t X, int s, int c, const EngineConfig& cfg) {
  return reduced_energy_impl<Count>(set, X, s, c, nullptr, cfg);
}

double reduced_energy_mod(const EllipsephicSet& set, std::uint64_t X, int s, int c, const WeightAssignment& weights,
                          const EngineConfig& cfg) {
  return reduced_energy_impl<double>(set, X, s, c, &weights, cfg);
}

namespace {

template <class Mass>
BasicCongruencePartition<Mass> partition_impl(const EllipsephicSet& set, std::uint64_t X, int s, int h,
                                              std::uint64_t xi, const WeightAssignment* weights,
                                              const EngineConfig& cfg) {
  if (s < 1) throw InvalidArgument("s must be >= 1");
  if (h < 1) throw InvalidArgument("partition_by_congruence needs h >= 1");
  const auto members = set.class_members(h == 1 ? 0 : xi, h - 1, X);
  BasicCongruencePartition<Mass> result;
  if (members.empty()) return result;

  u128 q = 1;
  for (int i = 0; i < h && !(q >> 64); ++i) q *= set.base();
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_class;
  for (auto x : members) by_class[(q >> 64) ? x : static_cast<std::uint64_t>(x % static_cast<std::uint64_t>(q))].push_back(x);

  using Dist = BasicMomentDistribution<Mass>;
  const Dist base_all = make_distribution<Mass>(members, weights);
  std::vector<Dist> mono;        // tuples lying entirely in one class
  std::vector<Dist> complement;  // 1-fold, members outside that class
  for (const auto& [label, cls] : by_class) {
    mono.push_back(make_distribution<Mass>(cls, weights));
    std::vector<std::uint64_t> rest;
    for (auto x : members) {
      if (!std::binary_search(cls.begin(), cls.end(), x)) rest.push_back(x);
    }
    complement.push_back(make_distribution<Mass>(rest, weights));
  }
  const std::vector<Dist> mono_base = mono;
  Dist mixed = Dist::from_sorted(1, {});
  for (int k = 2; k <= s; ++k) {
    Dist next_mixed = convolve(mixed, base_all, cfg);
    for (std::size_t i = 0; i < mono.size(); ++i) next_mixed = add(next_mixed, convolve(mono[i], complement[i], cfg));
    mixed = std::move(next_mixed);
    for (std::size_t i = 0; i < mono.size(); ++i) mono[i] = convolve(mono[i], mono_base[i], cfg);
  }

  Dist mono_sum = Dist::from_sorted(s, {});
  for (const auto& m : mono) {
    result.all_congruent += energy(m);
    mono_sum = add(mono_sum, m);
  }
  Mass cross{};
  for (std::size_t i = 0; i < mono.size(); ++i) {
    for (std::size_t j = i + 1; j < mono.size(); ++j) cross += inner_product(mono[i], mono[j]);
  }
  result.remainder = energy(mixed) + twice(inner_product(mixed, mono_sum)) + twice(cross);

  std::string method;
  result.restricted_total =
      energy_by_strategy(base_all, members.size(), X, s, cfg, Strategy::MeetInTheMiddle, method);
  return result;
}

}  // namespace

CongruencePartition partition_by_congruence(const EllipsephicSet& set, std::uint64_t X, int s, int h,
                                            std::uint64_t xi, const EngineConfig& cfg) {
  return partition_impl<Count>(set, X, s, h, xi, nullptr, cfg);
}

WeightedCongruencePartition partition_by_congruence(const EllipsephicSet& set, std::uint64_t X, int s, int h,
                                                    std::uint64_t xi, const WeightAssignment& weights,
                                                    const EngineConfig& cfg) {
  return partition_impl<double>(set, X, s, h, xi, &weights, cfg);
}

}  // namespace emvt::counting
