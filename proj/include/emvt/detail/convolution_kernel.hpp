#pragma once

// Slice-by-first-moment convolution of two sparse moment distributions.
//
// The output is produced one target first moment M at a time: every pair of
// input slices (m1 = a, m1 = M - a) is multiplied into an accumulator over
// second moments, which is either a dense window [lo, hi] or, when the window
// is much wider than the number of products, a sorted product list. Targets
// are independent work items, so the result (and the order in which masses
// are added for real weights) does not depend on the worker count.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "emvt/count.hpp"
#include "emvt/errors.hpp"
#include "emvt/moment_distribution.hpp"
#include "emvt/parallel.hpp"

namespace emvt::counting::detail {

struct Slice {
  std::uint64_t m1 = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::uint64_t min_m2 = 0;
  std::uint64_t max_m2 = 0;
};

struct SlicePair {
  std::uint64_t target = 0;
  std::uint32_t ia = 0;
  std::uint32_t ib = 0;
};

struct TargetPlan {
  std::uint64_t m1 = 0;
  std::size_t first = 0;  // range into the sorted SlicePair list
  std::size_t last = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  double products = 0.0;
  bool dense = false;
};

template <class Mass>
std::vector<Slice> slices_of(std::span<const MomentEntry<Mass>> entries) {
  std::vector<Slice> out;
  for (std::size_t i = 0; i < entries.size();) {
    Slice s;
    s.m1 = entries[i].key.m1;
    s.begin = i;
    s.min_m2 = entries[i].key.m2;
    while (i < entries.size() && entries[i].key.m1 == s.m1) ++i;
    s.end = i;
    s.max_m2 = entries[i - 1].key.m2;
    out.push_back(s);
  }
  return out;
}

// Accumulator types: std::uint64_t for exact counts whose total product mass
// is below 2^64 (no entry can then wrap), Count otherwise, double for weights.
template <class Acc, class Mass>
Acc to_acc(const Mass& m) {
  if constexpr (std::is_same_v<Acc, std::uint64_t>) {
    return static_cast<std::uint64_t>(m.raw());
  } else {
    return Acc(m);
  }
}

template <class Acc>
bool acc_is_zero(const Acc& a) {
  return a == Acc{};
}

struct KernelPlan {
  std::vector<Slice> slices_a;
  std::vector<Slice> slices_b;
  std::vector<SlicePair> pairs;
  std::vector<TargetPlan> targets;
  std::uint64_t dense_window_cap = 0;
  std::uint64_t predicted_entries = 0;
  std::uint64_t max_dense_window = 0;
  std::uint64_t max_sparse_products = 0;
};

template <class Mass>
KernelPlan plan_kernel(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b, bool symmetric,
                       std::size_t acc_bytes, const EngineConfig& cfg) {
  KernelPlan plan;
  plan.slices_a = slices_of<Mass>(a.entries());
  plan.slices_b = symmetric ? plan.slices_a : slices_of<Mass>(b.entries());
  const auto& sa = plan.slices_a;
  const auto& sb = plan.slices_b;
  if (sa.size() > std::numeric_limits<std::uint32_t>::max() || sb.size() > std::numeric_limits<std::uint32_t>::max())
    throw MemoryBudgetExceeded("too many first-moment slices");

  const double pair_bytes = static_cast<double>(sa.size()) * static_cast<double>(sb.size()) * sizeof(SlicePair);
  if (pair_bytes > static_cast<double>(cfg.memory_budget_bytes) / 4)
    throw MemoryBudgetExceeded("slice pairing table exceeds memory budget");
  for (std::uint32_t i = 0; i < sa.size(); ++i) {
    for (std::uint32_t j = symmetric ? i : 0; j < sb.size(); ++j) {
      SlicePair sp;
      if (__builtin_add_overflow(sa[i].m1, sb[j].m1, &sp.target)) throw OverflowError("first moment overflows");
      sp.ia = i;
      sp.ib = j;
      plan.pairs.push_back(sp);
    }
  }
  std::stable_sort(plan.pairs.begin(), plan.pairs.end(),
                   [](const SlicePair& x, const SlicePair& y) { return x.target < y.target; });

  const unsigned workers = std::max(1u, cfg.threads);
  plan.dense_window_cap =
      std::min<std::uint64_t>(std::uint64_t{1} << 27, cfg.memory_budget_bytes / (4ull * workers * (acc_bytes + 16)));

  for (std::size_t k = 0; k < plan.pairs.size();) {
    TargetPlan t;
    t.m1 = plan.pairs[k].target;
    t.first = k;
    t.lo = std::numeric_limits<std::uint64_t>::max();
    t.hi = 0;
    for (; k < plan.pairs.size() && plan.pairs[k].target == t.m1; ++k) {
      const Slice& x = sa[plan.pairs[k].ia];
      const Slice& y = sb[plan.pairs[k].ib];
      std::uint64_t lo = 0, hi = 0;
      if (__builtin_add_overflow(x.min_m2, y.min_m2, &lo) || __builtin_add_overflow(x.max_m2, y.max_m2, &hi))
        throw OverflowError("second moment overflows 64 bits");
      t.lo = std::min(t.lo, lo);
      t.hi = std::max(t.hi, hi);
      t.products += static_cast<double>(x.end - x.begin) * static_cast<double>(y.end - y.begin);
    }
    t.last = k;
    const std::uint64_t window = t.hi - t.lo + 1;
    t.dense = window <= plan.dense_window_cap && static_cast<double>(window) <= 16.0 * t.products + 4096.0;
    if (t.dense) {
      plan.max_dense_window = std::max(plan.max_dense_window, window);
    } else {
      plan.max_sparse_products = std::max(plan.max_sparse_products, static_cast<std::uint64_t>(t.products));
    }
    plan.predicted_entries += static_cast<std::uint64_t>(std::min(static_cast<double>(window), t.products));
    plan.targets.push_back(t);
  }

  const double scratch = static_cast<double>(workers) *
                         (static_cast<double>(plan.max_dense_window) * (acc_bytes + 16) +
                          static_cast<double>(plan.max_sparse_products) * (acc_bytes + 8) * 2);
  if (scratch > static_cast<double>(cfg.memory_budget_bytes))
    throw MemoryBudgetExceeded("convolution scratch space exceeds memory budget");
  return plan;
}

// Runs the convolution; on_target(target_index, m1, values) receives every
// target's nonzero (m2, mass) pairs in ascending m2 order. It is called from
// worker threads, at most once per target index.
template <class Acc, class Mass, class OnTarget>
void run_kernel(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b, bool symmetric,
                const KernelPlan& plan, const EngineConfig& cfg, OnTarget&& on_target) {
  // Structure-of-arrays copies for the inner loops.
  auto split = [](const BasicMomentDistribution<Mass>& d, std::vector<std::uint64_t>& m2, std::vector<Acc>& mass) {
    m2.reserve(d.size());
    mass.reserve(d.size());
    for (const auto& e : d.entries()) {
      m2.push_back(e.key.m2);
      mass.push_back(to_acc<Acc>(e.mass));
    }
  };
  std::vector<std::uint64_t> a_m2, b_m2_storage;
  std::vector<Acc> a_mass, b_mass_storage;
  split(a, a_m2, a_mass);
  if (!symmetric) split(b, b_m2_storage, b_mass_storage);
  const std::vector<std::uint64_t>& b_m2 = symmetric ? a_m2 : b_m2_storage;
  const std::vector<Acc>& b_mass = symmetric ? a_mass : b_mass_storage;

  const unsigned workers = std::max(1u, cfg.threads);
  struct Scratch {
    std::vector<Acc> window;
    std::vector<std::pair<std::uint64_t, Acc>> products;
    std::vector<std::pair<std::uint64_t, Acc>> values;
  };
  std::vector<Scratch> scratch(std::min<std::size_t>(workers, std::max<std::size_t>(1, plan.targets.size())));

  parallel_for(plan.targets.size(), workers, [&](std::size_t ti, std::size_t w) {
    const TargetPlan& t = plan.targets[ti];
    Scratch& s = scratch[w];
    s.values.clear();

    auto for_each_product = [&](auto&& add) {
      for (std::size_t k = t.first; k < t.last; ++k) {
        const Slice& x = plan.slices_a[plan.pairs[k].ia];
        const Slice& y = plan.slices_b[plan.pairs[k].ib];
        if (symmetric && x.m1 == y.m1) {
          // Same slice: unordered pairs i < j count twice, plus the diagonal.
          for (std::size_t i = x.begin; i < x.end; ++i) {
            const Acc mi = a_mass[i];
            add(a_m2[i] + a_m2[i], mi * mi);
            const Acc twice = mi + mi;
            for (std::size_t j = i + 1; j < x.end; ++j) add(a_m2[i] + b_m2[j], twice * b_mass[j]);
          }
        } else if (symmetric) {
          for (std::size_t i = x.begin; i < x.end; ++i) {
            const Acc twice = a_mass[i] + a_mass[i];
            for (std::size_t j = y.begin; j < y.end; ++j) add(a_m2[i] + b_m2[j], twice * b_mass[j]);
          }
        } else {
          for (std::size_t i = x.begin; i < x.end; ++i) {
            const Acc mi = a_mass[i];
            for (std::size_t j = y.begin; j < y.end; ++j) add(a_m2[i] + b_m2[j], mi * b_mass[j]);
          }
        }
      }
    };

    if (t.dense) {
      const std::size_t window = static_cast<std::size_t>(t.hi - t.lo + 1);
      if (s.window.size() < window) s.window.resize(window, Acc{});
      Acc* base = s.window.data() - t.lo;
      for_each_product([base](std::uint64_t m2, Acc v) { base[m2] += v; });
      for (std::size_t i = 0; i < window; ++i) {
        Acc& cell = s.window[i];
        if (!acc_is_zero(cell)) {
          s.values.emplace_back(t.lo + i, cell);
          cell = Acc{};
        }
      }
    } else {
      s.products.clear();
      for_each_product([&s](std::uint64_t m2, Acc v) { s.products.emplace_back(m2, v); });
      // Stable so equal keys combine in generation order.
      std::stable_sort(s.products.begin(), s.products.end(),
                       [](const auto& x, const auto& y) { return x.first < y.first; });
      for (std::size_t i = 0; i < s.products.size();) {
        std::uint64_t key = s.products[i].first;
        Acc sum{};
        for (; i < s.products.size() && s.products[i].first == key; ++i) sum += s.products[i].second;
        if (!acc_is_zero(sum)) s.values.emplace_back(key, sum);
      }
    }
    on_target(ti, t.m1, std::span<const std::pair<std::uint64_t, Acc>>(s.values));
  });
}

}  // namespace emvt::counting::detail
