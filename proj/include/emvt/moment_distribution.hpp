#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "emvt/count.hpp"

namespace emvt::counting {

/// (sum x_i, sum x_i^2) of a tuple. Two tuples solve the quadratic
/// Vinogradov system exactly when their moment vectors coincide.
struct MomentVector {
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  friend auto operator<=>(const MomentVector&, const MomentVector&) = default;
};

template <class Mass>
struct MomentEntry {
  MomentVector key;
  Mass mass{};
  friend bool operator==(const MomentEntry&, const MomentEntry&) = default;
};

/// Sparse map from moment vectors to masses for s-fold tuples.
///
/// Entries are kept sorted by (m1, m2) with no duplicate keys and no zero
/// masses. Mass is Count (exact, unit weights) or double (real weights in
/// [0, 1]). Immutable once built.
template <class Mass>
class BasicMomentDistribution {
 public:
  using Entry = MomentEntry<Mass>;

  BasicMomentDistribution() = default;

  /// Sorts, merges equal keys and drops zero masses.
  BasicMomentDistribution(int folds, std::vector<Entry> entries) : folds_(folds), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries_.size();) {
      Entry merged = entries_[i];
      std::size_t j = i + 1;
      for (; j < entries_.size() && entries_[j].key == merged.key; ++j) merged.mass += entries_[j].mass;
      if (!(merged.mass == Mass{})) entries_[out++] = merged;
      i = j;
    }
    entries_.resize(out);
  }

  /// Trusts the caller: entries already sorted, unique and nonzero.
  static BasicMomentDistribution from_sorted(int folds, std::vector<Entry> entries) {
    BasicMomentDistribution d;
    d.folds_ = folds;
    d.entries_ = std::move(entries);
    return d;
  }

  int folds() const noexcept { return folds_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Mass total_mass() const {
    Mass total{};
    for (const auto& e : entries_) total += e.mass;
    return total;
  }

  Mass mass_at(MomentVector key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const Entry& e, const MomentVector& k) { return e.key < k; });
    return (it != entries_.end() && it->key == key) ? it->mass : Mass{};
  }

  friend bool operator==(const BasicMomentDistribution&, const BasicMomentDistribution&) = default;

 private:
  int folds_ = 0;
  std::vector<Entry> entries_;
};

using MomentDistribution = BasicMomentDistribution<Count>;
using WeightedMomentDistribution = BasicMomentDistribution<double>;

}  // namespace emvt::counting
