#include "emvt/ellipsephic.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace emvt::ellipsephic {

DigitExpansion expand(std::uint64_t n, std::uint64_t p) {
  DigitExpansion e;
  e.value = n;
  do {
    e.digits.push_back(n % p);
    n /= p;
  } while (n != 0);
  return e;
}

std::string format_expansion(const DigitExpansion& e, std::uint64_t p) {
  std::string out;
  const bool wide = p > 10;
  for (auto it = e.digits.rbegin(); it != e.digits.rend(); ++it) {
    if (wide && it != e.digits.rbegin()) out += '.';
    out += std::to_string(*it);
  }
  out += '_';
  out += std::to_string(p);
  return out;
}

std::uint64_t checked_pow(std::uint64_t p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, p, &r)) throw OverflowError("p^e does not fit 64 bits");
  }
  return r;
}

bool padded_digits_permitted(const DigitSet& ds, std::uint64_t v, int width) {
  const std::uint64_t p = ds.base();
  for (int i = 0; i < width; ++i) {
    if (!ds.permits(v % p)) return false;
    v /= p;
  }
  return true;
}

bool EllipsephicSet::contains(std::uint64_t n) const noexcept {
  if (n == 0) return false;
  const std::uint64_t p = base();
  while (n != 0) {
    if (!digits_.permits(n % p)) return false;
    n /= p;
  }
  return true;
}

std::vector<std::uint64_t> EllipsephicSet::enumerate_up_to(std::uint64_t X) const {
  std::vector<std::uint64_t> out;
  if (X == 0) throw InvalidArgument("enumerate_up_to needs X >= 1");
  const std::uint64_t p = base();
  const auto top = expand(X, p).digits;  // least significant first
  const int length = static_cast<int>(top.size());
  const auto allowed = digits_.digits();

  // Walk digit positions from the top; a not-yet-started prefix stands for
  // leading zeros, which are not digits of the number and need not be permitted.
  std::function<void(int, std::uint64_t, bool, bool)> walk = [&](int pos, std::uint64_t prefix, bool tight,
                                                                 bool started) {
    if (pos < 0) {
      if (started) out.push_back(prefix);
      return;
    }
    const std::uint64_t limit = tight ? top[static_cast<std::size_t>(pos)] : p - 1;
    if (!started) walk(pos - 1, 0, tight && limit == 0, false);
    for (auto d : allowed) {
      if (d > limit) break;
      if (!started && d == 0) continue;
      walk(pos - 1, prefix * p + d, tight && d == limit, true);
    }
  };
  walk(length - 1, 0, true, false);
  return out;
}

Count EllipsephicSet::count_up_to(std::uint64_t X) const {
  if (X == 0) return Count{};
  const std::uint64_t p = base();
  const auto top = expand(X, p).digits;
  const Count r(digits_.size());
  std::uint64_t nonzero_permitted = 0;
  for (auto d : digits_.digits()) nonzero_permitted += (d != 0);

  Count loose_started;        // prefixes already below X's prefix, number begun
  bool loose_unstarted = false;  // the all-leading-zeros prefix below X's prefix
  bool tight_alive = true;       // prefix equal to X's prefix, all digits permitted
  bool tight_started = false;

  for (int pos = static_cast<int>(top.size()) - 1; pos >= 0; --pos) {
    const std::uint64_t xd = top[static_cast<std::size_t>(pos)];
    Count next_loose = loose_started * r;
    if (loose_unstarted) next_loose += Count(nonzero_permitted);
    bool next_unstarted = loose_unstarted;
    bool next_tight = false;
    if (tight_alive) {
      if (!tight_started && xd > 0) next_unstarted = true;  // leading zero below xd
      for (auto d : digits_.digits()) {
        if (!tight_started && d == 0) continue;
        if (d < xd) next_loose += Count(1);
        if (d == xd) next_tight = true;
      }
    }
    loose_started = next_loose;
    loose_unstarted = next_unstarted;
    tight_started = tight_started || (tight_alive && xd != 0);
    tight_alive = next_tight;
  }
  if (tight_alive && tight_started) loose_started += Count(1);
  return loose_started;
}

std::vector<std::uint64_t> EllipsephicSet::class_members(std::uint64_t xi, int a, std::uint64_t X) const {
  if (a < 0) throw InvalidArgument("class level a must be >= 0");
  if (a == 0) return enumerate_up_to(X);
  std::uint64_t q = 1;
  bool modulus_exceeds_x = false;
  for (int i = 0; i < a; ++i) {
    if (__builtin_mul_overflow(q, base(), &q) || q > X) {
      modulus_exceeds_x = true;
      break;
    }
  }
  if (!modulus_exceeds_x && xi >= q) throw InvalidArgument("class label must lie in [0, p^a)");

  std::vector<std::uint64_t> out;
  if (xi >= 1 && xi <= X && contains(xi)) out.push_back(xi);
  if (modulus_exceeds_x || xi > X) return out;
  if (!padded_digits_permitted(digits_, xi, a)) return out;
  const std::uint64_t quotient_limit = (X - xi) / q;
  if (quotient_limit == 0) return out;
  for (auto m : enumerate_up_to(quotient_limit)) out.push_back(xi + q * m);
  return out;
}

std::vector<std::uint64_t> EllipsephicSet::class_labels(int a) const {
  if (a < 0) throw InvalidArgument("class level a must be >= 0");
  if (a == 0) return {0};
  const std::uint64_t q = checked_pow(base(), a);
  std::vector<std::uint64_t> labels{0};
  for (int pos = 0; pos < a; ++pos) {
    const std::uint64_t weight = checked_pow(base(), pos);
    std::vector<std::uint64_t> next;
    next.reserve(labels.size() * digits_.size());
    for (auto d : digits_.digits()) {
      for (auto v : labels) next.push_back(v + d * weight);
    }
    labels = std::move(next);
  }
  if (q > 1) {
    for (auto m : enumerate_up_to(q - 1)) labels.push_back(m);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace emvt::ellipsephic
