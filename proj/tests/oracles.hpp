#pragma once

// Naive reference implementations used only by the tests. They share no code
// with the library beyond plain integer types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline bool member(u64 n, u64 p, const std::set<u64>& digits) {
  if (n == 0) return false;
  for (; n > 0; n /= p) {
    if (!digits.count(n % p)) return false;
  }
  return true;
}

inline std::vector<u64> members(u64 X, u64 p, const std::set<u64>& digits) {
  std::vector<u64> out;
  for (u64 n = 1; n <= X; ++n) {
    if (member(n, p, digits)) out.push_back(n);
  }
  return out;
}

// Calls fn(tuple) for every s-tuple over `values`.
template <class Fn>
void each_tuple(const std::vector<u64>& values, int s, Fn&& fn) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(s), 0);
  std::vector<u64> tuple(static_cast<std::size_t>(s));
  if (values.empty()) return;
  while (true) {
    for (int i = 0; i < s; ++i) tuple[static_cast<std::size_t>(i)] = values[idx[static_cast<std::size_t>(i)]];
    fn(tuple);
    int pos = 0;
    while (pos < s && ++idx[static_cast<std::size_t>(pos)] == values.size()) idx[static_cast<std::size_t>(pos++)] = 0;
    if (pos == s) break;
  }
}

// Number of (x, y) in values^s x values^s with equal sums of first and second powers.
inline u128 vinogradov(const std::vector<u64>& values, int s) {
  std::map<std::pair<u64, u64>, u64> counts;
  each_tuple(values, s, [&](const std::vector<u64>& x) {
    u64 m1 = 0, m2 = 0;
    for (auto v : x) {
      m1 += v;
      m2 += v * v;
    }
    ++counts[{m1, m2}];
  });
  u128 total = 0;
  for (const auto& [k, c] : counts) total += static_cast<u128>(c) * c;
  return total;
}

// Same count by checking every pair of tuples; only for tiny inputs.
inline u64 vinogradov_pairs(const std::vector<u64>& values, int s) {
  std::vector<std::pair<u64, u64>> keys;
  each_tuple(values, s, [&](const std::vector<u64>& x) {
    u64 m1 = 0, m2 = 0;
    for (auto v : x) {
      m1 += v;
      m2 += v * v;
    }
    keys.emplace_back(m1, m2);
  });
  u64 total = 0;
  for (const auto& a : keys) {
    for (const auto& b : keys) total += a == b;
  }
  return total;
}

// Weighted version: each solution contributes prod w_x prod w_y.
template <class W>
double vinogradov_weighted(const std::vector<u64>& values, int s, W&& weight) {
  std::map<std::pair<u64, u64>, double> mass;
  each_tuple(values, s, [&](const std::vector<u64>& x) {
    u64 m1 = 0, m2 = 0;
    double w = 1.0;
    for (auto v : x) {
      m1 += v;
      m2 += v * v;
      w *= weight(v);
    }
    mass[{m1, m2}] += w;
  });
  double total = 0;
  for (const auto& [k, m] : mass) total += m * m;
  return total;
}

inline u64 pow_u64(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Pairs of s-tuples with sum of (x^j - y^j) = 0 mod m for j = 1, 2.
inline u64 congruence_pairs(const std::vector<u64>& values, int s, u64 m) {
  std::map<std::pair<u64, u64>, u64> counts;
  each_tuple(values, s, [&](const std::vector<u64>& x) {
    u64 m1 = 0, m2 = 0;
    for (auto v : x) {
      m1 = (m1 + v % m) % m;
      m2 = (m2 + (v % m) * (v % m) % m) % m;
    }
    ++counts[{m1, m2}];
  });
  u64 total = 0;
  for (const auto& [k, c] : counts) total += c * c;
  return total;
}

// Pairs (x, y) of t-tuples over `universe` with x_i = y_i = z_i mod p^c and
// sum x = sum y mod p^d, checked pair by pair.
inline u64 congruence_tuple_pairs(const std::vector<u64>& universe, int t, u64 pc, u64 pd,
                                  const std::vector<u64>& z) {
  std::vector<std::vector<u64>> tuples;
  each_tuple(universe, t, [&](const std::vector<u64>& x) {
    for (int i = 0; i < t; ++i) {
      if (x[static_cast<std::size_t>(i)] % pc != z[static_cast<std::size_t>(i)] % pc) return;
    }
    tuples.push_back(x);
  });
  u64 total = 0;
  for (const auto& x : tuples) {
    u64 sx = 0;
    for (auto v : x) sx += v;
    for (const auto& y : tuples) {
      u64 sy = 0;
      for (auto v : y) sy += v;
      total += sx % pd == sy % pd;
    }
  }
  return total;
}

// r_t(n) for 0 <= n <= max_n by t nested loops, expressed recursively.
inline std::vector<u64> representations(const std::vector<u64>& source, int t, u64 max_n) {
  std::vector<u64> r(max_n + 1, 0);
  std::vector<u64> tuple;
  auto rec = [&](auto&& self, int depth, u64 sum) -> void {
    if (sum > max_n) return;
    if (depth == t) {
      ++r[sum];
      return;
    }
    for (auto e : source) self(self, depth + 1, sum + e);
  };
  rec(rec, 0, 0);
  return r;
}

// Length-D digit strings over `digits` (leading zeros and 0 included).
inline std::vector<u64> digit_strings(u64 p, const std::set<u64>& digits, int D) {
  std::vector<u64> out;
  const u64 limit = pow_u64(p, D);
  for (u64 n = 0; n < limit; ++n) {
    bool ok = true;
    u64 v = n;
    for (int i = 0; i < D; ++i, v /= p) ok = ok && digits.count(v % p);
    if (ok) out.push_back(n);
  }
  return out;
}

}  // namespace oracle
