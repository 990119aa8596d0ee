#include "emvt/digitset.hpp"

#include <algorithm>
#include <cmath>

namespace emvt::digitset {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::string DigitSet::digits_string() const {
  std::string out;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits_[i]);
  }
  return out;
}

DigitSet make_digit_set(std::uint64_t p, std::vector<std::int64_t> digits) {
  if (p <= 2 || !is_prime(p)) throw NonPrimeBase("base " + std::to_string(p) + " is not an odd prime");
  std::vector<std::uint64_t> kept;
  for (auto d : digits) {
    if (d >= 0 && static_cast<std::uint64_t>(d) < p) kept.push_back(static_cast<std::uint64_t>(d));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.size() < 2 || kept.size() > p - 1) {
    throw InadmissibleDigits("need 2 <= #A_p <= p-1 permitted digits, got " + std::to_string(kept.size()) +
                             " for p=" + std::to_string(p));
  }
  DigitSet ds;
  ds.p_ = p;
  ds.digits_ = std::move(kept);
  ds.allowed_.assign(p, false);
  for (auto d : ds.digits_) ds.allowed_[d] = true;
  return ds;
}

DigitSet squares_digit_set(std::uint64_t p) {
  if (p <= 2 || !is_prime(p)) throw NonPrimeBase("base " + std::to_string(p) + " is not an odd prime");
  std::vector<std::int64_t> squares;
  for (std::uint64_t k = 0; k * k <= p - 1; ++k) squares.push_back(static_cast<std::int64_t>(k * k));
  return make_digit_set(p, std::move(squares));
}

DigitSourceSet make_source_set(std::vector<std::int64_t> elements, std::string description) {
  DigitSourceSet src;
  src.description = std::move(description);
  src.elements.reserve(elements.size());
  for (auto e : elements) {
    if (e < 0) throw InvalidArgument("source set elements must be nonnegative");
    src.elements.push_back(static_cast<std::uint64_t>(e));
  }
  std::sort(src.elements.begin(), src.elements.end());
  src.elements.erase(std::unique(src.elements.begin(), src.elements.end()), src.elements.end());
  return src;
}

DigitSourceSet squares_up_to(std::uint64_t bound) {
  DigitSourceSet src;
  src.description = "squares <= " + std::to_string(bound);
  for (std::uint64_t k = 0; k * k <= bound; ++k) src.elements.push_back(k * k);
  return src;
}

DigitSourceSet source_from_digits(const DigitSet& digits) {
  DigitSourceSet src;
  src.description = "digits {" + digits.digits_string() + "}";
  src.elements.assign(digits.digits().begin(), digits.digits().end());
  return src;
}

RepresentationProfile convolve_profiles(const RepresentationProfile& a, const RepresentationProfile& b) {
  RepresentationProfile out;
  out.t = a.t + b.t;
  out.max_n = std::min(a.max_n, b.max_n);
  out.counts.assign(out.max_n + 1, Count{});

  std::vector<std::uint64_t> support_b;
  for (std::uint64_t n = 0; n <= out.max_n; ++n) {
    if (!b.counts[n].is_zero()) support_b.push_back(n);
  }
  for (std::uint64_t i = 0; i <= out.max_n; ++i) {
    const Count ca = a.counts[i];
    if (ca.is_zero()) continue;
    for (auto j : support_b) {
      if (i + j > out.max_n) break;
      out.counts[i + j] += ca * b.counts[j];
    }
  }
  return out;
}

namespace {

RepresentationProfile indicator_profile(const DigitSourceSet& source, std::uint64_t max_n) {
  RepresentationProfile base;
  base.t = 1;
  base.max_n = max_n;
  base.counts.assign(max_n + 1, Count{});
  for (auto e : source.elements) {
    if (e <= max_n) base.counts[e] = Count(1);
  }
  return base;
}

}  // namespace

RepresentationProfile representation_counts(const DigitSourceSet& source, int t, std::uint64_t max_n) {
  if (t < 2) throw InvalidArgument("representation_counts needs t >= 2");
  RepresentationProfile power = indicator_profile(source, max_n);
  RepresentationProfile result;
  bool have_result = false;
  // Binary powering: t = sum of 2^k, each factor a power profile.
  for (int remaining = t; remaining > 0; remaining >>= 1) {
    if (remaining & 1) {
      result = have_result ? convolve_profiles(result, power) : power;
      have_result = true;
    }
    if (remaining > 1) power = convolve_profiles(power, power);
  }
  result.t = t;
  return result;
}

DeltaFitReport delta_fit(const RepresentationProfile& profile, double delta) {
  if (profile.max_n < 1 || profile.counts.size() < 2) throw EmptyProfile("delta_fit needs max_n >= 1");
  if (!(delta >= 0.0)) throw InvalidArgument("delta must be nonnegative");
  DeltaFitReport report;
  report.delta = delta;
  report.max_ratio = -1.0;
  for (std::uint64_t n = 1; n <= profile.max_n; ++n) {
    const double ratio = profile.counts[n].to_double() / std::pow(static_cast<double>(n), delta);
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax_n = n;
    }
  }
  return report;
}

}  // namespace emvt::digitset
