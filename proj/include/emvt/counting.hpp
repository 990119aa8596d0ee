#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "emvt/count.hpp"
#include "emvt/ellipsephic.hpp"
#include "emvt/moment_distribution.hpp"
#include "emvt/parallel.hpp"

namespace emvt::counting {

using ellipsephic::EllipsephicSet;

/// Real weights w_x in [0, 1] on members of E.
///
/// Members without an explicit weight get default_weight(), which is 0
/// unless set otherwise; unit() gives every member weight 1.
class WeightAssignment {
 public:
  WeightAssignment() = default;
  static WeightAssignment unit();

  void set(std::uint64_t x, double w);  // throws InvalidArgument outside [0, 1]
  void set_default(double w);
  double weight(std::uint64_t x) const;
  double default_weight() const noexcept { return default_; }
  const std::map<std::uint64_t, double>& explicit_weights() const noexcept { return weights_; }

 private:
  std::map<std::uint64_t, double> weights_;
  double default_ = 0.0;
};

// ---------------------------------------------------------------------------
// Distributions

/// (x, x^2) -> 1 for each x in E(X).
MomentDistribution base_distribution(const EllipsephicSet& set, std::uint64_t X);
/// (x, x^2) -> w_x for each x in E(X) with w_x > 0.
WeightedMomentDistribution base_distribution(const EllipsephicSet& set, std::uint64_t X,
                                             const WeightAssignment& weights);

MomentDistribution distribution_of(std::span<const std::uint64_t> values);
WeightedMomentDistribution distribution_of(std::span<const std::uint64_t> values, const WeightAssignment& weights);

/// s1 + s2 fold distribution. Throws MemoryBudgetExceeded when the predicted
/// support does not fit cfg.memory_budget_bytes.
template <class Mass>
BasicMomentDistribution<Mass> convolve(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b,
                                       const EngineConfig& cfg = {});

/// s-fold power of a 1-fold distribution by repeated convolution.
template <class Mass>
BasicMomentDistribution<Mass> power(const BasicMomentDistribution<Mass>& base, int s, const EngineConfig& cfg = {});

/// Sum over entries of mass^2; for an s-fold distribution of E(X) this is
/// the solution count of the s-variable system.
template <class Mass>
Mass energy(const BasicMomentDistribution<Mass>& d);

/// energy(convolve(a, b)) without materializing the product.
template <class Mass>
Mass energy_of_product(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b,
                       const EngineConfig& cfg = {});

/// Sum over common keys of mass_a * mass_b.
template <class Mass>
Mass inner_product(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b);

/// Entry-wise sum (fold counts must agree).
template <class Mass>
BasicMomentDistribution<Mass> add(const BasicMomentDistribution<Mass>& a, const BasicMomentDistribution<Mass>& b);

/// Both moment coordinates reduced modulo `modulus`.
template <class Mass>
BasicMomentDistribution<Mass> fold(const BasicMomentDistribution<Mass>& d, std::uint64_t modulus);

// ---------------------------------------------------------------------------
// Vinogradov counts

enum class Strategy { Auto, FullConvolution, MeetInTheMiddle };

const char* strategy_name(Strategy s);

struct CountResult {
  Count count;
  Count Y;
  std::string method;
};

struct WeightedCountResult {
  double value = 0.0;
  Count Y;
  std::string method;
};

/// I_s(X): solutions of sum x^j = sum y^j (j = 1, 2) over E(X)^s.
///
/// FullConvolution materializes the s-fold distribution; MeetInTheMiddle
/// builds the ceil(s/2)- and floor(s/2)-fold halves and streams the energy
/// of their product. Auto picks full convolution when the s-fold support
/// provably fits the memory budget. Both paths return the same integer.
CountResult vinogradov_count(const EllipsephicSet& set, std::uint64_t X, int s, const EngineConfig& cfg = {},
                             Strategy strategy = Strategy::Auto);

/// J_s(X) with real weights: each solution counted with weight prod w_x prod w_y.
WeightedCountResult vinogradov_count(const EllipsephicSet& set, std::uint64_t X, int s,
                                     const WeightAssignment& weights, const EngineConfig& cfg = {},
                                     Strategy strategy = Strategy::Auto);

/// Independent oracle: enumerates every s-tuple, sorts by moment key and sums
/// squared run lengths. Throws OracleTooLarge when Y^{2s} > cfg.oracle_cap.
Count brute_force_count(const EllipsephicSet& set, std::uint64_t X, int s, const EngineConfig& cfg = {});

// ---------------------------------------------------------------------------
// Congruence classes

template <class Mass>
struct BasicClassNorm {
  int a = 0;
  std::uint64_t xi = 0;
  Mass value2{};  // rho_a(xi)^2
};
using ClassNorm = BasicClassNorm<Count>;
using WeightedClassNorm = BasicClassNorm<double>;

/// rho_a(xi)^2 = sum of w_x^2 over x in E(X), x = xi mod p^a. a = 0 gives rho_0^2.
ClassNorm class_norm(const EllipsephicSet& set, std::uint64_t X, std::uint64_t xi, int a);
WeightedClassNorm class_norm(const EllipsephicSet& set, std::uint64_t X, std::uint64_t xi, int a,
                             const WeightAssignment& weights);

template <class Mass>
struct BasicRestrictedEnergy {
  Mass raw{};
  // rho_a(xi)^{-2t} rho_b(eta)^{-4t}; 0 when either class is empty.
  double normalization = 0.0;
  double normalized() const;
};
using RestrictedEnergy = BasicRestrictedEnergy<Count>;
using WeightedRestrictedEnergy = BasicRestrictedEnergy<double>;

/// Raw count of sum_{i<=t}(x_i^j - y_i^j) = sum_{l<=2t}(u_l^j - v_l^j), j = 1, 2,
/// with x, y = xi mod p^a and u, v = eta mod p^b (level 0 means unrestricted).
RestrictedEnergy restricted_energy(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b,
                                   std::uint64_t xi, std::uint64_t eta, const EngineConfig& cfg = {});
WeightedRestrictedEnergy restricted_energy(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b,
                                           std::uint64_t xi, std::uint64_t eta, const WeightAssignment& weights,
                                           const EngineConfig& cfg = {});

/// p^e exactly divides |d| (p^e | d and p^{e+1} does not); false for d = 0.
bool exactly_divides(std::uint64_t p, int e, std::uint64_t xi, std::uint64_t eta);

/// K^h_{a,b}: rho_0^{-4} sum over class labels xi mod p^a, eta mod p^b with
/// p^{h-1} || (xi - eta) of rho_a(xi)^2 rho_b(eta)^2 I_{a,b}(xi, eta).
double k_aggregate(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b, int h,
                   const EngineConfig& cfg = {});
double k_aggregate(const EllipsephicSet& set, std::uint64_t X, int t, int a, int b, int h,
                   const WeightAssignment& weights, const EngineConfig& cfg = {});

/// Solutions of sum (x_i^j - y_i^j) = 0 mod p^c, j = 1, 2, over E(X)^s.
Count reduced_energy_mod(const EllipsephicSet& set, std::uint64_t X, int s, int c, const EngineConfig& cfg = {});
double reduced_energy_mod(const EllipsephicSet& set, std::uint64_t X, int s, int c, const WeightAssignment& weights,
                          const EngineConfig& cfg = {});

template <class Mass>
struct BasicCongruencePartition {
  Mass all_congruent{};     // all 2s variables in one class mod p^h
  Mass remainder{};         // every other solution
  Mass restricted_total{};  // the class-restricted count, computed separately
};
using CongruencePartition = BasicCongruencePartition<Count>;
using WeightedCongruencePartition = BasicCongruencePartition<double>;

/// Splits solutions of the s-variable system with every variable = xi mod
/// p^{h-1} by whether all variables also agree mod p^h. The two parts are
/// built from class-tagged distributions; restricted_total comes from the
/// untagged energy, so all_congruent + remainder == restricted_total is a
/// genuine check.
CongruencePartition partition_by_congruence(const EllipsephicSet& set, std::uint64_t X, int s, int h,
                                            std::uint64_t xi, const EngineConfig& cfg = {});
WeightedCongruencePartition partition_by_congruence(const EllipsephicSet& set, std::uint64_t X, int s, int h,
                                                    std::uint64_t xi, const WeightAssignment& weights,
                                                    const EngineConfig& cfg = {});

}  // namespace emvt::counting
