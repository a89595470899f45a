#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ultrafn/algebra.hpp"

namespace ultrafn {

inline constexpr int kDefaultMaxOrder = 6;

enum class DistributionKind { Dirac, Heaviside, Continuous, Polynomial, Custom };

const char* to_string(DistributionKind kind);

/// A distribution T on [-beta, beta] described by a representative phi and
/// the order d with d^d phi = T. Order 0 means T is the function itself and
/// embeds by sampling; then `sampler` (or the representative) is used.
struct DistributionDescriptor {
  DistributionKind kind = DistributionKind::Custom;
  int order = 0;
  std::optional<PiecewisePolynomial> representative;
  RealFunction sampler;
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::string label;
  /// Location parameter of dirac / heaviside, kept for reporting.
  std::optional<double> at;

  /// Pointwise evaluator for the order-0 path.
  RealFunction evaluator() const;
};

struct EmbeddingResult {
  RestrictedUltrafunction value;
  /// max |value(a)| over points of the set outside [support_lo, support_hi].
  double leakage = 0.0;
};

// Builtins. The orders are the minimal ones with a C^1 representative.
DistributionDescriptor dirac(double beta, double q);
DistributionDescriptor heaviside(double beta, double q);
/// Heaviside as an order-0 function, with `jump_value` at q itself.
DistributionDescriptor heaviside_sampled(double beta, double q,
                                         double jump_value = 0.5);
DistributionDescriptor continuous(const PiecewisePolynomial& f,
                                  std::string label = "f");
DistributionDescriptor continuous(double beta, RealFunction f,
                                  std::string label = "f");
DistributionDescriptor polynomial(double beta, std::span<const double> coeffs);

EmbeddingResult embed(const ContextPtr& ctx, const DistributionDescriptor& t,
                      int d_max = kDefaultMaxOrder);

/// Same representative, order + 1.
DistributionDescriptor distribution_derivative(const DistributionDescriptor& t,
                                               int d_max = kDefaultMaxOrder);

/// r T, with the representative (or sampler) scaled by r.
DistributionDescriptor scaled(const DistributionDescriptor& t, double r);

/// T1 + T2 aligned on the larger order: phi_hi + P^s phi_lo where P is the
/// antiderivative and s the order gap. Two order-0 terms add their samplers.
DistributionDescriptor sum(const DistributionDescriptor& t1,
                           const DistributionDescriptor& t2);

struct PairingResult {
  double value = 0.0;
  /// Violated preconditions on the test function; the value is still
  /// computed.
  std::vector<std::string> warnings;
};

/// <Phi(T), restrict(phi)>, which equals T[phi] for admissible bumps.
PairingResult pair(const ContextPtr& ctx, const DistributionDescriptor& t,
                   const PiecewisePolynomial& phi,
                   int d_max = kDefaultMaxOrder);

struct LinearityReport {
  /// ||Phi(T1+T2) - Phi(T1) - Phi(T2)|| / max(1, ||Phi(T1)|| + ||Phi(T2)||)
  double additivity = 0.0;
  /// (r, ||Phi(rT1) - r Phi(T1)|| / max(1, |r| ||Phi(T1)||))
  std::vector<std::pair<double, double>> homogeneity;
};

LinearityReport linearity_check(const ContextPtr& ctx,
                                const DistributionDescriptor& t1,
                                const DistributionDescriptor& t2,
                                int d_max = kDefaultMaxOrder);

/// Quintic B-splines supported inside (-beta, beta) on the space's knots,
/// with knot multiplicity at most 2 so that they are C^3 and their first two
/// derivatives stay in the space.
std::vector<PiecewisePolynomial> interior_bumps(const FunctionSpace& space,
                                                std::size_t count = 3);

}  // namespace ultrafn
