#pragma once

#include <string>

#include "ultrafn/config.hpp"

namespace ultrafn {

json space_report(const ContextPtr& ctx);
/// Points, kernel-matrix condition, eta_a and eta_ab.
json sigma_report(const ContextPtr& ctx);
/// Columns x, sigma_a(x) for every point a, on a uniform grid.
std::string sigma_csv(const ContextPtr& ctx, std::size_t grid);

/// Header row then (x, f(x)) on `grid` uniform points of [-beta, beta], all
/// values printed with 17 significant digits.
std::string samples_csv(const PiecewisePolynomial& f, std::size_t grid);
/// Header row then (a, u(a)) for every point of the set.
std::string values_csv(const RestrictedUltrafunction& u);

/// delta_q sampled on a uniform grid.
std::string delta_csv(const ContextPtr& ctx, double q, std::size_t grid);

/// {descriptor, points, values, leakage, pairing_checks}; pairing checks use
/// interior bumps and carry a closed-form expectation for the builtins.
json embed_report(const ContextPtr& ctx, const DistributionDescriptor& t,
                  int d_max);
/// Pointwise product of two embeddings. Products involving an order >= 1
/// term are flagged exploratory: no ground truth is asserted for them.
json mul_report(const ContextPtr& ctx, const DistributionDescriptor& left,
                const DistributionDescriptor& right, int d_max);
json pair_report(const ContextPtr& ctx, const DistributionDescriptor& t,
                 std::size_t bump_index, int d_max);

}  // namespace ultrafn
