#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ultrafn/ppoly.hpp"

namespace ultrafn {

/// Coefficients of a space element with respect to FunctionSpace::generators().
using Coefficients = Eigen::VectorXd;

struct SpaceConfig {
  double beta = 4.0;
  int polynomial_degree = 5;
  std::vector<double> knots{-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
  std::vector<int> truncated_power_degrees{2, 3, 4, 5};
  double condition_cap = 1e12;
};

/// Describes the span: all polynomials of degree <= polynomial_degree plus the
/// truncated powers (x - k)_+^m for every knot k and every listed m.
class GeneratingFamily {
 public:
  GeneratingFamily(int polynomial_degree, std::vector<double> knots,
                   std::vector<int> truncated_power_degrees);

  int polynomial_degree() const { return polynomial_degree_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<int>& truncated_power_degrees() const { return degrees_; }

  /// Number of generators, which is also the dimension of the span.
  std::size_t size() const;

  /// Checks the family against the interval; throws Config on violations.
  void validate(double beta) const;

  /// The literal monomials and truncated powers that define the span.
  std::vector<PiecewisePolynomial> raw_generators(double beta) const;
  std::vector<std::string> raw_labels() const;

 private:
  int polynomial_degree_;
  std::vector<double> knots_;
  std::vector<int> degrees_;
};

/// Finite-dimensional space of C^1 piecewise polynomials on [-beta, beta].
///
/// The working generators span exactly the family's span: Legendre
/// polynomials P_k(x/beta) followed by an L2-orthonormal basis of the part of
/// the span orthogonal to polynomials. The Gram matrix is assembled by exact
/// integration of the generators.
class FunctionSpace {
 public:
  FunctionSpace(double beta, GeneratingFamily family,
                std::vector<PiecewisePolynomial> generators,
                std::vector<std::string> labels, double condition_cap);

  double beta() const { return beta_; }
  const GeneratingFamily& family() const { return family_; }
  const std::vector<PiecewisePolynomial>& generators() const {
    return generators_;
  }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t dimension() const { return generators_.size(); }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::LLT<Eigen::MatrixXd>& chol() const { return chol_; }
  double condition_estimate() const { return condition_; }
  /// Integrals of the generators, m[j] = int b_j.
  const Eigen::VectorXd& generator_integrals() const { return integrals_; }

  /// Generator values at x (row of the evaluation matrix).
  Eigen::VectorXd generator_values(double x) const;
  double value(const Coefficients& c, double x) const;
  /// The space element as an explicit piecewise polynomial.
  PiecewisePolynomial function(const Coefficients& c) const;
  /// b[i] = int b_i p
  Eigen::VectorXd moments(const PiecewisePolynomial& p) const;
  /// L2 inner product of two space elements.
  double inner(const Coefficients& a, const Coefficients& b) const;
  double norm(const Coefficients& c) const;

 private:
  double beta_;
  GeneratingFamily family_;
  std::vector<PiecewisePolynomial> generators_;
  std::vector<std::string> labels_;
  Eigen::MatrixXd gram_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd integrals_;
  double condition_ = 0.0;
};

FunctionSpace build_space(const SpaceConfig& config);

/// L2-orthogonal projection of p onto the space, as generator coefficients.
Coefficients project(const FunctionSpace& space, const PiecewisePolynomial& p);

/// Relative L2 distance from p to the space.
double projection_residual(const FunctionSpace& space,
                           const PiecewisePolynomial& p);

}  // namespace ultrafn
