#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ultrafn/dual_bases.hpp"

namespace ultrafn {

struct ContextOptions {
  SpaceConfig space;
  /// Inserted as knots and forced into the point set.
  std::vector<double> anchors;
  /// Additional points forced into the point set.
  std::vector<double> required_points;
  /// Candidate grid; default_candidates() when empty.
  std::optional<std::vector<double>> candidates;
};

/// Immutable bundle shared by every restricted ultrafunction built on it:
/// the space, the point set, its Sigma basis and eta tensors, and the matrix
/// of the restricted derivative acting on value vectors.
class Context {
 public:
  static std::shared_ptr<const Context> create(const ContextOptions& options);
  static std::shared_ptr<const Context> create(FunctionSpace space,
                                               std::span<const double> required,
                                               std::span<const double> candidates);

  const FunctionSpace& space() const { return space_; }
  const IndependentPointSet& points() const { return points_; }
  const SigmaBasis& sigma() const { return sigma_; }
  const EtaTensors& eta() const { return eta_; }
  /// D = Psi o P o d o Psi^{-1} as an N x N matrix on value vectors.
  const Eigen::MatrixXd& derivative_matrix() const { return derivative_; }
  /// D at coefficient level: G^{-1} M with M[i][j] = int b_i b_j'.
  const Eigen::MatrixXd& coefficient_derivative() const {
    return coefficient_derivative_;
  }
  /// Same operator kept in extended precision; derivative() applies this one.
  const detail::MatrixXld& derivative_matrix_extended() const {
    return derivative_extended_;
  }
  /// E G^{-1}: moments of f to the values of its projection on the points.
  const detail::MatrixXld& projection_values() const {
    return projection_values_;
  }
  const std::vector<double>& anchors() const { return anchors_; }
  std::size_t dimension() const { return space_.dimension(); }
  double beta() const { return space_.beta(); }

 private:
  Context(FunctionSpace space, IndependentPointSet points,
          std::vector<double> anchors);

  FunctionSpace space_;
  IndependentPointSet points_;
  SigmaBasis sigma_;
  EtaTensors eta_;
  Eigen::MatrixXd coefficient_derivative_;
  Eigen::MatrixXd derivative_;
  detail::MatrixXld derivative_extended_;
  detail::MatrixXld projection_values_;
  std::vector<double> anchors_;
};

using ContextPtr = std::shared_ptr<const Context>;

/// Value vector over the point set: an element of the algebra V(Sigma).
class RestrictedUltrafunction {
 public:
  RestrictedUltrafunction(ContextPtr ctx, Eigen::VectorXd values);

  const Eigen::VectorXd& values() const { return values_; }
  const ContextPtr& context() const { return ctx_; }
  double operator[](std::size_t i) const {
    return values_(static_cast<Eigen::Index>(i));
  }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

 private:
  ContextPtr ctx_;
  Eigen::VectorXd values_;
};

enum class PointwiseOp { Add, Mul, Scale };

RestrictedUltrafunction restrict_to_points(const ContextPtr& ctx,
                                           const Coefficients& u);
RestrictedUltrafunction restrict_to_points(const ContextPtr& ctx,
                                           const PiecewisePolynomial& f);
/// restrict(project(f)) for arbitrary f, assembled in extended precision.
RestrictedUltrafunction restrict_projection(const ContextPtr& ctx,
                                            const PiecewisePolynomial& f);
Coefficients extend(const RestrictedUltrafunction& u);
PiecewisePolynomial extension_function(const RestrictedUltrafunction& u);

/// Componentwise add / mul; Scale multiplies u by `factor` and ignores v.
RestrictedUltrafunction pointwise(const RestrictedUltrafunction& u,
                                  const RestrictedUltrafunction& v,
                                  PointwiseOp op, double factor = 1.0);
RestrictedUltrafunction operator+(const RestrictedUltrafunction& u,
                                  const RestrictedUltrafunction& v);
RestrictedUltrafunction operator-(const RestrictedUltrafunction& u,
                                  const RestrictedUltrafunction& v);
RestrictedUltrafunction operator*(const RestrictedUltrafunction& u,
                                  const RestrictedUltrafunction& v);
RestrictedUltrafunction operator*(double s, const RestrictedUltrafunction& u);

/// <u, v> = int u~ v~ = u^T eta_ab v
double scalar_product(const RestrictedUltrafunction& u,
                      const RestrictedUltrafunction& v);
/// sqrt(<u, u>)
double norm(const RestrictedUltrafunction& u);
double integral(const RestrictedUltrafunction& u);
RestrictedUltrafunction derivative(const RestrictedUltrafunction& u,
                                   int times = 1);
/// u(beta) v(beta) - u(-beta) v(-beta) from the stored extreme values.
double boundary_bracket(const RestrictedUltrafunction& u,
                        const RestrictedUltrafunction& v);

using RealFunction = std::function<double(double)>;

/// Samples f at every point of the set; throws Lift naming the first point
/// where f fails or returns a non-finite value.
RestrictedUltrafunction lift(const ContextPtr& ctx, const RealFunction& f);

}  // namespace ultrafn
