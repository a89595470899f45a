#pragma once

#include <Eigen/Dense>
#include <Eigen/LU>
#include <span>
#include <vector>

#include "ultrafn/function_space.hpp"

namespace ultrafn {

namespace detail {
using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
/// Row i holds every generator evaluated at points[i].
MatrixXld evaluation_extended(const FunctionSpace& space,
                              std::span<const double> points);
MatrixXld gram_extended(const FunctionSpace& space);
}  // namespace detail

/// Relative pivot threshold below which a forced point counts as dependent.
inline constexpr double kDependencyTolerance = 1e-10;

/// The unique space element delta_q with int delta_q v = v(q) for every v.
Coefficients delta_at(const FunctionSpace& space, double q);

/// N points of [-beta, beta], sorted ascending, at which the evaluation
/// matrix E[i][j] = b_j(a_i) is nonsingular; -beta and +beta always included.
class IndependentPointSet {
 public:
  IndependentPointSet(const FunctionSpace& space, std::vector<double> points);

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Eigen::MatrixXd& evaluation_matrix() const { return evaluation_; }
  const Eigen::PartialPivLU<Eigen::MatrixXd>& evaluation_lu() const {
    return lu_;
  }
  /// Index of `x` in points(), or size() when absent.
  std::size_t index_of(double x) const;

 private:
  std::vector<double> points_;
  Eigen::MatrixXd evaluation_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Default candidate grid: 4N+1 Chebyshev-Lobatto points of [-beta, beta]
/// merged with the knots and the given extra points.
std::vector<double> default_candidates(const FunctionSpace& space,
                                       std::span<const double> extra);

/// Greedy pivoted selection. Required points (then -beta, +beta) are taken
/// first in order; remaining slots go to the candidate with the largest
/// residual after orthogonalising against the chosen ones, ties to the lowest
/// candidate index.
IndependentPointSet select_independent_points(
    const FunctionSpace& space, std::span<const double> required,
    std::span<const double> candidates);

/// Cardinal functions: column b of coefficients() is sigma_b with
/// sigma_b(a) = delta_ab on the point set.
struct SigmaBasis {
  Eigen::MatrixXd coefficients;
};

SigmaBasis sigma_basis(const FunctionSpace& space,
                       const IndependentPointSet& sigma);

struct EtaTensors {
  Eigen::VectorXd eta_a;   ///< int sigma_a
  Eigen::MatrixXd eta_ab;  ///< int sigma_a sigma_b
};

EtaTensors eta_tensors(const FunctionSpace& space, const SigmaBasis& basis);

}  // namespace ultrafn
