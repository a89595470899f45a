#include "ultrafn/dual_bases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ultrafn/error.hpp"

namespace ultrafn {

namespace {

void check_domain(const FunctionSpace& space, double x, const char* what) {
  if (!(x >= -space.beta() && x <= space.beta())) {
    std::ostringstream os;
    os << what << ' ' << x << " outside [-" << space.beta() << ", "
       << space.beta() << "]";
    throw Error(ErrorCode::Domain, os.str());
  }
}

std::vector<double> sorted_unique(std::vector<double> xs, double tol) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  return out;
}

}  // namespace

namespace detail {

MatrixXld evaluation_extended(const FunctionSpace& space,
                              std::span<const double> points) {
  const auto& gens = space.generators();
  MatrixXld e(static_cast<Eigen::Index>(points.size()),
              static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          evaluate_extended(gens[j], points[i]);
  return e;
}

MatrixXld gram_extended(const FunctionSpace& space) {
  const auto& gens = space.generators();
  const auto n = static_cast<Eigen::Index>(gens.size());
  MatrixXld g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      g(i, j) = g(j, i) =
          integrate_product_extended(gens[static_cast<std::size_t>(i)],
                                     gens[static_cast<std::size_t>(j)]);
  return g;
}

}  // namespace detail

Coefficients delta_at(const FunctionSpace& space, double q) {
  check_domain(space, q, "delta centre");
  return space.chol().solve(space.generator_values(q));
}

IndependentPointSet::IndependentPointSet(const FunctionSpace& space,
                                         std::vector<double> points)
    : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  const auto n = static_cast<Eigen::Index>(space.dimension());
  if (points_.size() != space.dimension())
    throw Error(ErrorCode::SelectionFailure,
                "independent point set must have exactly dim(space) points");
  if (points_.front() != -space.beta() || points_.back() != space.beta())
    throw Error(ErrorCode::SelectionFailure,
                "independent point set must contain -beta and +beta");
  evaluation_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    check_domain(space, points_[static_cast<std::size_t>(i)], "point");
    evaluation_.row(i) =
        space.generator_values(points_[static_cast<std::size_t>(i)]).transpose();
  }
  lu_.compute(evaluation_);
  if (!(lu_.rcond() > 1e-15))
    throw Error(ErrorCode::Dependency,
                "evaluation matrix of the point set is singular");
}

std::size_t IndependentPointSet::index_of(double x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it != points_.end() && *it == x)
    return static_cast<std::size_t>(it - points_.begin());
  return points_.size();
}

std::vector<double> default_candidates(const FunctionSpace& space,
                                       std::span<const double> extra) {
  const double beta = space.beta();
  const std::size_t m = 4 * space.dimension() + 1;
  std::vector<double> xs;
  xs.reserve(m + space.family().knots().size() + extra.size());
  for (std::size_t k = 0; k < m; ++k) {
    double x = -beta * std::cos(std::numbers::pi * static_cast<double>(k) /
                                static_cast<double>(m - 1));
    if (std::abs(x) < 1e-14 * beta) x = 0.0;
    xs.push_back(x);
  }
  xs.front() = -beta;
  xs.back() = beta;
  for (double k : space.family().knots()) xs.push_back(k);
  for (double x : extra)
    if (x >= -beta && x <= beta) xs.push_back(x);
  return sorted_unique(std::move(xs), 1e-12 * beta);
}

IndependentPointSet select_independent_points(
    const FunctionSpace& space, std::span<const double> required,
    std::span<const double> candidates) {
  const double beta = space.beta();
  std::vector<double> forced;
  auto add_forced = [&](double x) {
    check_domain(space, x, "required point");
    if (std::find(forced.begin(), forced.end(), x) == forced.end())
      forced.push_back(x);
  };
  for (double x : required) add_forced(x);
  add_forced(-beta);
  add_forced(beta);

  std::vector<double> pool(candidates.begin(), candidates.end());
  for (double x : pool) check_domain(space, x, "candidate");
  for (double x : forced)
    if (std::find(pool.begin(), pool.end(), x) == pool.end()) pool.push_back(x);

  const auto n = static_cast<Eigen::Index>(space.dimension());
  const auto m = static_cast<Eigen::Index>(pool.size());
  if (m < n)
    throw Error(ErrorCode::SelectionFailure,
                "fewer candidate points than the space dimension");

  // Orthonormal-basis values: column c holds L^{-1} b(pool[c]).
  Eigen::MatrixXd residual(n, m);
  for (Eigen::Index c = 0; c < m; ++c)
    residual.col(c) = space.generator_values(pool[static_cast<std::size_t>(c)]);
  space.chol().matrixL().solveInPlace(residual);

  const double lead = residual.colwise().norm().maxCoeff();
  const double threshold = kDependencyTolerance * lead;
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  std::vector<double> chosen;

  auto take = [&](Eigen::Index c) {
    Eigen::VectorXd q = residual.col(c);
    q /= q.norm();
    for (int pass = 0; pass < 2; ++pass)
      residual -= q * (q.transpose() * residual);
    taken[static_cast<std::size_t>(c)] = true;
    chosen.push_back(pool[static_cast<std::size_t>(c)]);
  };

  for (double x : forced) {
    const auto c = static_cast<Eigen::Index>(
        std::find(pool.begin(), pool.end(), x) - pool.begin());
    if (static_cast<Eigen::Index>(chosen.size()) >= n ||
        !(residual.col(c).norm() > threshold)) {
      std::ostringstream os;
      os << "required point " << x
         << " is dependent on the points already selected";
      throw Error(ErrorCode::Dependency, os.str());
    }
    take(c);
  }
  while (static_cast<Eigen::Index>(chosen.size()) < n) {
    Eigen::Index best = -1;
    double best_norm = threshold;
    for (Eigen::Index c = 0; c < m; ++c) {
      if (taken[static_cast<std::size_t>(c)]) continue;
      const double r = residual.col(c).norm();
      if (r > best_norm) {
        best_norm = r;
        best = c;
      }
    }
    if (best < 0)
      throw Error(ErrorCode::SelectionFailure,
                  "not enough independent candidate points");
    take(best);
  }
  return IndependentPointSet(space, std::move(chosen));
}

SigmaBasis sigma_basis(const FunctionSpace& space,
                       const IndependentPointSet& sigma) {
  if (sigma.size() != space.dimension())
    throw Error(ErrorCode::ContextMismatch,
                "point set was built for a different space");
  // Inverted in extended precision: every operator on value vectors goes
  // through C, and its rounding is amplified by repeated differentiation.
  const auto e = detail::evaluation_extended(space, sigma.points());
  const auto n = e.rows();
  const detail::MatrixXld c =
      Eigen::PartialPivLU<detail::MatrixXld>(e).solve(
          detail::MatrixXld::Identity(n, n));
  return SigmaBasis{c.cast<double>()};
}

EtaTensors eta_tensors(const FunctionSpace& space, const SigmaBasis& basis) {
  const detail::MatrixXld c = basis.coefficients.cast<long double>();
  detail::MatrixXld ab = c.transpose() * detail::gram_extended(space) * c;
  ab = (0.5L * (ab + ab.transpose())).eval();
  const Eigen::Matrix<long double, Eigen::Dynamic, 1> a =
      c.transpose() * space.generator_integrals().cast<long double>();
  return EtaTensors{a.cast<double>(), ab.cast<double>()};
}

}  // namespace ultrafn
