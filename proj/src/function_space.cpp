#include "ultrafn/function_space.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "ultrafn/error.hpp"

namespace ultrafn {

namespace {

/// Legendre polynomial P_l(2u/h - 1) as monomial coefficients in u.
std::vector<std::vector<double>> local_legendre(int max_degree, double h) {
  std::vector<std::vector<double>> out{{1.0}};
  if (max_degree == 0) return out;
  const std::vector<double> s{-1.0, 2.0 / h};
  out.push_back(s);
  for (int n = 1; n < max_degree; ++n) {
    auto next = poly::multiply(s, out[n]);
    for (double& c : next) c *= (2.0 * n + 1.0);
    for (std::size_t j = 0; j < out[n - 1].size(); ++j)
      next[j] -= n * out[n - 1][j];
    for (double& c : next) c /= (n + 1.0);
    out.push_back(std::move(next));
  }
  return out;
}

/// j-th derivative of P_l at s = 1.
double legendre_derivative_at_one(int l, int j) {
  if (j > l) return 0.0;
  double v = 1.0;
  for (int t = l - j + 1; t <= l + j; ++t) v *= t;
  for (int t = 1; t <= j; ++t) v /= 2.0 * t;
  return v;
}

std::string join_points(std::span<const double> xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  return os.str();
}

/// L2-orthonormal basis of {f in span : f orthogonal to polynomials}, found
/// as the null space of the inter-knot continuity constraints together with
/// orthogonality to P_0..P_p, in per-piece scaled Legendre coordinates.
std::vector<PiecewisePolynomial> complement_basis(
    double beta, const GeneratingFamily& family,
    const std::vector<PiecewisePolynomial>& polys) {
  const auto& knots = family.knots();
  const auto& degrees = family.truncated_power_degrees();
  const std::size_t null_dim = knots.size() * degrees.size();
  if (null_dim == 0) return {};

  const int p = family.polynomial_degree();
  const std::size_t per_piece = static_cast<std::size_t>(p) + 1;
  std::vector<double> bp{-beta};
  bp.insert(bp.end(), knots.begin(), knots.end());
  bp.push_back(beta);
  const std::size_t pieces = bp.size() - 1;
  const std::size_t cols = pieces * per_piece;

  std::vector<double> h(pieces);
  std::vector<std::vector<std::vector<double>>> legendre(pieces);
  Eigen::MatrixXd w(pieces, per_piece);
  for (std::size_t i = 0; i < pieces; ++i) {
    h[i] = bp[i + 1] - bp[i];
    legendre[i] = local_legendre(p, h[i]);
    for (std::size_t l = 0; l < per_piece; ++l)
      w(i, l) = std::sqrt(h[i] / (2.0 * l + 1.0));
  }
  auto col = [&](std::size_t piece, std::size_t l) {
    return piece * per_piece + l;
  };

  const std::set<int> jump_orders(degrees.begin(), degrees.end());
  std::vector<Eigen::VectorXd> rows;
  for (std::size_t i = 1; i < pieces; ++i) {
    for (int j = 0; j <= p; ++j) {
      if (jump_orders.count(j)) continue;
      Eigen::VectorXd row = Eigen::VectorXd::Zero(cols);
      const double left_scale = std::pow(2.0 / h[i - 1], j);
      const double right_scale = std::pow(2.0 / h[i], j);
      for (std::size_t l = 0; l < per_piece; ++l) {
        const double at_one = legendre_derivative_at_one(static_cast<int>(l), j);
        const double at_minus_one =
            ((static_cast<int>(l) - j) % 2 == 0 ? 1.0 : -1.0) * at_one;
        row(col(i - 1, l)) += at_one * left_scale / w(i - 1, l);
        row(col(i, l)) -= at_minus_one * right_scale / w(i, l);
      }
      rows.push_back(row / row.norm());
    }
  }
  for (const auto& q : polys) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(cols);
    for (std::size_t i = 0; i < pieces; ++i) {
      for (std::size_t l = 0; l < per_piece; ++l) {
        std::vector<std::vector<double>> local(pieces, std::vector<double>{0.0});
        local[i] = legendre[i][l];
        row(col(i, l)) = integrate_product(q, PiecewisePolynomial(bp, local)) /
                         w(i, l);
      }
    }
    rows.push_back(row / row.norm());
  }

  Eigen::MatrixXd constraints(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    constraints.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const auto rank = static_cast<Eigen::Index>(cols - null_dim);
  const double rel = 1e-10;
  const bool rank_ok =
      rank <= sv.size() && rank >= 1 && sv(rank - 1) > rel * sv(0) &&
      (rank == sv.size() || sv(rank) <= rel * sv(0));
  if (!rank_ok)
    throw Error(ErrorCode::IllConditioned,
                "knot set {" + join_points(knots) +
                    "} gives a numerically degenerate spline complement");

  std::vector<PiecewisePolynomial> out;
  for (Eigen::Index c = rank; c < static_cast<Eigen::Index>(cols); ++c) {
    Eigen::VectorXd z = svd.matrixV().col(c);
    Eigen::Index lead = 0;
    z.cwiseAbs().maxCoeff(&lead);
    if (z(lead) < 0) z = -z;
    std::vector<std::vector<double>> local(pieces);
    for (std::size_t i = 0; i < pieces; ++i) {
      std::vector<double> row(per_piece, 0.0);
      for (std::size_t l = 0; l < per_piece; ++l) {
        const double a = z(static_cast<Eigen::Index>(col(i, l))) / w(i, l);
        for (std::size_t k = 0; k < legendre[i][l].size(); ++k)
          row[k] += a * legendre[i][l][k];
      }
      local[i] = std::move(row);
    }
    out.emplace_back(bp, std::move(local));
  }
  return out;
}

}  // namespace

GeneratingFamily::GeneratingFamily(int polynomial_degree,
                                   std::vector<double> knots,
                                   std::vector<int> truncated_power_degrees)
    : polynomial_degree_(polynomial_degree),
      knots_(std::move(knots)),
      degrees_(std::move(truncated_power_degrees)) {
  std::sort(knots_.begin(), knots_.end());
  std::sort(degrees_.begin(), degrees_.end());
}

std::size_t GeneratingFamily::size() const {
  return static_cast<std::size_t>(polynomial_degree_) + 1 +
         knots_.size() * degrees_.size();
}

void GeneratingFamily::validate(double beta) const {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorCode::Config, "beta must be a positive finite number");
  if (polynomial_degree_ < 0)
    throw Error(ErrorCode::Config, "polynomial_degree must be >= 0");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!(knots_[i] > -beta && knots_[i] < beta)) {
      std::ostringstream os;
      os << "knot " << knots_[i] << " is not strictly inside (-" << beta
         << ", " << beta << ")";
      throw Error(ErrorCode::Config, os.str());
    }
    if (i > 0 && knots_[i] == knots_[i - 1]) {
      std::ostringstream os;
      os << "duplicate knot " << knots_[i];
      throw Error(ErrorCode::Config, os.str());
    }
  }
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i] < 2)
      throw Error(ErrorCode::Config,
                  "truncated power degrees must be >= 2 (generators are C^1)");
    if (i > 0 && degrees_[i] == degrees_[i - 1])
      throw Error(ErrorCode::Config, "duplicate truncated power degree");
  }
  if (!knots_.empty() && !degrees_.empty() &&
      polynomial_degree_ < degrees_.back())
    throw Error(ErrorCode::Config,
                "polynomial_degree must be >= every truncated power degree");
}

std::vector<PiecewisePolynomial> GeneratingFamily::raw_generators(
    double beta) const {
  std::vector<PiecewisePolynomial> out;
  for (int k = 0; k <= polynomial_degree_; ++k) {
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    c.back() = 1.0;
    out.push_back(PiecewisePolynomial::polynomial(beta, c));
  }
  for (double knot : knots_)
    for (int m : degrees_)
      out.push_back(PiecewisePolynomial::truncated_power(beta, knot, m));
  return out;
}

std::vector<std::string> GeneratingFamily::raw_labels() const {
  std::vector<std::string> out;
  for (int k = 0; k <= polynomial_degree_; ++k)
    out.push_back("x^" + std::to_string(k));
  for (double knot : knots_)
    for (int m : degrees_) {
      std::ostringstream os;
      os << "(x-" << knot << ")_+^" << m;
      out.push_back(os.str());
    }
  return out;
}

FunctionSpace::FunctionSpace(double beta, GeneratingFamily family,
                             std::vector<PiecewisePolynomial> generators,
                             std::vector<std::string> labels,
                             double condition_cap)
    : beta_(beta),
      family_(std::move(family)),
      generators_(std::move(generators)),
      labels_(std::move(labels)) {
  const auto n = static_cast<Eigen::Index>(generators_.size());
  if (n == 0) throw Error(ErrorCode::Config, "empty function space");
  gram_.resize(n, n);
  integrals_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    integrals_(i) = integrate(generators_[i]);
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double g = integrate_product(generators_[i], generators_[j]);
      gram_(i, j) = g;
      gram_(j, i) = g;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_);
  const auto& ev = eig.eigenvalues();
  const double lo = ev(0);
  const double hi = ev(n - 1);
  condition_ = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  chol_.compute(gram_);
  if (chol_.info() != Eigen::Success || !(condition_ <= condition_cap)) {
    const Eigen::VectorXd weakest = eig.eigenvectors().col(0).cwiseAbs();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return weakest(a) > weakest(b);
    });
    std::ostringstream os;
    os << "Gram condition estimate " << condition_ << " exceeds cap "
       << condition_cap << "; nearly dependent generators:";
    for (std::size_t k = 0; k < std::min<std::size_t>(3, order.size()); ++k)
      os << ' ' << labels_[static_cast<std::size_t>(order[k])];
    throw Error(ErrorCode::IllConditioned, os.str());
  }
}

Eigen::VectorXd FunctionSpace::generator_values(double x) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(dimension()));
  for (std::size_t j = 0; j < dimension(); ++j)
    v(static_cast<Eigen::Index>(j)) = evaluate(generators_[j], x);
  return v;
}

double FunctionSpace::value(const Coefficients& c, double x) const {
  return c.dot(generator_values(x));
}

PiecewisePolynomial FunctionSpace::function(const Coefficients& c) const {
  auto f = PiecewisePolynomial::zero(beta_);
  for (std::size_t j = 0; j < dimension(); ++j) {
    const double cj = c(static_cast<Eigen::Index>(j));
    if (cj != 0.0) f = f + cj * generators_[j];
  }
  return f;
}

Eigen::VectorXd FunctionSpace::moments(const PiecewisePolynomial& p) const {
  Eigen::VectorXd b(static_cast<Eigen::Index>(dimension()));
  for (std::size_t j = 0; j < dimension(); ++j)
    b(static_cast<Eigen::Index>(j)) = integrate_product(generators_[j], p);
  return b;
}

double FunctionSpace::inner(const Coefficients& a, const Coefficients& b) const {
  return a.dot(gram_ * b);
}

double FunctionSpace::norm(const Coefficients& c) const {
  return std::sqrt(std::max(0.0, inner(c, c)));
}

FunctionSpace build_space(const SpaceConfig& config) {
  GeneratingFamily family(config.polynomial_degree, config.knots,
                          config.truncated_power_degrees);
  family.validate(config.beta);
  std::vector<PiecewisePolynomial> gens;
  std::vector<std::string> labels;
  for (int k = 0; k <= family.polynomial_degree(); ++k) {
    gens.push_back(PiecewisePolynomial::legendre(config.beta, k));
    labels.push_back("P" + std::to_string(k) + "(x/beta)");
  }
  auto complement = complement_basis(config.beta, family, gens);
  for (std::size_t j = 0; j < complement.size(); ++j) {
    gens.push_back(std::move(complement[j]));
    labels.push_back("spline[" + std::to_string(j) + "]");
  }
  return FunctionSpace(config.beta, std::move(family), std::move(gens),
                       std::move(labels), config.condition_cap);
}

Coefficients project(const FunctionSpace& space, const PiecewisePolynomial& p) {
  return space.chol().solve(space.moments(p));
}

double projection_residual(const FunctionSpace& space,
                           const PiecewisePolynomial& p) {
  const auto diff = p - space.function(project(space, p));
  const double scale = std::sqrt(integrate_product(p, p));
  const double err = std::sqrt(std::max(0.0, integrate_product(diff, diff)));
  return scale > 0.0 ? err / scale : err;
}

}  // namespace ultrafn
