#pragma once

#include <climits>
#include <span>
#include <vector>

namespace ultrafn {

/// Smoothness class reported for functions with no derivative jump at any
/// breakpoint (global polynomials).
inline constexpr int kSmoothEverywhere = INT_MAX;

/// Default relative tolerance used when comparing one-sided derivatives at
/// breakpoints.
inline constexpr double kSmoothnessTolerance = 1e-9;

/// Piecewise polynomial on the symmetric interval [-beta, beta].
///
/// Piece i lives on [breakpoints[i], breakpoints[i+1]] and stores its
/// coefficients in the monomial basis centred at the left breakpoint, i.e.
/// p(x) = sum_k pieces[i][k] * (x - breakpoints[i])^k. Values are immutable
/// once constructed.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breakpoints,
                      std::vector<std::vector<double>> pieces);

  static PiecewisePolynomial zero(double beta);
  static PiecewisePolynomial constant(double beta, double value);
  /// Global polynomial sum_k coeffs[k] x^k.
  static PiecewisePolynomial polynomial(double beta,
                                        std::span<const double> coeffs);
  /// scale * (x - knot)_+^power
  static PiecewisePolynomial truncated_power(double beta, double knot,
                                             int power, double scale = 1.0);
  /// Legendre polynomial P_k(x / beta).
  static PiecewisePolynomial legendre(double beta, int k);
  /// Normalised B-spline of degree knots.size() - 2 (Cox-de Boor), zero
  /// outside [knots.front(), knots.back()].
  static PiecewisePolynomial bspline(double beta, std::span<const double> knots);

  double beta() const { return breakpoints_.back(); }
  std::span<const double> breakpoints() const { return breakpoints_; }
  const std::vector<std::vector<double>>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }
  int degree_bound() const { return degree_bound_; }

  /// Index of the piece used for x; interior breakpoints belong to the
  /// piece on their right.
  std::size_t piece_index(double x) const;

  /// Value of the k-th derivative at x, taken from the left or right piece.
  double derivative_value(double x, int order, bool from_left) const;

  /// Largest k such that derivatives 0..k agree at every interior
  /// breakpoint; -1 for a discontinuous function.
  int smoothness(double tol = kSmoothnessTolerance) const;

  /// Interior breakpoints where some derivative jumps.
  std::vector<double> nonsmooth_breakpoints(
      double tol = kSmoothnessTolerance) const;

  /// Same function expressed on the union of its breakpoints and `extra`.
  PiecewisePolynomial refined(std::span<const double> extra) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<std::vector<double>> pieces_;
  int degree_bound_ = 0;
};

double evaluate(const PiecewisePolynomial& p, double x);

/// Exact derivative; throws NotDifferentiable for inputs that are not C^1.
PiecewisePolynomial differentiate(const PiecewisePolynomial& p);

/// Piece-by-piece derivative with no smoothness check.
PiecewisePolynomial piecewise_derivative(const PiecewisePolynomial& p);

/// Primitive q with q' = p and q(-beta) = 0.
PiecewisePolynomial antiderivative(const PiecewisePolynomial& p);

/// Integral of p * q over [-beta, beta].
double integrate_product(const PiecewisePolynomial& p,
                         const PiecewisePolynomial& q);

double integrate(const PiecewisePolynomial& p);

/// Extended-precision variants used when assembling dense operators.
long double evaluate_extended(const PiecewisePolynomial& p, long double x);
long double integrate_product_extended(const PiecewisePolynomial& p,
                                       const PiecewisePolynomial& q);

PiecewisePolynomial operator+(const PiecewisePolynomial& p,
                              const PiecewisePolynomial& q);
PiecewisePolynomial operator-(const PiecewisePolynomial& p,
                              const PiecewisePolynomial& q);
PiecewisePolynomial operator*(double s, const PiecewisePolynomial& p);
PiecewisePolynomial operator*(const PiecewisePolynomial& p,
                              const PiecewisePolynomial& q);

namespace poly {

/// Coefficients of p(u + shift) given those of p(u).
std::vector<double> taylor_shift(std::vector<double> coeffs, double shift);
std::vector<double> multiply(std::span<const double> a,
                             std::span<const double> b);
double horner(std::span<const double> coeffs, double u);

}  // namespace poly

}  // namespace ultrafn
