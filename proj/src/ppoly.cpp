#include "ultrafn/ppoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ultrafn/error.hpp"

namespace ultrafn {

namespace poly {

namespace {

template <typename T>
std::vector<T> shift_impl(std::vector<T> c, T shift) {
  const auto n = static_cast<std::ptrdiff_t>(c.size());
  if (shift == T(0)) return c;
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = n - 2; j >= i; --j) c[j] += shift * c[j + 1];
  return c;
}

template <typename T>
std::vector<T> multiply_impl(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) return {T(0)};
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <typename T>
T horner_impl(std::span<const T> c, T u) {
  T acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::vector<double> add(std::span<const double> a, std::span<const double> b,
                        double sb = 1.0) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += sb * b[i];
  return out;
}

template <typename T>
T integral_from_zero(std::span<const T> c, T h) {
  T acc = 0;
  for (std::size_t k = c.size(); k-- > 0;)
    acc = acc * h + c[k] / static_cast<T>(k + 1);
  return acc * h;
}

double derivative_at(std::span<const double> c, int order, double u) {
  double acc = 0.0;
  for (std::size_t j = c.size(); j-- > static_cast<std::size_t>(order);) {
    double falling = 1.0;
    for (int t = 0; t < order; ++t) falling *= static_cast<double>(j - t);
    acc = acc * u + c[j] * falling;
  }
  return acc;
}

}  // namespace

std::vector<double> taylor_shift(std::vector<double> c, double shift) {
  return shift_impl(std::move(c), shift);
}

std::vector<double> multiply(std::span<const double> a,
                             std::span<const double> b) {
  return multiply_impl(a, b);
}

double horner(std::span<const double> c, double u) { return horner_impl(c, u); }

}  // namespace poly

namespace {

double merge_tolerance(double beta) { return 1e-13 * beta; }

std::vector<double> merge_breakpoints(std::span<const double> a,
                                      std::span<const double> b) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  const double tol = merge_tolerance(std::max(std::abs(all.front()),
                                              std::abs(all.back())));
  std::vector<double> out;
  for (double x : all)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  return out;
}

/// Coefficient row of p's piece covering [left, right], recentred at left.
std::vector<double> piece_on(const PiecewisePolynomial& p, double left,
                             double right) {
  const auto idx = p.piece_index(0.5 * (left + right));
  return poly::taylor_shift(p.pieces()[idx], left - p.breakpoints()[idx]);
}

template <typename Combine>
PiecewisePolynomial combine(const PiecewisePolynomial& p,
                            const PiecewisePolynomial& q, Combine&& op) {
  if (std::abs(p.beta() - q.beta()) > merge_tolerance(p.beta()))
    throw Error(ErrorCode::Domain,
                "piecewise polynomials live on different intervals");
  auto bp = merge_breakpoints(p.breakpoints(), q.breakpoints());
  std::vector<std::vector<double>> rows;
  rows.reserve(bp.size() - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    rows.push_back(op(piece_on(p, bp[i], bp[i + 1]),
                      piece_on(q, bp[i], bp[i + 1])));
  return PiecewisePolynomial(std::move(bp), std::move(rows));
}

PiecewisePolynomial indicator(double beta, double a, double b) {
  if (!(a < b)) return PiecewisePolynomial::zero(beta);
  std::vector<double> bp{-beta};
  std::vector<std::vector<double>> rows;
  if (a > -beta) {
    bp.push_back(a);
    rows.push_back({0.0});
  }
  rows.push_back({1.0});
  if (b < beta) {
    bp.push_back(b);
    rows.push_back({0.0});
  }
  bp.push_back(beta);
  return PiecewisePolynomial(std::move(bp), std::move(rows));
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(
    std::vector<double> breakpoints, std::vector<std::vector<double>> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breakpoints_.size() < 2)
    throw Error(ErrorCode::Config, "piecewise polynomial needs >= 2 breakpoints");
  if (pieces_.size() + 1 != breakpoints_.size())
    throw Error(ErrorCode::Config,
                "piecewise polynomial needs one coefficient row per interval");
  const double beta = breakpoints_.back();
  if (!(beta > 0.0) ||
      std::abs(breakpoints_.front() + beta) > 1e-12 * beta)
    throw Error(ErrorCode::Config,
                "breakpoints must span a symmetric interval [-beta, beta]");
  breakpoints_.front() = -beta;
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw Error(ErrorCode::Config, "breakpoints must be strictly increasing");
  for (auto& row : pieces_) {
    if (row.empty()) row.push_back(0.0);
    for (double c : row)
      if (!std::isfinite(c))
        throw Error(ErrorCode::Config, "non-finite polynomial coefficient");
    degree_bound_ = std::max(degree_bound_, static_cast<int>(row.size()) - 1);
  }
}

PiecewisePolynomial PiecewisePolynomial::zero(double beta) {
  return constant(beta, 0.0);
}

PiecewisePolynomial PiecewisePolynomial::constant(double beta, double value) {
  return PiecewisePolynomial({-beta, beta}, {{value}});
}

PiecewisePolynomial PiecewisePolynomial::polynomial(
    double beta, std::span<const double> coeffs) {
  std::vector<double> c(coeffs.begin(), coeffs.end());
  if (c.empty()) c.push_back(0.0);
  return PiecewisePolynomial({-beta, beta}, {poly::taylor_shift(c, -beta)});
}

PiecewisePolynomial PiecewisePolynomial::truncated_power(double beta,
                                                         double knot, int power,
                                                         double scale) {
  if (power < 0)
    throw Error(ErrorCode::Config, "truncated power needs a non-negative degree");
  std::vector<double> mono(static_cast<std::size_t>(power) + 1, 0.0);
  mono.back() = scale;
  if (knot >= beta) return zero(beta);
  if (knot <= -beta)
    return PiecewisePolynomial({-beta, beta},
                               {poly::taylor_shift(mono, -beta - knot)});
  return PiecewisePolynomial({-beta, knot, beta}, {{0.0}, mono});
}

PiecewisePolynomial PiecewisePolynomial::legendre(double beta, int k) {
  if (k < 0) throw Error(ErrorCode::Config, "negative Legendre degree");
  std::vector<double> prev{1.0};
  if (k == 0) return polynomial(beta, prev);
  std::vector<double> cur{0.0, 1.0 / beta};
  for (int n = 1; n < k; ++n) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t j = 0; j < cur.size(); ++j)
      next[j + 1] += (2.0 * n + 1.0) * cur[j] / beta;
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= n * prev[j];
    for (double& c : next) c /= (n + 1.0);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return polynomial(beta, cur);
}

PiecewisePolynomial PiecewisePolynomial::bspline(double beta,
                                                 std::span<const double> t) {
  if (t.size() < 2)
    throw Error(ErrorCode::Config, "a B-spline needs at least two knots");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (t[i] > t[i + 1])
      throw Error(ErrorCode::Config, "B-spline knots must be non-decreasing");
  if (t.front() < -beta || t.back() > beta)
    throw Error(ErrorCode::Domain, "B-spline knots outside [-beta, beta]");
  const std::size_t degree = t.size() - 2;
  std::vector<PiecewisePolynomial> level;
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    level.push_back(indicator(beta, t[i], t[i + 1]));
  for (std::size_t d = 1; d <= degree; ++d) {
    std::vector<PiecewisePolynomial> next;
    for (std::size_t i = 0; i + d + 1 < t.size(); ++i) {
      auto term = zero(beta);
      const double left_den = t[i + d] - t[i];
      if (left_den > 0.0) {
        const double lin[] = {-t[i] / left_den, 1.0 / left_den};
        term = term + polynomial(beta, lin) * level[i];
      }
      const double right_den = t[i + d + 1] - t[i + 1];
      if (right_den > 0.0) {
        const double lin[] = {t[i + d + 1] / right_den, -1.0 / right_den};
        term = term + polynomial(beta, lin) * level[i + 1];
      }
      next.push_back(std::move(term));
    }
    level = std::move(next);
  }
  return level.front();
}

std::size_t PiecewisePolynomial::piece_index(double x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  auto idx = static_cast<std::ptrdiff_t>(it - breakpoints_.begin()) - 1;
  idx = std::clamp<std::ptrdiff_t>(idx, 0,
                                   static_cast<std::ptrdiff_t>(pieces_.size()) - 1);
  return static_cast<std::size_t>(idx);
}

double PiecewisePolynomial::derivative_value(double x, int order,
                                             bool from_left) const {
  auto idx = piece_index(x);
  if (from_left && idx > 0 && x <= breakpoints_[idx]) --idx;
  return poly::derivative_at(pieces_[idx], order, x - breakpoints_[idx]);
}

int PiecewisePolynomial::smoothness(double tol) const {
  if (breakpoints_.size() <= 2) return kSmoothEverywhere;
  for (int k = 0; k <= degree_bound_; ++k) {
    for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
      const double x = breakpoints_[i];
      const double l = derivative_value(x, k, true);
      const double r = derivative_value(x, k, false);
      if (std::abs(l - r) > tol * std::max({1.0, std::abs(l), std::abs(r)}))
        return k - 1;
    }
  }
  return kSmoothEverywhere;
}

std::vector<double> PiecewisePolynomial::nonsmooth_breakpoints(
    double tol) const {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
    const double x = breakpoints_[i];
    for (int k = 0; k <= degree_bound_; ++k) {
      const double l = derivative_value(x, k, true);
      const double r = derivative_value(x, k, false);
      if (std::abs(l - r) > tol * std::max({1.0, std::abs(l), std::abs(r)})) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

PiecewisePolynomial PiecewisePolynomial::refined(
    std::span<const double> extra) const {
  std::vector<double> inside;
  for (double x : extra)
    if (x > -beta() && x < beta()) inside.push_back(x);
  auto bp = merge_breakpoints(breakpoints_, inside);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    rows.push_back(piece_on(*this, bp[i], bp[i + 1]));
  return PiecewisePolynomial(std::move(bp), std::move(rows));
}

double evaluate(const PiecewisePolynomial& p, double x) {
  const double beta = p.beta();
  const double slack = 1e-12 * beta;
  if (!(x >= -beta - slack && x <= beta + slack)) {
    std::ostringstream msg;
    msg << "evaluation point " << x << " outside [-" << beta << ", " << beta
        << "]";
    throw Error(ErrorCode::Domain, msg.str());
  }
  x = std::clamp(x, -beta, beta);
  // Pieces are centred at their left end, so globally smooth functions
  // evaluated far from it cancel heavily; Horner runs in long double.
  return static_cast<double>(evaluate_extended(p, x));
}

PiecewisePolynomial piecewise_derivative(const PiecewisePolynomial& p) {
  std::vector<std::vector<double>> rows;
  rows.reserve(p.piece_count());
  for (const auto& row : p.pieces()) {
    std::vector<double> d;
    for (std::size_t k = 1; k < row.size(); ++k)
      d.push_back(static_cast<double>(k) * row[k]);
    if (d.empty()) d.push_back(0.0);
    rows.push_back(std::move(d));
  }
  return PiecewisePolynomial(
      std::vector<double>(p.breakpoints().begin(), p.breakpoints().end()),
      std::move(rows));
}

PiecewisePolynomial differentiate(const PiecewisePolynomial& p) {
  if (p.smoothness() < 1)
    throw Error(ErrorCode::NotDifferentiable,
                "input is not C^1; its derivative is a distribution, use the "
                "embedding path instead");
  return piecewise_derivative(p);
}

PiecewisePolynomial antiderivative(const PiecewisePolynomial& p) {
  std::vector<std::vector<double>> rows;
  rows.reserve(p.piece_count());
  double running = 0.0;
  const auto bp = p.breakpoints();
  for (std::size_t i = 0; i < p.piece_count(); ++i) {
    const auto& row = p.pieces()[i];
    std::vector<double> q(row.size() + 1, 0.0);
    q[0] = running;
    for (std::size_t k = 0; k < row.size(); ++k)
      q[k + 1] = row[k] / static_cast<double>(k + 1);
    running += poly::integral_from_zero<double>(row, bp[i + 1] - bp[i]);
    rows.push_back(std::move(q));
  }
  return PiecewisePolynomial(std::vector<double>(bp.begin(), bp.end()),
                             std::move(rows));
}

double integrate_product(const PiecewisePolynomial& p,
                         const PiecewisePolynomial& q) {
  if (std::abs(p.beta() - q.beta()) > merge_tolerance(p.beta()))
    throw Error(ErrorCode::Domain,
                "piecewise polynomials live on different intervals");
  const auto bp = merge_breakpoints(p.breakpoints(), q.breakpoints());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const auto a = piece_on(p, bp[i], bp[i + 1]);
    const auto b = piece_on(q, bp[i], bp[i + 1]);
    total += poly::integral_from_zero<double>(poly::multiply(a, b), bp[i + 1] - bp[i]);
  }
  return total;
}

double integrate(const PiecewisePolynomial& p) {
  double total = 0.0;
  const auto bp = p.breakpoints();
  for (std::size_t i = 0; i < p.piece_count(); ++i)
    total += poly::integral_from_zero<double>(p.pieces()[i], bp[i + 1] - bp[i]);
  return total;
}

PiecewisePolynomial operator+(const PiecewisePolynomial& p,
                              const PiecewisePolynomial& q) {
  return combine(p, q, [](const auto& a, const auto& b) {
    return poly::add(a, b);
  });
}

PiecewisePolynomial operator-(const PiecewisePolynomial& p,
                              const PiecewisePolynomial& q) {
  return combine(p, q, [](const auto& a, const auto& b) {
    return poly::add(a, b, -1.0);
  });
}

PiecewisePolynomial operator*(double s, const PiecewisePolynomial& p) {
  auto rows = p.pieces();
  for (auto& row : rows)
    for (double& c : row) c *= s;
  return PiecewisePolynomial(
      std::vector<double>(p.breakpoints().begin(), p.breakpoints().end()),
      std::move(rows));
}

PiecewisePolynomial operator*(const PiecewisePolynomial& p,
                              const PiecewisePolynomial& q) {
  return combine(p, q, [](const auto& a, const auto& b) {
    return poly::multiply(a, b);
  });
}

long double evaluate_extended(const PiecewisePolynomial& p, long double x) {
  const double beta = p.beta();
  if (!(x >= -beta - 1e-12L * beta && x <= beta + 1e-12L * beta))
    throw Error(ErrorCode::Domain, "evaluation point outside [-beta, beta]");
  const auto idx = p.piece_index(static_cast<double>(x));
  const auto& row = p.pieces()[idx];
  std::vector<long double> c(row.begin(), row.end());
  return poly::horner_impl<long double>(
      c, x - static_cast<long double>(p.breakpoints()[idx]));
}

long double integrate_product_extended(const PiecewisePolynomial& p,
                                       const PiecewisePolynomial& q) {
  if (std::abs(p.beta() - q.beta()) > merge_tolerance(p.beta()))
    throw Error(ErrorCode::Domain,
                "piecewise polynomials live on different intervals");
  const auto bp = merge_breakpoints(p.breakpoints(), q.breakpoints());
  auto piece_ext = [&bp](const PiecewisePolynomial& f, std::size_t i) {
    const auto idx = f.piece_index(0.5 * (bp[i] + bp[i + 1]));
    const auto& row = f.pieces()[idx];
    return poly::shift_impl<long double>(
        std::vector<long double>(row.begin(), row.end()),
        static_cast<long double>(bp[i]) -
            static_cast<long double>(f.breakpoints()[idx]));
  };
  long double total = 0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const auto a = piece_ext(p, i);
    const auto b = piece_ext(q, i);
    total += poly::integral_from_zero<long double>(
        poly::multiply_impl<long double>(a, b),
        static_cast<long double>(bp[i + 1]) - static_cast<long double>(bp[i]));
  }
  return total;
}

}  // namespace ultrafn
