#include "ultrafn/algebra.hpp"

#include <cmath>
#include <sstream>

#include "ultrafn/error.hpp"

namespace ultrafn {

namespace {

void same_context(const RestrictedUltrafunction& u,
                  const RestrictedUltrafunction& v) {
  if (u.context() != v.context())
    throw Error(ErrorCode::ContextMismatch,
                "restricted ultrafunctions belong to different contexts");
}

}  // namespace

std::shared_ptr<const Context> Context::create(const ContextOptions& options) {
  const double beta = options.space.beta;
  SpaceConfig config = options.space;
  std::vector<double> required;
  for (double a : options.anchors) {
    if (!(a > -beta && a < beta)) {
      std::ostringstream os;
      os << "anchor " << a << " is not inside (-" << beta << ", " << beta
         << ")";
      throw Error(ErrorCode::Config, os.str());
    }
    bool known = false;
    for (double k : config.knots) known = known || std::abs(k - a) <= 1e-12 * beta;
    if (!known) config.knots.push_back(a);
    required.push_back(a);
  }
  for (double r : options.required_points) {
    if (!(r >= -beta && r <= beta)) {
      std::ostringstream os;
      os << "required point " << r << " is outside [-" << beta << ", " << beta
         << "]";
      throw Error(ErrorCode::Config, os.str());
    }
    required.push_back(r);
  }
  FunctionSpace space = build_space(config);
  const auto candidates = options.candidates
                              ? *options.candidates
                              : default_candidates(space, required);
  auto points = select_independent_points(space, required, candidates);
  return std::shared_ptr<const Context>(
      new Context(std::move(space), std::move(points), options.anchors));
}

std::shared_ptr<const Context> Context::create(
    FunctionSpace space, std::span<const double> required,
    std::span<const double> candidates) {
  auto points = select_independent_points(space, required, candidates);
  return std::shared_ptr<const Context>(
      new Context(std::move(space), std::move(points), {}));
}

Context::Context(FunctionSpace space, IndependentPointSet points,
                 std::vector<double> anchors)
    : space_(std::move(space)),
      points_(std::move(points)),
      sigma_(sigma_basis(space_, points_)),
      eta_(eta_tensors(space_, sigma_)),
      anchors_(std::move(anchors)) {
  using detail::MatrixXld;
  const auto n = static_cast<Eigen::Index>(space_.dimension());
  const auto& gens = space_.generators();
  MatrixXld m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto dj = differentiate(gens[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < n; ++i)
      m(i, j) = integrate_product_extended(gens[static_cast<std::size_t>(i)], dj);
  }
  // Assembled in extended precision; in double the defect of D^5 on quartics
  // is around 2e-7, here it stays near 1e-9.
  const auto gram_llt = detail::gram_extended(space_).llt();
  const MatrixXld dcoef = gram_llt.solve(m);
  const MatrixXld e = detail::evaluation_extended(space_, points_.points());
  const MatrixXld c = e.fullPivLu().inverse();
  coefficient_derivative_ = dcoef.cast<double>();
  derivative_extended_ = e * dcoef * c;
  projection_values_ = gram_llt.solve(e.transpose()).transpose();
  derivative_ = derivative_extended_.cast<double>();
}

RestrictedUltrafunction::RestrictedUltrafunction(ContextPtr ctx,
                                                 Eigen::VectorXd values)
    : ctx_(std::move(ctx)), values_(std::move(values)) {
  if (!ctx_) throw Error(ErrorCode::ContextMismatch, "missing context");
  if (static_cast<std::size_t>(values_.size()) != ctx_->dimension())
    throw Error(ErrorCode::ContextMismatch,
                "value vector length does not match the point set");
}

RestrictedUltrafunction restrict_to_points(const ContextPtr& ctx,
                                           const Coefficients& u) {
  if (static_cast<std::size_t>(u.size()) != ctx->dimension())
    throw Error(ErrorCode::ContextMismatch,
                "coefficient vector does not belong to this space");
  return RestrictedUltrafunction(ctx, ctx->points().evaluation_matrix() * u);
}

RestrictedUltrafunction restrict_to_points(const ContextPtr& ctx,
                                           const PiecewisePolynomial& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(ctx->dimension()));
  const auto& pts = ctx->points().points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = evaluate(f, pts[i]);
  return RestrictedUltrafunction(ctx, std::move(v));
}

RestrictedUltrafunction restrict_projection(const ContextPtr& ctx,
                                            const PiecewisePolynomial& f) {
  const auto& gens = ctx->space().generators();
  Eigen::Matrix<long double, Eigen::Dynamic, 1> b(
      static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i)
    b(static_cast<Eigen::Index>(i)) = integrate_product_extended(gens[i], f);
  const Eigen::Matrix<long double, Eigen::Dynamic, 1> v =
      ctx->projection_values() * b;
  return RestrictedUltrafunction(ctx, v.cast<double>());
}

Coefficients extend(const RestrictedUltrafunction& u) {
  return u.context()->sigma().coefficients * u.values();
}

PiecewisePolynomial extension_function(const RestrictedUltrafunction& u) {
  return u.context()->space().function(extend(u));
}

RestrictedUltrafunction pointwise(const RestrictedUltrafunction& u,
                                  const RestrictedUltrafunction& v,
                                  PointwiseOp op, double factor) {
  switch (op) {
    case PointwiseOp::Add:
      same_context(u, v);
      return RestrictedUltrafunction(u.context(), u.values() + v.values());
    case PointwiseOp::Mul:
      same_context(u, v);
      return RestrictedUltrafunction(u.context(),
                                     u.values().cwiseProduct(v.values()));
    case PointwiseOp::Scale:
      return RestrictedUltrafunction(u.context(), factor * u.values());
  }
  throw Error(ErrorCode::Config, "unknown pointwise operation");
}

RestrictedUltrafunction operator+(const RestrictedUltrafunction& u,
                                  const RestrictedUltrafunction& v) {
  return pointwise(u, v, PointwiseOp::Add);
}

RestrictedUltrafunction operator-(const RestrictedUltrafunction& u,
                                  const RestrictedUltrafunction& v) {
  same_context(u, v);
  return RestrictedUltrafunction(u.context(), u.values() - v.values());
}

RestrictedUltrafunction operator*(const RestrictedUltrafunction& u,
                                  const RestrictedUltrafunction& v) {
  return pointwise(u, v, PointwiseOp::Mul);
}

RestrictedUltrafunction operator*(double s, const RestrictedUltrafunction& u) {
  return pointwise(u, u, PointwiseOp::Scale, s);
}

double scalar_product(const RestrictedUltrafunction& u,
                      const RestrictedUltrafunction& v) {
  same_context(u, v);
  return u.values().dot(u.context()->eta().eta_ab * v.values());
}

double norm(const RestrictedUltrafunction& u) {
  return std::sqrt(std::max(0.0, scalar_product(u, u)));
}

double integral(const RestrictedUltrafunction& u) {
  return u.values().dot(u.context()->eta().eta_a);
}

RestrictedUltrafunction derivative(const RestrictedUltrafunction& u,
                                   int times) {
  Eigen::Matrix<long double, Eigen::Dynamic, 1> v =
      u.values().cast<long double>();
  for (int k = 0; k < times; ++k)
    v = u.context()->derivative_matrix_extended() * v;
  return RestrictedUltrafunction(u.context(), v.cast<double>());
}

double boundary_bracket(const RestrictedUltrafunction& u,
                        const RestrictedUltrafunction& v) {
  same_context(u, v);
  const auto last = u.size() - 1;
  return u[last] * v[last] - u[0] * v[0];
}

RestrictedUltrafunction lift(const ContextPtr& ctx, const RealFunction& f) {
  const auto& pts = ctx->points().points();
  Eigen::VectorXd v(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double value = 0.0;
    bool ok = true;
    try {
      value = f(pts[i]);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok || !std::isfinite(value)) {
      std::ostringstream os;
      os << "function cannot be lifted: evaluation failed at point " << pts[i];
      throw Error(ErrorCode::Lift, os.str());
    }
    v(static_cast<Eigen::Index>(i)) = value;
  }
  return RestrictedUltrafunction(ctx, std::move(v));
}

}  // namespace ultrafn
