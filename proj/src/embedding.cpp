#include "ultrafn/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ultrafn/error.hpp"

namespace ultrafn {

namespace {

void check_location(double beta, double q, const char* what) {
  if (!(q > -beta && q < beta)) {
    std::ostringstream os;
    os << what << " location " << q << " is not inside (-" << beta << ", "
       << beta << ")";
    throw Error(ErrorCode::Domain, os.str());
  }
}

void check_order(const DistributionDescriptor& t, int d_max) {
  if (t.order < 0 || t.order > d_max) {
    std::ostringstream os;
    os << "order " << t.order << " of '" << t.label << "' exceeds d_max = "
       << d_max;
    throw Error(ErrorCode::Order, os.str());
  }
}

bool jumps(double left, double right) {
  return std::abs(left - right) >
         kSmoothnessTolerance * std::max({1.0, std::abs(left), std::abs(right)});
}

/// Order >= 1 needs a C^1 piecewise polynomial whose C^1-only corners sit on
/// knots of the space.
const PiecewisePolynomial& checked_representative(
    const FunctionSpace& space, const DistributionDescriptor& t) {
  if (!t.representative)
    throw Error(ErrorCode::Representative,
                "'" + t.label + "' has no piecewise polynomial representative");
  const auto& phi = *t.representative;
  if (phi.smoothness() < 1)
    throw Error(ErrorCode::Representative,
                "representative of '" + t.label + "' is not C^1");
  const auto& knots = space.family().knots();
  for (double x : phi.nonsmooth_breakpoints()) {
    if (!jumps(phi.derivative_value(x, 2, true),
               phi.derivative_value(x, 2, false)))
      continue;
    const bool on_knot = std::any_of(knots.begin(), knots.end(), [&](double k) {
      return std::abs(k - x) <= 1e-12 * space.beta();
    });
    if (!on_knot) {
      std::ostringstream os;
      os << "representative of '" << t.label << "' has a corner at " << x
         << " which is not a knot of the space (add it to anchors)";
      throw Error(ErrorCode::Representative, os.str());
    }
  }
  return phi;
}

DistributionDescriptor located(DistributionKind kind, int order, double beta,
                               double q, double hi, const char* name) {
  check_location(beta, q, name);
  DistributionDescriptor t;
  t.kind = kind;
  t.order = order;
  t.representative = PiecewisePolynomial::truncated_power(beta, q, 2, 0.5);
  t.support_lo = q;
  t.support_hi = hi;
  t.at = q;
  std::ostringstream os;
  os << name << '(' << q << ')';
  t.label = os.str();
  return t;
}

}  // namespace

const char* to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::Dirac: return "dirac";
    case DistributionKind::Heaviside: return "heaviside";
    case DistributionKind::Continuous: return "continuous";
    case DistributionKind::Polynomial: return "polynomial";
    case DistributionKind::Custom: return "custom";
  }
  return "custom";
}

RealFunction DistributionDescriptor::evaluator() const {
  if (sampler) return sampler;
  if (representative) {
    auto phi = *representative;
    return [phi](double x) { return evaluate(phi, x); };
  }
  return {};
}

DistributionDescriptor dirac(double beta, double q) {
  return located(DistributionKind::Dirac, 3, beta, q, q, "dirac");
}

DistributionDescriptor heaviside(double beta, double q) {
  return located(DistributionKind::Heaviside, 2, beta, q, beta, "heaviside");
}

DistributionDescriptor heaviside_sampled(double beta, double q,
                                         double jump_value) {
  check_location(beta, q, "heaviside");
  DistributionDescriptor t;
  t.kind = DistributionKind::Heaviside;
  t.order = 0;
  t.sampler = [q, jump_value](double x) {
    return x > q ? 1.0 : (x < q ? 0.0 : jump_value);
  };
  t.support_lo = q;
  t.support_hi = beta;
  t.at = q;
  std::ostringstream os;
  os << "heaviside(" << q << ")";
  t.label = os.str();
  return t;
}

DistributionDescriptor continuous(const PiecewisePolynomial& f,
                                  std::string label) {
  DistributionDescriptor t;
  t.kind = DistributionKind::Continuous;
  t.order = 0;
  t.representative = f;
  t.support_lo = -f.beta();
  t.support_hi = f.beta();
  t.label = std::move(label);
  return t;
}

DistributionDescriptor continuous(double beta, RealFunction f,
                                  std::string label) {
  DistributionDescriptor t;
  t.kind = DistributionKind::Continuous;
  t.order = 0;
  t.sampler = std::move(f);
  t.support_lo = -beta;
  t.support_hi = beta;
  t.label = std::move(label);
  return t;
}

DistributionDescriptor polynomial(double beta, std::span<const double> coeffs) {
  auto t = continuous(PiecewisePolynomial::polynomial(beta, coeffs),
                      "polynomial");
  t.kind = DistributionKind::Polynomial;
  return t;
}

EmbeddingResult embed(const ContextPtr& ctx, const DistributionDescriptor& t,
                      int d_max) {
  check_order(t, d_max);
  auto value = [&] {
    if (t.order == 0) {
      const auto f = t.evaluator();
      if (!f)
        throw Error(ErrorCode::Representative,
                    "'" + t.label + "' has nothing to sample");
      return lift(ctx, f);
    }
    const auto& phi = checked_representative(ctx->space(), t);
    return derivative(restrict_projection(ctx, phi), t.order);
  }();
  double leakage = 0.0;
  const auto& pts = ctx->points().points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] < t.support_lo || pts[i] > t.support_hi)
      leakage = std::max(leakage, std::abs(value[i]));
  return EmbeddingResult{std::move(value), leakage};
}

DistributionDescriptor distribution_derivative(const DistributionDescriptor& t,
                                               int d_max) {
  if (t.order + 1 > d_max) {
    std::ostringstream os;
    os << "derivative of '" << t.label << "' would have order " << t.order + 1
       << " > d_max = " << d_max;
    throw Error(ErrorCode::Order, os.str());
  }
  if (!t.representative || t.representative->smoothness() < 1)
    throw Error(ErrorCode::Representative,
                "'" + t.label +
                    "' needs a C^1 piecewise polynomial representative to be "
                    "differentiated");
  DistributionDescriptor d = t;
  d.kind = t.kind == DistributionKind::Heaviside && t.order == 2
               ? DistributionKind::Dirac
               : DistributionKind::Custom;
  d.order = t.order + 1;
  d.sampler = {};
  d.label = "d(" + t.label + ")";
  if (d.kind == DistributionKind::Dirac) d.support_hi = d.support_lo;
  return d;
}

DistributionDescriptor scaled(const DistributionDescriptor& t, double r) {
  DistributionDescriptor s = t;
  if (t.representative) s.representative = r * *t.representative;
  if (t.sampler) {
    auto f = t.sampler;
    s.sampler = [f, r](double x) { return r * f(x); };
  }
  std::ostringstream os;
  os << r << '*' << t.label;
  s.label = os.str();
  return s;
}

DistributionDescriptor sum(const DistributionDescriptor& t1,
                           const DistributionDescriptor& t2) {
  const auto& hi = t1.order >= t2.order ? t1 : t2;
  const auto& lo = t1.order >= t2.order ? t2 : t1;
  DistributionDescriptor s;
  s.kind = DistributionKind::Custom;
  s.order = hi.order;
  s.support_lo = std::min(t1.support_lo, t2.support_lo);
  s.support_hi = std::max(t1.support_hi, t2.support_hi);
  s.label = t1.label + " + " + t2.label;
  if (s.order == 0 && (t1.sampler || t2.sampler)) {
    auto f = t1.evaluator();
    auto g = t2.evaluator();
    if (!f || !g)
      throw Error(ErrorCode::Representative, "'" + s.label + "' cannot be sampled");
    s.sampler = [f, g](double x) { return f(x) + g(x); };
    return s;
  }
  if (!hi.representative || !lo.representative)
    throw Error(ErrorCode::Representative,
                "'" + s.label + "' needs piecewise polynomial representatives");
  auto aligned = *lo.representative;
  for (int k = lo.order; k < hi.order; ++k) aligned = antiderivative(aligned);
  s.representative = *hi.representative + aligned;
  return s;
}

PairingResult pair(const ContextPtr& ctx, const DistributionDescriptor& t,
                   const PiecewisePolynomial& phi, int d_max) {
  PairingResult out;
  const auto& space = ctx->space();
  const double beta = space.beta();
  auto g = phi;
  const double scale = std::max(1.0, std::sqrt(integrate_product(phi, phi)));
  for (int k = 0; k < std::max(1, t.order); ++k) {
    if (projection_residual(space, g) > 1e-9) {
      std::ostringstream os;
      os << "derivative " << k << " of the test function is not in the space";
      out.warnings.push_back(os.str());
    }
    if (std::abs(evaluate(g, -beta)) > 1e-12 * scale ||
        std::abs(evaluate(g, beta)) > 1e-12 * scale) {
      std::ostringstream os;
      os << "derivative " << k << " of the test function does not vanish at "
         << "+-beta";
      out.warnings.push_back(os.str());
    }
    g = piecewise_derivative(g);
  }
  const auto e = embed(ctx, t, d_max);
  out.value = scalar_product(e.value, restrict_to_points(ctx, phi));
  return out;
}

LinearityReport linearity_check(const ContextPtr& ctx,
                                const DistributionDescriptor& t1,
                                const DistributionDescriptor& t2, int d_max) {
  LinearityReport out;
  const auto e1 = embed(ctx, t1, d_max).value;
  const auto e2 = embed(ctx, t2, d_max).value;
  const auto e12 = embed(ctx, sum(t1, t2), d_max).value;
  out.additivity =
      norm(e12 - e1 - e2) / std::max(1.0, norm(e1) + norm(e2));
  for (double r : {0.0, 2.0, -1.0}) {
    const auto er = embed(ctx, scaled(t1, r), d_max).value;
    out.homogeneity.emplace_back(
        r, norm(er - r * e1) / std::max(1.0, std::abs(r) * norm(e1)));
  }
  return out;
}

std::vector<PiecewisePolynomial> interior_bumps(const FunctionSpace& space,
                                                std::size_t count) {
  std::vector<double> k;
  for (double x : space.family().knots())
    if (x > -space.beta() && x < space.beta()) k.push_back(x);
  std::sort(k.begin(), k.end());
  if (k.size() < 7 || count > 3)
    throw Error(ErrorCode::Config,
                "interior bumps need at least 7 interior knots (and at most 3 "
                "bumps)");
  // Centre the patterns on the middle knot.
  const std::size_t m = k.size() / 2;
  const std::vector<std::vector<double>> patterns{
      {k[m - 3], k[m - 2], k[m - 1], k[m], k[m + 1], k[m + 2], k[m + 3]},
      {k[m - 2], k[m - 1], k[m - 1], k[m], k[m + 1], k[m + 1], k[m + 2]},
      {k[m - 2], k[m - 1], k[m - 1], k[m], k[m], k[m + 1], k[m + 1]},
  };
  std::vector<PiecewisePolynomial> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(PiecewisePolynomial::bspline(space.beta(), patterns[i]));
  return out;
}

}  // namespace ultrafn
