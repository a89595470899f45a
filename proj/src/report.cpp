#include "ultrafn/report.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

#include "ultrafn/error.hpp"

namespace ultrafn {

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    rows.push_back(to_vector(m.row(i).transpose()));
  return rows;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// T[B] = (-1)^d int phi B^(d), valid for bumps vanishing with their
/// derivatives at both ends.
std::optional<double> classical_action(const DistributionDescriptor& t,
                                       const PiecewisePolynomial& bump) {
  if (!t.representative) return std::nullopt;
  auto b = bump;
  for (int k = 0; k < t.order; ++k) b = piecewise_derivative(b);
  const double sign = t.order % 2 == 0 ? 1.0 : -1.0;
  return sign * integrate_product(*t.representative, b);
}

json pairing_check(const ContextPtr& ctx, const DistributionDescriptor& t,
                   const PiecewisePolynomial& bump, std::size_t index,
                   int d_max) {
  const auto p = pair(ctx, t, bump, d_max);
  json j{{"bump", index}, {"value", p.value}, {"warnings", p.warnings}};
  if (const auto expected = classical_action(t, bump)) {
    j["expected"] = *expected;
    j["defect"] = std::abs(p.value - *expected) /
                  std::max(std::abs(*expected), 1e-12);
  }
  return j;
}

}  // namespace

json space_report(const ContextPtr& ctx) {
  const auto& s = ctx->space();
  return json{{"beta", s.beta()},
              {"dimension", s.dimension()},
              {"polynomial_degree", s.family().polynomial_degree()},
              {"knots", s.family().knots()},
              {"truncated_power_degrees", s.family().truncated_power_degrees()},
              {"anchors", ctx->anchors()},
              {"condition_estimate", s.condition_estimate()},
              {"generators", s.labels()},
              {"generator_integrals", to_vector(s.generator_integrals())},
              {"gram", matrix_json(s.gram())},
              {"points", ctx->points().points()}};
}

json sigma_report(const ContextPtr& ctx) {
  // Kernel matrix K[a][b] = delta_a(b) = b(a)^T G^{-1} b(b).
  const auto& e = ctx->points().evaluation_matrix();
  const Eigen::MatrixXd k = e * ctx->space().chol().solve(e.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (k + k.transpose()), Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return json{{"points", ctx->points().points()},
              {"kernel_condition_estimate", ev.maxCoeff() / ev.minCoeff()},
              {"eta_a", to_vector(ctx->eta().eta_a)},
              {"eta_ab", matrix_json(ctx->eta().eta_ab)}};
}

std::string sigma_csv(const ContextPtr& ctx, std::size_t grid) {
  if (grid < 2) throw Error(ErrorCode::Config, "sample grid needs at least 2 points");
  const auto& space = ctx->space();
  const auto& c = ctx->sigma().coefficients;
  const auto& pts = ctx->points().points();
  const double beta = space.beta();
  std::string out = "x";
  for (double a : pts) out += ",sigma[" + fmt(a) + "]";
  out += '\n';
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = i + 1 == grid
                         ? beta
                         : -beta + 2.0 * beta * static_cast<double>(i) /
                                       static_cast<double>(grid - 1);
    const Eigen::VectorXd row = c.transpose() * space.generator_values(x);
    out += fmt(x);
    for (double v : row) out += ',' + fmt(v);
    out += '\n';
  }
  return out;
}

std::string samples_csv(const PiecewisePolynomial& f, std::size_t grid) {
  if (grid < 2) throw Error(ErrorCode::Config, "sample grid needs at least 2 points");
  const double beta = f.beta();
  std::string out = "x,value\n";
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = i + 1 == grid
                         ? beta
                         : -beta + 2.0 * beta * static_cast<double>(i) /
                                       static_cast<double>(grid - 1);
    out += fmt(x) + ',' + fmt(evaluate(f, x)) + '\n';
  }
  return out;
}

std::string values_csv(const RestrictedUltrafunction& u) {
  const auto& pts = u.context()->points().points();
  std::string out = "a,value\n";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out += fmt(pts[i]) + ',' + fmt(u[i]) + '\n';
  return out;
}

std::string delta_csv(const ContextPtr& ctx, double q, std::size_t grid) {
  return samples_csv(ctx->space().function(delta_at(ctx->space(), q)), grid);
}

json embed_report(const ContextPtr& ctx, const DistributionDescriptor& t,
                  int d_max) {
  const auto e = embed(ctx, t, d_max);
  json checks = json::array();
  try {
    const auto bumps = interior_bumps(ctx->space(), 3);
    for (std::size_t i = 0; i < bumps.size(); ++i)
      checks.push_back(pairing_check(ctx, t, bumps[i], i, d_max));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::Config) throw;
  }
  return json{{"descriptor", to_json(t)},
              {"points", ctx->points().points()},
              {"values", to_vector(e.value.values())},
              {"leakage", e.leakage},
              {"pairing_checks", std::move(checks)}};
}

json mul_report(const ContextPtr& ctx, const DistributionDescriptor& left,
                const DistributionDescriptor& right, int d_max) {
  const auto l = embed(ctx, left, d_max).value;
  const auto r = embed(ctx, right, d_max).value;
  const auto p = l * r;
  return json{{"left", to_json(left)},
              {"right", to_json(right)},
              {"points", ctx->points().points()},
              {"left_values", to_vector(l.values())},
              {"right_values", to_vector(r.values())},
              {"values", to_vector(p.values())},
              {"integral", integral(p)},
              {"norm", norm(p)},
              {"exploratory", left.order > 0 || right.order > 0}};
}

json pair_report(const ContextPtr& ctx, const DistributionDescriptor& t,
                 std::size_t bump_index, int d_max) {
  const auto bumps = interior_bumps(ctx->space(), 3);
  if (bump_index >= bumps.size())
    throw Error(ErrorCode::Config, "bump index must be 0, 1 or 2");
  json j = pairing_check(ctx, t, bumps[bump_index], bump_index, d_max);
  j["descriptor"] = to_json(t);
  j["test"] = ultrafn::to_json(bumps[bump_index]);
  return j;
}

}  // namespace ultrafn
