// Acceptance run: one line per criterion, exit status 1 if any fails.
//
// Everything is recomputed here from library primitives and the reference
// computations in oracles.hpp; the invariant suites of the CLI are not used.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tiny.hpp"
#include "ultrafn/embedding.hpp"

using namespace ultrafn;

namespace {

constexpr double kBeta = 4.0;

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const Outcome& o) {
  std::printf("%s criterion %2d %-22s %s\n", o.passed ? "PASS" : "FAIL", id,
              name, o.detail.c_str());
  if (!o.passed) ++failures;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// max defect vs tolerance; a NaN defect fails.
Outcome bounded(double defect, double tol, const char* what = "max defect") {
  Outcome o;
  o.passed = defect <= tol;
  o.detail = std::string(what) + fmt(" %.3g (tol %.0e)", defect, tol);
  return o;
}

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

Eigen::VectorXd random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = u(rng);
  return v;
}

ContextPtr default_context() {
  ContextOptions o;
  o.anchors = {0.0};
  return Context::create(o);
}

Outcome weak_leibniz(const ContextPtr& ctx) {
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const RestrictedUltrafunction u(ctx, random_vector(rng, ctx->dimension()));
    const RestrictedUltrafunction v(ctx, random_vector(rng, ctx->dimension()));
    const double lhs = scalar_product(derivative(u), v) + scalar_product(u, derivative(v));
    worst = std::max(worst, std::abs(lhs - boundary_bracket(u, v)) / (norm(u) * norm(v)));
  }
  return bounded(worst, 1e-7);
}

Outcome dual_basis(const ContextPtr& ctx) {
  const auto& s = ctx->space();
  const auto& pts = ctx->points().points();
  const auto& c = ctx->sigma().coefficients;
  const auto n = pts.size();
  std::vector<PiecewisePolynomial> sigma, delta;
  for (std::size_t a = 0; a < n; ++a) {
    sigma.push_back(s.function(c.col(static_cast<Eigen::Index>(a))));
    delta.push_back(s.function(delta_at(s, pts[a])));
  }
  double bio = 0.0, card = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double id = a == b ? 1.0 : 0.0;
      bio = std::max(bio, std::abs(integrate_product(delta[a], sigma[b]) - id));
      card = std::max(card, std::abs(evaluate(sigma[a], pts[b]) - id));
    }
  std::mt19937_64 rng(42);
  double recon = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd u = random_vector(rng, n);
    const auto f = s.function(u);
    auto sum = PiecewisePolynomial::zero(kBeta);
    for (std::size_t a = 0; a < n; ++a) sum = sum + evaluate(f, pts[a]) * sigma[a];
    const auto diff = f - sum;
    recon = std::max(recon, std::sqrt(integrate_product(diff, diff)) /
                                std::sqrt(integrate_product(f, f)));
  }
  Outcome o;
  o.passed = n == 34 && bio <= 1e-8 && card <= 1e-8 && recon <= 1e-8;
  o.detail = fmt("biorthogonality %.3g, cardinality %.3g", bio, card) +
             fmt(", reconstruction %.3g (tol %.0e)", recon, 1e-8) +
             ", |Sigma| = " + std::to_string(n);
  return o;
}

Outcome reproducing(const ContextPtr& ctx) {
  const auto& s = ctx->space();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> where(-kBeta, kBeta);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto v = s.function(random_vector(rng, s.dimension()));
    const double q = where(rng);
    const double lhs = integrate_product(s.function(delta_at(s, q)), v);
    worst = std::max(worst, std::abs(lhs - evaluate(v, q)) /
                                std::sqrt(integrate_product(v, v)));
  }
  return bounded(worst, 1e-8);
}

Outcome pairing(const ContextPtr& ctx) {
  const auto bumps = interior_bumps(ctx->space(), 3);
  const auto cubic = PiecewisePolynomial::polynomial(
      kBeta, std::vector<double>{0.3, 1.0, -0.5, 0.1});
  const auto cubic_at = [](double x) {
    return 0.3 + x - 0.5 * x * x + 0.1 * x * x * x;
  };
  double worst = 0.0;
  std::size_t warnings = 0;
  for (std::size_t i = 0; i < bumps.size(); ++i) {
    const auto& t = oracle::default_bump_knots()[i];
    const auto b = [&](double x) { return oracle::bspline(t, x); };
    const double dirac_ref = b(0.0);
    const double heaviside_ref = oracle::integrate(b, 0.0, kBeta, t);
    const double cubic_ref =
        oracle::integrate([&](double x) { return cubic_at(x) * b(x); }, -kBeta, kBeta, t);
    const std::pair<DistributionDescriptor, double> cases[] = {
        {dirac(kBeta, 0.0), dirac_ref},
        {heaviside(kBeta, 0.0), heaviside_ref},
        {continuous(cubic, "cubic"), cubic_ref}};
    for (const auto& [d, ref] : cases) {
      const auto p = pair(ctx, d, bumps[i]);
      warnings += p.warnings.size();
      worst = std::max(worst, std::abs(p.value - ref) / std::abs(ref));
    }
  }
  auto o = bounded(worst, 1e-6, "max relative defect");
  o.passed = o.passed && bumps.size() == 3 && warnings == 0;
  o.detail += ", bumps " + std::to_string(bumps.size()) + ", warnings " +
              std::to_string(warnings);
  return o;
}

Outcome diagram(const ContextPtr& ctx) {
  const std::vector<double> c{0.3, 1.0, -0.5, 0.1};
  double worst = 0.0;
  for (const auto& t : {polynomial(kBeta, c), heaviside(kBeta, 0.0), dirac(kBeta, 0.0)}) {
    const auto lhs = embed(ctx, distribution_derivative(t)).value;
    const auto rhs = derivative(embed(ctx, t).value);
    worst = std::max(worst, max_abs(lhs.values() - rhs.values()));
  }
  return bounded(worst, 1e-7);
}

Outcome product(const ContextPtr& ctx) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int mismatches = 0;
  for (int i = 0; i < 20; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng), k = u(rng);
    const RealFunction f = [=](double x) { return a * std::sin(2.0 * b * x + c); };
    const RealFunction g = [=](double x) { return std::exp(k * x) + a * x * x; };
    const RealFunction fg = [=](double x) { return f(x) * g(x); };
    const auto lhs = embed(ctx, continuous(kBeta, fg)).value;
    const auto rhs = embed(ctx, continuous(kBeta, f)).value *
                     embed(ctx, continuous(kBeta, g)).value;
    for (std::size_t j = 0; j < lhs.size(); ++j)
      if (std::memcmp(&lhs.values()[static_cast<Eigen::Index>(j)],
                      &rhs.values()[static_cast<Eigen::Index>(j)], sizeof(double)) != 0)
        ++mismatches;
  }
  Outcome o;
  o.passed = mismatches == 0;
  o.detail = "bitwise mismatches " + std::to_string(mismatches) + " over 20 pairs";
  return o;
}

Outcome polynomial_kernel(const ContextPtr& ctx) {
  double kernel = 0.0;
  for (int k = 0; k <= 4; ++k) {
    std::vector<double> mono(static_cast<std::size_t>(k) + 1, 0.0);
    mono.back() = 1.0;
    const auto u = restrict_to_points(ctx, PiecewisePolynomial::polynomial(kBeta, mono));
    const auto d = derivative(u, k + 1);
    kernel = std::max({kernel, norm(d), max_abs(d.values())});
  }
  auto alt = dirac(kBeta, 0.0);
  alt.order = 4;
  alt.representative = PiecewisePolynomial::truncated_power(kBeta, 0.0, 3, 1.0 / 6.0);
  const double indep = max_abs(embed(ctx, alt).value.values() -
                               embed(ctx, dirac(kBeta, 0.0)).value.values());
  Outcome o;
  o.passed = kernel <= 1e-7 && indep <= 1e-7;
  o.detail = fmt("max |D^(k+1) x^k| %.3g, representative gap %.3g (tol 1e-07)",
                 kernel, indep);
  return o;
}

Outcome linearity(const ContextPtr& ctx) {
  const auto x = polynomial(kBeta, std::vector<double>{0.0, 1.0});
  const auto affine = polynomial(kBeta, std::vector<double>{1.0, 2.0});
  const std::pair<DistributionDescriptor, DistributionDescriptor> pairs[] = {
      {dirac(kBeta, 0.0), heaviside(kBeta, 0.0)},
      {dirac(kBeta, 0.0), affine},
      {heaviside(kBeta, 0.0), x},
      {x, x}};
  double additivity = 0.0, homogeneity = 0.0;
  bool zero_exact = true;
  for (const auto& [t1, t2] : pairs) {
    const Eigen::VectorXd e1 = embed(ctx, t1).value.values();
    const Eigen::VectorXd e2 = embed(ctx, t2).value.values();
    const Eigen::VectorXd e12 = embed(ctx, sum(t1, t2)).value.values();
    additivity = std::max(additivity, max_abs(e12 - e1 - e2) /
                                          std::max(1.0, max_abs(e1) + max_abs(e2)));
    for (double r : {0.0, 2.0, -1.0}) {
      const Eigen::VectorXd er = embed(ctx, scaled(t1, r)).value.values();
      if (r == 0.0) zero_exact = zero_exact && er.isZero(0.0);
      homogeneity = std::max(homogeneity, max_abs(er - r * e1) /
                                              std::max(1.0, std::abs(r) * max_abs(e1)));
    }
  }
  Outcome o;
  o.passed = additivity <= 1e-6 && homogeneity <= 1e-6 && zero_exact;
  o.detail = fmt("additivity %.3g, homogeneity %.3g (tol 1e-06)", additivity,
                 homogeneity) +
             (zero_exact ? ", r = 0 exact" : ", r = 0 NOT exact");
  return o;
}

Outcome tiny_oracle() {
  const auto ctx = tiny_context();
  const auto& s = ctx->space();
  double worst = 0.0;
  const auto check = [&](double got, double want) {
    worst = std::max(worst, std::abs(got - want));
  };
  check(s.gram()(0, 0), 2.0);
  check(s.gram()(0, 1), 0.0);
  check(s.gram()(1, 0), 0.0);
  check(s.gram()(1, 1), 2.0 / 3.0);
  const auto d0 = s.function(delta_at(s, 0.0));
  const auto d1 = s.function(delta_at(s, 1.0));
  for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    check(evaluate(d0, x), 0.5);
    check(evaluate(d1, x), 0.5 + 1.5 * x);
    check(s.value(ctx->sigma().coefficients.col(0), x), (1.0 - x) / 2.0);
    check(s.value(ctx->sigma().coefficients.col(1), x), (1.0 + x) / 2.0);
  }
  const auto& eta = ctx->eta();
  check(eta.eta_a(0), 1.0);
  check(eta.eta_a(1), 1.0);
  check(eta.eta_ab(0, 0), 2.0 / 3.0);
  check(eta.eta_ab(0, 1), 1.0 / 3.0);
  check(eta.eta_ab(1, 0), 1.0 / 3.0);
  check(eta.eta_ab(1, 1), 2.0 / 3.0);
  const auto u = values(ctx, {-1, 3});
  const auto one = values(ctx, {1, 1});
  const auto x = values(ctx, {-1, 1});
  check(scalar_product(u, one), 2.0);
  check(scalar_product(x, x), 2.0 / 3.0);
  check(integral(u), 2.0);
  check(boundary_bracket(one, x), 2.0);
  const auto dx = derivative(x);
  check(dx[0], 1.0);
  check(dx[1], 1.0);
  auto o = bounded(worst, 1e-12);
  o.passed = o.passed && ctx->points().points() == std::vector<double>{-1.0, 1.0};
  return o;
}

Outcome locality(const ContextPtr& ctx) {
  const auto bump = interior_bumps(ctx->space(), 1).front();
  auto bump_lift = continuous(bump, "bump");
  bump_lift.support_lo = -3.0;
  bump_lift.support_hi = 3.0;
  auto hat = continuous(kBeta, [](double x) { return std::max(0.0, 1.0 - x * x); }, "hat");
  hat.support_lo = -1.0;
  hat.support_hi = 1.0;
  double order0 = 0.0;
  for (const auto& t : {bump_lift, hat, heaviside_sampled(kBeta, 0.0)})
    order0 = std::max(order0, embed(ctx, t).leakage);
  const double dirac_leak = embed(ctx, dirac(kBeta, 0.0)).leakage;
  Outcome o;
  o.passed = order0 == 0.0 && std::isfinite(dirac_leak);
  o.detail = fmt("order-0 leakage %.3g (must be 0); dirac(0) leakage %.4g reported",
                 order0, dirac_leak);
  return o;
}

template <typename F>
void run(int id, const char* name, F&& f) {
  try {
    report(id, name, f());
  } catch (const std::exception& e) {
    report(id, name, Outcome{false, std::string("error: ") + e.what()});
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const auto ctx = default_context();
  std::printf("default space: beta %g, dimension %zu\n", ctx->beta(), ctx->dimension());
  run(1, "weak-leibniz", [&] { return weak_leibniz(ctx); });
  run(2, "dual-basis", [&] { return dual_basis(ctx); });
  run(3, "reproducing-kernel", [&] { return reproducing(ctx); });
  run(4, "duality-pairing", [&] { return pairing(ctx); });
  run(5, "diagram-commutation", [&] { return diagram(ctx); });
  run(6, "product-extension", [&] { return product(ctx); });
  run(7, "polynomial-kernel", [&] { return polynomial_kernel(ctx); });
  run(8, "linearity", [&] { return linearity(ctx); });
  run(9, "tiny-space-oracle", [] { return tiny_oracle(); });
  run(10, "locality-report", [&] { return locality(ctx); });
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 10 criteria failed, %.2fs\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
