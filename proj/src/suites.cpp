#include "ultrafn/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "ultrafn/error.hpp"

namespace ultrafn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Recorder {
 public:
  Recorder(const RunConfig& config, const std::string& suite, double fallback)
      : tol_(fallback) {
    if (auto it = config.tolerances.find(suite); it != config.tolerances.end())
      tol_ = it->second;
  }

  double tol() const { return tol_; }

  void at_most(std::string name, double defect, double tolerance) {
    checks.push_back({std::move(name), defect, tolerance,
                      std::isfinite(defect) && defect <= tolerance, "<=", true});
  }
  void at_most(std::string name, double defect) {
    at_most(std::move(name), defect, tol_);
  }
  void exceeds(std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, bound,
                      std::isfinite(value) && value > bound, ">", true});
  }
  void report(std::string name, double value) {
    checks.push_back({std::move(name), value, kInf, true, "<=", false});
  }

  std::vector<CheckRecord> checks;

 private:
  double tol_;
};

using Vec = Eigen::VectorXd;

Vec random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = u(rng);
  return v;
}

double relative(double value, double expected) {
  return std::abs(value - expected) / std::max(std::abs(expected), 1e-12);
}

PiecewisePolynomial cubic(double beta) {
  const double c[] = {0.3, 1.0, -0.5, 0.1};
  return PiecewisePolynomial::polynomial(beta, c);
}

PiecewisePolynomial monomial(double beta, int k) {
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  c.back() = 1.0;
  return PiecewisePolynomial::polynomial(beta, c);
}

void leibniz(Recorder& r, const ContextPtr& ctx, std::mt19937_64& rng) {
  const auto n = ctx->dimension();
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    RestrictedUltrafunction u(ctx, random_vector(rng, n));
    RestrictedUltrafunction v(ctx, random_vector(rng, n));
    const double lhs = scalar_product(derivative(u), v) +
                       scalar_product(u, derivative(v));
    worst = std::max(worst, std::abs(lhs - boundary_bracket(u, v)) /
                                (norm(u) * norm(v)));
  }
  r.at_most("weak Leibniz rule, 200 random pairs", worst);

  // Against a test function vanishing at both ends the bracket drops out.
  const auto f = lift(ctx, [b = interior_bumps(ctx->space(), 1)[0]](double x) {
    return evaluate(b, x);
  });
  const auto df = derivative(f);
  worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    RestrictedUltrafunction u(ctx, random_vector(rng, n));
    worst = std::max(worst, std::abs(scalar_product(derivative(u), f) +
                                     scalar_product(u, df)) /
                                (norm(u) * norm(f)));
  }
  r.at_most("integration by parts against an interior bump, 50 draws", worst);
}

void dual_basis(Recorder& r, const ContextPtr& ctx, std::mt19937_64& rng) {
  const auto& space = ctx->space();
  const auto& pts = ctx->points().points();
  const auto& c = ctx->sigma().coefficients;
  const auto n = static_cast<Eigen::Index>(pts.size());
  double bio = 0.0;
  double card = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    const Vec delta = delta_at(space, pts[static_cast<std::size_t>(a)]);
    const Vec row = c.transpose() * (space.gram() * delta);
    const Vec vals = c.transpose() *
                     space.generator_values(pts[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < n; ++b) {
      const double kron = a == b ? 1.0 : 0.0;
      bio = std::max(bio, std::abs(row(b) - kron));
      card = std::max(card, std::abs(vals(b) - kron));
    }
  }
  r.at_most("biorthogonality int delta_a sigma_b = [a == b]", bio);
  r.at_most("cardinality sigma_b(a) = [a == b]", card);

  double rec = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Vec u = random_vector(rng, space.dimension());
    const Vec back = extend(restrict_to_points(ctx, u));
    rec = std::max(rec, space.norm(u - back) / space.norm(u));
  }
  r.at_most("reconstruction u = sum u(a) sigma_a, 20 random u", rec);

  const auto bumps = interior_bumps(space, 2);
  const auto lf = restrict_to_points(ctx, bumps[0]);
  const auto lg = restrict_to_points(ctx, bumps[1]);
  const double exact = integrate_product(bumps[0], bumps[1]);
  r.at_most("<lift f, lift g> = int f g for interior bumps",
            std::abs(scalar_product(lf, lg) - exact) /
                std::sqrt(integrate_product(bumps[0], bumps[0]) *
                          integrate_product(bumps[1], bumps[1])));
}

void reproducing(Recorder& r, const ContextPtr& ctx, std::mt19937_64& rng) {
  const auto& space = ctx->space();
  std::uniform_real_distribution<double> where(-space.beta(), space.beta());
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec v = random_vector(rng, space.dimension());
    const double q = where(rng);
    const double lhs = space.inner(delta_at(space, q), v);
    worst = std::max(worst, std::abs(lhs - space.value(v, q)) / space.norm(v));
  }
  r.at_most("int delta_q v = v(q), 100 random (v, q)", worst);
}

void pairing(Recorder& r, const ContextPtr& ctx, const RunConfig& config) {
  const double beta = ctx->beta();
  const auto f = cubic(beta);
  const auto h = PiecewisePolynomial::truncated_power(beta, 0.0, 0);
  const auto bumps = interior_bumps(ctx->space(), 3);
  std::size_t warnings = 0;
  for (std::size_t i = 0; i < bumps.size(); ++i) {
    const auto& b = bumps[i];
    const std::string tag = " (bump " + std::to_string(i) + ")";
    const auto pd = pair(ctx, dirac(beta, 0.0), b, config.d_max);
    const auto ph = pair(ctx, heaviside(beta, 0.0), b, config.d_max);
    const auto pc = pair(ctx, continuous(f, "cubic"), b, config.d_max);
    warnings += pd.warnings.size() + ph.warnings.size() + pc.warnings.size();
    r.at_most("dirac(0)[B] = B(0)" + tag, relative(pd.value, evaluate(b, 0.0)));
    r.at_most("heaviside(0)[B] = int_0^beta B" + tag,
              relative(ph.value, integrate_product(h, b)));
    r.at_most("cubic[B] = int f B" + tag,
              relative(pc.value, integrate_product(f, b)));
  }
  r.at_most("test-function precondition warnings",
            static_cast<double>(warnings), 0.0);
}

void diagram(Recorder& r, const ContextPtr& ctx, const RunConfig& config) {
  const double beta = ctx->beta();
  const std::vector<DistributionDescriptor> ts{
      continuous(cubic(beta), "cubic"), heaviside(beta, 0.0), dirac(beta, 0.0)};
  for (const auto& t : ts) {
    if (t.order + 1 > config.d_max) continue;
    const auto lhs = embed(ctx, distribution_derivative(t, config.d_max),
                           config.d_max).value;
    const auto rhs = derivative(embed(ctx, t, config.d_max).value);
    r.at_most("embed(dT) = D embed(T) for " + t.label,
              norm(lhs - rhs) / std::max(1.0, norm(lhs)));
  }
  const auto f = cubic(beta);
  const auto lhs = embed(ctx, distribution_derivative(continuous(f, "cubic"),
                                                      config.d_max),
                         config.d_max).value;
  const auto rhs = restrict_to_points(ctx, differentiate(f));
  r.at_most("embed(d cubic) = lift(cubic')",
            norm(lhs - rhs) / std::max(1.0, norm(rhs)), 1e-8);
}

void product(Recorder& r, const ContextPtr& ctx, const RunConfig& config,
             std::mt19937_64& rng) {
  const double beta = ctx->beta();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = 2.0 * u(rng), c = u(rng), d = u(rng);
    const double e = u(rng), m = beta * u(rng), s = 1.0 + std::abs(u(rng));
    const RealFunction f = [=](double x) { return a * std::sin(b * x + c) + d * x * x; };
    const RealFunction g = [=](double x) {
      return e * std::exp(-(x - m) * (x - m) / s) + x;
    };
    const auto ef = embed(ctx, continuous(beta, f), config.d_max).value;
    const auto eg = embed(ctx, continuous(beta, g), config.d_max).value;
    const auto efg = embed(ctx, continuous(beta, [=](double x) {
                             return f(x) * g(x);
                           }), config.d_max).value;
    worst = std::max(worst, (efg.values() - (ef * eg).values())
                                .cwiseAbs()
                                .maxCoeff());
  }
  r.at_most("Phi(fg) = Phi(f) Phi(g) bitwise, 20 random pairs", worst, 0.0);

  // The product of two space elements generally leaves the space, so the
  // extension of the pointwise product differs from the classical product.
  const double k0 = ctx->space().family().knots().empty()
                        ? 0.0
                        : ctx->space().family().knots().front();
  const auto w = PiecewisePolynomial::truncated_power(beta, k0, 3);
  const auto rw = restrict_to_points(ctx, w);
  const auto ext = extension_function(rw * rw);
  const auto ww = w * w;
  const auto diff = ext - ww;
  r.exceeds("extend(u v) != u v for u = v = (x - k0)_+^3",
            std::sqrt(integrate_product(diff, diff) / integrate_product(ww, ww)),
            1e-10);
}

void polynomial_kernel(Recorder& r, const ContextPtr& ctx,
                       const RunConfig& config, std::mt19937_64& rng) {
  const double beta = ctx->beta();
  const int p = ctx->space().family().polynomial_degree();
  for (int k = 0; k < p; ++k) {
    const auto u = restrict_to_points(ctx, monomial(beta, k));
    r.at_most("D^" + std::to_string(k + 1) + " x^" + std::to_string(k) + " = 0",
              norm(derivative(u, k + 1)));
  }
  auto alt = dirac(beta, 0.0);
  alt.order = 4;
  alt.representative = PiecewisePolynomial::truncated_power(beta, 0.0, 3, 1.0 / 6.0);
  if (alt.order <= config.d_max) {
    const auto e3 = embed(ctx, dirac(beta, 0.0), config.d_max).value;
    const auto e4 = embed(ctx, alt, config.d_max).value;
    r.at_most("Phi(dirac(0)) from x_+^2/2 (order 3) and x_+^3/6 (order 4)",
              norm(e3 - e4));
  }

  // Exact differentiation on the subfamily closed under d/dx.
  std::vector<PiecewisePolynomial> closed;
  for (int k = 1; k <= p; ++k) closed.push_back(monomial(beta, k));
  for (double knot : ctx->space().family().knots())
    for (int m : ctx->space().family().truncated_power_degrees())
      if (m >= 3) closed.push_back(PiecewisePolynomial::truncated_power(beta, knot, m));
  double worst = 0.0;
  for (const auto& f : closed) {
    const auto df = restrict_to_points(ctx, differentiate(f));
    const auto d = derivative(restrict_to_points(ctx, f));
    worst = std::max(worst, norm(d - df) / std::max(1e-300, norm(df)));
  }
  r.at_most("D restrict(f) = restrict(f') on polynomials and truncated powers "
            "of degree >= 3",
            worst, 1e-8);

  worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Vec u = random_vector(rng, ctx->dimension());
    const auto lhs = derivative(restrict_to_points(ctx, u));
    const auto rhs = restrict_to_points(ctx, Vec(ctx->coefficient_derivative() * u));
    worst = std::max(worst, norm(lhs - rhs) / std::max(1.0, norm(rhs)));
  }
  r.at_most("value-level D matches coefficient-level D, 20 random u", worst,
            1e-9);
}

void linearity(Recorder& r, const ContextPtr& ctx, const RunConfig& config) {
  const double beta = ctx->beta();
  const double one_two[] = {1.0, 2.0};
  const double x[] = {0.0, 1.0};
  const auto lin = continuous(PiecewisePolynomial::polynomial(beta, one_two), "1+2x");
  const auto id = continuous(PiecewisePolynomial::polynomial(beta, x), "x");
  const std::vector<std::pair<DistributionDescriptor, DistributionDescriptor>>
      pairs{{dirac(beta, 0.0), heaviside(beta, 0.0)},
            {dirac(beta, 0.0), lin},
            {heaviside(beta, 0.0), id},
            {id, id}};
  for (const auto& [t1, t2] : pairs) {
    if (std::max(t1.order, t2.order) > config.d_max) continue;
    const auto rep = linearity_check(ctx, t1, t2, config.d_max);
    const std::string tag = " for " + t1.label + ", " + t2.label;
    r.at_most("additivity" + tag, rep.additivity);
    for (const auto& [s, defect] : rep.homogeneity) {
      std::ostringstream os;
      os << "homogeneity r = " << s << tag;
      r.at_most(os.str(), defect, s == 0.0 ? 0.0 : r.tol());
    }
  }
  const auto ed = embed(ctx, dirac(beta, 0.0), config.d_max).value;
  const auto eh = embed(ctx, heaviside(beta, 0.0), config.d_max).value;
  r.exceeds("||Phi(dirac(0))|| > 0", norm(ed), 1e-6);
  r.exceeds("||Phi(heaviside(0))|| > 0", norm(eh), 1e-6);
  r.exceeds("Phi(dirac(0)) != Phi(heaviside(0))", norm(ed - eh), 1e-6);
}

void tiny_oracle(Recorder& r) {
  ContextOptions o;
  o.space.beta = 1.0;
  o.space.polynomial_degree = 1;
  o.space.knots.clear();
  o.space.truncated_power_degrees.clear();
  const auto ctx = Context::create(o);
  const auto& space = ctx->space();

  Eigen::Matrix2d gram;
  gram << 2.0, 0.0, 0.0, 2.0 / 3.0;
  r.at_most("gram = [[2, 0], [0, 2/3]]", (space.gram() - gram).cwiseAbs().maxCoeff());

  const double xs[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const Vec d0 = delta_at(space, 0.0);
  const auto& c = ctx->sigma().coefficients;
  double delta = 0.0, hats = 0.0;
  for (double x : xs) {
    delta = std::max(delta, std::abs(space.value(d0, x) - 0.5));
    hats = std::max(hats, std::abs(space.value(c.col(0), x) - (1.0 - x) / 2.0));
    hats = std::max(hats, std::abs(space.value(c.col(1), x) - (1.0 + x) / 2.0));
  }
  r.at_most("delta_0 = 1/2", delta);
  r.at_most("sigma_-1 = (1 - x)/2, sigma_1 = (1 + x)/2", hats);

  Eigen::Matrix2d eta;
  eta << 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0;
  r.at_most("eta_ab = [[2/3, 1/3], [1/3, 2/3]]",
            (ctx->eta().eta_ab - eta).cwiseAbs().maxCoeff());
  r.at_most("eta_a = (1, 1)", (ctx->eta().eta_a - Vec::Ones(2)).cwiseAbs().maxCoeff());

  const double lin_c[] = {1.0, 2.0};
  const double x_c[] = {0.0, 1.0};
  const auto lin = PiecewisePolynomial::polynomial(1.0, lin_c);
  const auto u = restrict_to_points(ctx, lin);
  r.at_most("restrict(1 + 2x) = (-1, 3)",
            std::max(std::abs(u[0] + 1.0), std::abs(u[1] - 3.0)));
  const auto ext = extend(u);
  double e = 0.0;
  for (double x : xs) e = std::max(e, std::abs(space.value(ext, x) - (1.0 + 2.0 * x)));
  r.at_most("extend((-1, 3)) = 1 + 2x", e);

  const RestrictedUltrafunction ones(ctx, Vec::Ones(2));
  const auto id = restrict_to_points(ctx, PiecewisePolynomial::polynomial(1.0, x_c));
  r.at_most("<(-1, 3), (1, 1)> = 2", std::abs(scalar_product(u, ones) - 2.0));
  r.at_most("<x, x> = 2/3", std::abs(scalar_product(id, id) - 2.0 / 3.0));
  r.at_most("integral((-1, 3)) = 2", std::abs(integral(u) - 2.0));
  r.at_most("bracket(1, x) = 2", std::abs(boundary_bracket(ones, id) - 2.0));
  const auto did = derivative(id);
  r.at_most("D x = (1, 1)", std::max(std::abs(did[0] - 1.0), std::abs(did[1] - 1.0)));
  const auto dplus = derivative(lift(ctx, [](double x) { return std::max(x, 0.0); }));
  r.at_most("D lift(x_+) = (1/2, 1/2)",
            std::max(std::abs(dplus[0] - 0.5), std::abs(dplus[1] - 0.5)));

  // Quadratics on three points give Simpson's weights.
  o.space.polynomial_degree = 2;
  o.required_points = {0.0};
  const auto quad = Context::create(o);
  Eigen::Vector3d simpson(1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0);
  r.at_most("three-point eta_a = (1/3, 4/3, 1/3)",
            (quad->eta().eta_a - simpson).cwiseAbs().maxCoeff());
  r.at_most("integral(lift x^2) = 2/3",
            std::abs(integral(lift(quad, [](double x) { return x * x; })) -
                     2.0 / 3.0));
}

void locality(Recorder& r, const ContextPtr& ctx, const RunConfig& config) {
  const double beta = ctx->beta();
  const auto bump = interior_bumps(ctx->space(), 1)[0];
  auto tb = continuous(bump, "bump");
  tb.support_lo = bump.breakpoints()[1];
  tb.support_hi = bump.breakpoints()[bump.breakpoints().size() - 2];
  r.at_most("leakage of the lift of an interior bump",
            embed(ctx, tb, config.d_max).leakage, 0.0);
  auto tent = continuous(beta, [](double x) { return std::max(0.0, 1.0 - x * x); },
                         "(1 - x^2)_+");
  tent.support_lo = -1.0;
  tent.support_hi = 1.0;
  r.at_most("leakage of the lift of (1 - x^2)_+", embed(ctx, tent, config.d_max).leakage,
            0.0);
  r.at_most("leakage of the sampled heaviside(0)",
            embed(ctx, heaviside_sampled(beta, 0.0, config.heaviside_jump_value),
                  config.d_max)
                .leakage,
            0.0);
  r.report("leakage of Phi(dirac(0)) (reported only)",
           embed(ctx, dirac(beta, 0.0), config.d_max).leakage);
  r.report("leakage of Phi(heaviside(0)) (reported only)",
           embed(ctx, heaviside(beta, 0.0), config.d_max).leakage);
}

}  // namespace

json to_json(const SuiteReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json j{{"name", c.name},
           {"defect", c.defect},
           {"passed", c.passed},
           {"comparison", c.comparison},
           {"asserted", c.asserted}};
    j["tolerance"] = std::isfinite(c.tolerance) ? json(c.tolerance) : json(nullptr);
    checks.push_back(std::move(j));
  }
  return json{{"suite", report.suite},
              {"seed", report.seed},
              {"passed", report.passed},
              {"checks", std::move(checks)}};
}

SuiteReport run_suite(const std::string& name, const ContextPtr& ctx,
                      const RunConfig& config, std::uint64_t seed) {
  if (!is_suite_name(name))
    throw Error(ErrorCode::Config, "unknown suite '" + name + "'");
  static const std::map<std::string, double> main_tolerance{
      {"leibniz", 1e-7},     {"dual-basis", 1e-8},        {"reproducing", 1e-8},
      {"pairing", 1e-6},     {"diagram", 1e-7},           {"product", 0.0},
      {"polynomial-kernel", 1e-7}, {"linearity", 1e-6},   {"tiny-oracle", 1e-12},
      {"locality", 0.0}};
  const auto start = std::chrono::steady_clock::now();
  Recorder r(config, name, main_tolerance.at(name));
  std::mt19937_64 rng(seed);
  try {
    if (name == "leibniz") leibniz(r, ctx, rng);
    else if (name == "dual-basis") dual_basis(r, ctx, rng);
    else if (name == "reproducing") reproducing(r, ctx, rng);
    else if (name == "pairing") pairing(r, ctx, config);
    else if (name == "diagram") diagram(r, ctx, config);
    else if (name == "product") product(r, ctx, config, rng);
    else if (name == "polynomial-kernel") polynomial_kernel(r, ctx, config, rng);
    else if (name == "linearity") linearity(r, ctx, config);
    else if (name == "tiny-oracle") tiny_oracle(r);
    else locality(r, ctx, config);
  } catch (const Error& e) {
    r.checks.push_back({std::string("error: ") + to_string(e.code()) + ": " +
                            e.what(),
                        kInf, 0.0, false, "<=", true});
  }
  SuiteReport out;
  out.suite = name;
  out.seed = seed;
  out.checks = std::move(r.checks);
  out.passed = !out.checks.empty();
  for (const auto& c : out.checks) out.passed = out.passed && c.passed;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace ultrafn
