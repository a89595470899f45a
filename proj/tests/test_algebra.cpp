#include <doctest.h>

#include <cmath>
#include <random>

#include "tiny.hpp"
#include "ultrafn/error.hpp"

using namespace ultrafn;
using doctest::Approx;

TEST_CASE("restrict and extend on the two-point context") {
  const auto ctx = tiny_context();
  const auto f = PiecewisePolynomial::polynomial(1.0, std::vector<double>{1, 2});
  const auto u = restrict_to_points(ctx, f);
  CHECK(u[0] == Approx(-1.0));
  CHECK(u[1] == Approx(3.0));
  const auto z = restrict_to_points(ctx, PiecewisePolynomial::zero(1.0));
  CHECK(z.values().isZero());
  const auto e = extension_function(values(ctx, {-1, 3}));
  for (double x : {-1.0, 0.0, 0.5})
    CHECK(evaluate(e, x) == Approx(1 + 2 * x).epsilon(1e-14).scale(1.0));
  const auto back = restrict_to_points(ctx, extend(values(ctx, {-1, 3})));
  CHECK(back[0] == Approx(-1.0).epsilon(1e-15));
  CHECK(back[1] == Approx(3.0).epsilon(1e-15));
}

TEST_CASE("pointwise operations") {
  const auto ctx = tiny_context();
  const auto u = values(ctx, {-1, 3});
  const auto one = values(ctx, {1, 1});
  CHECK((u * one).values() == u.values());
  CHECK((u * u).values() == Eigen::Vector2d(1, 9));
  CHECK((u + one).values() == Eigen::Vector2d(0, 4));
  CHECK((2.0 * u).values() == Eigen::Vector2d(-2, 6));
}

TEST_CASE("mixing contexts is an error") {
  const auto a = tiny_context();
  const auto b = tiny_context();
  try {
    (void)(values(a, {1, 1}) + values(b, {1, 1}));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ContextMismatch);
  }
}

TEST_CASE("scalar product, integral and bracket") {
  const auto ctx = tiny_context();
  const auto u = values(ctx, {-1, 3});
  const auto one = values(ctx, {1, 1});
  const auto x = values(ctx, {-1, 1});
  CHECK(scalar_product(u, one) == Approx(2.0).epsilon(1e-14));
  CHECK(scalar_product(x, x) == Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(scalar_product(u, u) > 0.0);
  CHECK(integral(one) == Approx(2.0).epsilon(1e-14));
  CHECK(integral(u) == Approx(2.0).epsilon(1e-14));
  CHECK(boundary_bracket(one, x) == Approx(2.0));
  CHECK(boundary_bracket(x, one) == boundary_bracket(one, x));
  CHECK(boundary_bracket(values(ctx, {0, 0}), x) == 0.0);
}

TEST_CASE("simpson weights integrate x^2") {
  const auto ctx = tiny_context(2, {0.0});
  const auto u = lift(ctx, [](double x) { return x * x; });
  CHECK(integral(u) == Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("restricted derivative on the two-point context") {
  const auto ctx = tiny_context();
  const auto dx = derivative(values(ctx, {-1, 1}));
  CHECK(dx[0] == Approx(1.0).epsilon(1e-14));
  CHECK(dx[1] == Approx(1.0).epsilon(1e-14));
  const auto dc = derivative(values(ctx, {2.5, 2.5}));
  CHECK(std::abs(dc[0]) <= 1e-14);
  CHECK(std::abs(dc[1]) <= 1e-14);
  const auto dk = derivative(lift(ctx, [](double x) { return std::max(x, 0.0); }));
  CHECK(dk[0] == Approx(0.5).epsilon(1e-14));
  CHECK(dk[1] == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("lift samples and names the failing point") {
  const auto ctx = tiny_context();
  const auto l = lift(ctx, [](double x) { return x * x; });
  CHECK(l.values() == Eigen::Vector2d(1, 1));
  const auto f = PiecewisePolynomial::polynomial(1.0, std::vector<double>{1, 2});
  CHECK(lift(ctx, [&](double x) { return evaluate(f, x); }).values() ==
        restrict_to_points(ctx, f).values());
  const auto c3 = tiny_context(2, {0.0});
  const auto sg = lift(c3, [](double x) { return x > 0 ? 1.0 : x < 0 ? -1.0 : 0.0; });
  CHECK(sg.values() == Eigen::Vector3d(-1, 0, 1));
  try {
    (void)lift(ctx, [](double x) { return 1.0 / (x - 1.0) + std::log(x); });
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Lift);
    CHECK(std::string(e.what()).find("-1") != std::string::npos);
  }
}

TEST_CASE("weak Leibniz on the default space") {
  ContextOptions o;
  o.anchors = {0.0};
  const auto ctx = Context::create(o);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> r(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd a(34), b(34);
    for (int i = 0; i < 34; ++i) { a(i) = r(rng); b(i) = r(rng); }
    const RestrictedUltrafunction u(ctx, a), v(ctx, b);
    const double lhs = scalar_product(derivative(u), v) + scalar_product(u, derivative(v));
    CHECK(std::abs(lhs - boundary_bracket(u, v)) <= 1e-7 * norm(u) * norm(v));
  }
}

TEST_CASE("derivative of restricted space elements with in-space derivative") {
  ContextOptions o;
  o.anchors = {0.0};
  const auto ctx = Context::create(o);
  const auto f = PiecewisePolynomial::truncated_power(4.0, 1.0, 4) +
                 PiecewisePolynomial::polynomial(4.0, std::vector<double>{0.5, -1, 0, 0.1});
  const auto got = derivative(restrict_to_points(ctx, f));
  const auto want = restrict_to_points(ctx, differentiate(f));
  CHECK((got.values() - want.values()).norm() <= 1e-9 * want.values().norm());
}
