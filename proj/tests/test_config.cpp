#include <doctest.h>

#include "ultrafn/config.hpp"
#include "ultrafn/error.hpp"
#include "ultrafn/suites.hpp"

using namespace ultrafn;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    (void)parse_run_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("accepted: " << text);
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
  const auto c = parse_run_config(std::string("{}"));
  CHECK(c.space.beta == 4.0);
  CHECK(c.space.polynomial_degree == 5);
  CHECK(c.anchors == std::vector<double>{0.0});
  CHECK(c.d_max == 6);
  CHECK(c.output_dir == "out");
  CHECK(Context::create(context_options(c))->dimension() == 34);
}

TEST_CASE("config round trip") {
  const auto c = parse_run_config(
      std::string(R"({"space": {"beta": 2, "polynomial_degree": 3, "knots": [-1, 1],
          "truncated_power_degrees": [2, 3]}, "anchors": [0.5],
          "suites": ["leibniz"], "tolerances": {"leibniz": 1e-6}})"));
  const auto again = parse_run_config(to_json(c));
  CHECK(to_json(again) == to_json(c));
  CHECK(again.tolerances.at("leibniz") == 1e-6);
}

TEST_CASE("config rejections") {
  CHECK(parse_code(R"({"anchors": [5]})") == ErrorCode::Config);
  CHECK(parse_code(R"({"anchors": [4]})") == ErrorCode::Config);
  CHECK(parse_code(R"({"required_points": [-4.5]})") == ErrorCode::Config);
  CHECK(parse_code(R"({"colour": 1})") == ErrorCode::Config);
  CHECK(parse_code(R"({"space": {"bta": 1}})") == ErrorCode::Config);
  CHECK(parse_code(R"({"suites": ["nope"]})") == ErrorCode::Config);
  CHECK(parse_code(R"({"tolerances": {"nope": 1}})") == ErrorCode::Config);
  CHECK(parse_code(R"({"space": {"beta": -1}})") == ErrorCode::Config);
  CHECK(parse_code("{not json") == ErrorCode::Config);
}

TEST_CASE("the anchor message names the anchor") {
  try {
    (void)parse_run_config(std::string(R"({"anchors": [5]})"));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find('5') != std::string::npos);
  }
}

TEST_CASE("descriptor JSON") {
  const auto d = descriptor_from_json(json::parse(R"({"kind": "dirac", "at": 0})"), 4.0);
  CHECK(d.order == 3);
  const auto h = descriptor_from_json(
      json::parse(R"({"kind": "heaviside", "at": 0, "order": 0})"), 4.0, 0.25);
  CHECK(h.order == 0);
  CHECK(h.evaluator()(0.0) == 0.25);
  const auto p = descriptor_from_json(
      json::parse(R"({"kind": "polynomial", "coefficients": [1, 2]})"), 4.0);
  CHECK(p.evaluator()(1.0) == 3.0);
  const auto back = descriptor_from_json(to_json(d), 4.0);
  CHECK(back.order == d.order);
  CHECK(to_json(back) == to_json(d));
  CHECK_THROWS_AS(descriptor_from_json(json::parse(R"({"kind": "dirac", "at": 9})"), 4.0),
                  Error);
  CHECK_THROWS_AS(descriptor_from_json(json::parse(R"({"kind": "custom"})"), 4.0), Error);
  CHECK_THROWS_AS(descriptor_from_json(json::parse(R"({"kind": "dirac", "x": 0})"), 4.0),
                  Error);
}

TEST_CASE("suites pass on the default space and are deterministic") {
  const auto config = parse_run_config(std::string("{}"));
  const auto ctx = Context::create(context_options(config));
  for (const auto& name : suite_names()) {
    const auto a = run_suite(name, ctx, config, kDefaultSeed);
    const auto b = run_suite(name, ctx, config, kDefaultSeed);
    CHECK_MESSAGE(a.passed, name);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(a.seed == kDefaultSeed);
  }
}

TEST_CASE("an impossible tolerance fails the suite") {
  const auto config =
      parse_run_config(std::string(R"({"tolerances": {"leibniz": 1e-30}})"));
  const auto ctx = Context::create(context_options(config));
  CHECK_FALSE(run_suite("leibniz", ctx, config, kDefaultSeed).passed);
}
