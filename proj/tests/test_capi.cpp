#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "ultrafn/ultrafn.h"

namespace {

struct Text {
  char* p = nullptr;
  ~Text() { uf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Ctx {
  uf_context* p = nullptr;
  ~Ctx() { uf_context_destroy(p); }
};

const char* kTiny =
    R"({"space": {"beta": 1, "polynomial_degree": 1, "knots": [],
        "truncated_power_degrees": []}, "anchors": []})";

}  // namespace

TEST_CASE("context creation and metadata") {
  Ctx c;
  REQUIRE(uf_context_create_default(&c.p) == UF_OK);
  CHECK(uf_context_dimension(c.p) == 34);
  CHECK(uf_context_beta(c.p) == 4.0);
  CHECK(std::string(uf_context_output_dir(c.p)) == "out");
  std::vector<double> pts(34);
  REQUIRE(uf_context_points(c.p, pts.data(), pts.size()) == UF_OK);
  CHECK(pts.front() == -4.0);
  CHECK(uf_context_points(c.p, pts.data(), 3) == UF_ERR_CONTEXT_MISMATCH);
}

TEST_CASE("bad configs map to status codes") {
  uf_context* c = nullptr;
  CHECK(uf_context_create(R"({"anchors": [7]})", &c) == UF_ERR_CONFIG);
  CHECK(c == nullptr);
  CHECK(std::string(uf_last_error()).find('7') != std::string::npos);
  CHECK(uf_context_create(nullptr, &c) == UF_ERR_INVALID_ARGUMENT);
  CHECK(uf_context_create("{}", nullptr) == UF_ERR_INVALID_ARGUMENT);
  CHECK(std::string(uf_status_name(UF_ERR_CONFIG)) == "config");
}

TEST_CASE("tiny context through the C interface") {
  Ctx c;
  REQUIRE(uf_context_create(kTiny, &c.p) == UF_OK);
  REQUIRE(uf_context_dimension(c.p) == 2);
  const double u[2] = {-1, 3}, one[2] = {1, 1}, x[2] = {-1, 1};
  double s = 0;
  REQUIRE(uf_scalar_product(c.p, u, one, 2, &s) == UF_OK);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  REQUIRE(uf_integral(c.p, u, 2, &s) == UF_OK);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  REQUIRE(uf_boundary_bracket(c.p, one, x, 2, &s) == UF_OK);
  CHECK(s == 2.0);
  double d[2];
  REQUIRE(uf_derivative(c.p, x, d, 2, 1) == UF_OK);
  CHECK(d[0] == doctest::Approx(1.0));
  CHECK(uf_derivative(c.p, x, d, 2, -1) == UF_ERR_CONFIG);
  double p[2];
  REQUIRE(uf_multiply(c.p, u, u, p, 2) == UF_OK);
  CHECK(p[1] == 9.0);
  CHECK(uf_multiply(c.p, u, u, p, 3) == UF_ERR_CONTEXT_MISMATCH);
  CHECK(uf_integral(nullptr, u, 2, &s) == UF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("CSV exports") {
  Ctx c;
  REQUIRE(uf_context_create(kTiny, &c.p) == UF_OK);
  const double u[2] = {-1, 3};
  Text t;
  REQUIRE(uf_extension_csv(c.p, u, 2, 3, &t.p) == UF_OK);
  CHECK(t.str() == "x,value\n-1,-1\n0,1\n1,3\n");
  Text z;
  const double zero[2] = {0, 0};
  REQUIRE(uf_extension_csv(c.p, zero, 2, 2, &z.p) == UF_OK);
  CHECK(z.str() == "x,value\n-1,0\n1,0\n");
  Text bad;
  CHECK(uf_extension_csv(c.p, u, 2, 1, &bad.p) == UF_ERR_CONFIG);
  Text sig;
  REQUIRE(uf_sigma_csv(c.p, 3, &sig.p) == UF_OK);
  CHECK(sig.str() == "x,sigma[-1],sigma[1]\n-1,1,0\n0,0.5,0.5\n1,0,1\n");
  Text delta;
  REQUIRE(uf_delta_csv(c.p, 0.0, 5, &delta.p) == UF_OK);
  std::istringstream rows(delta.str());
  std::string line;
  std::getline(rows, line);
  CHECK(line == "x,value");
  int n = 0;
  while (std::getline(rows, line)) {
    const double v = std::strtod(line.substr(line.find(',') + 1).c_str(), nullptr);
    CHECK(std::abs(v - 0.5) <= 1e-12);
    ++n;
  }
  CHECK(n == 5);
  Text outside;
  CHECK(uf_delta_csv(c.p, 2.0, 5, &outside.p) == UF_ERR_DOMAIN);
}

TEST_CASE("embedding and pairing through the C interface") {
  Ctx c;
  REQUIRE(uf_context_create_default(&c.p) == UF_OK);
  std::vector<double> v(34);
  double leak = -1;
  REQUIRE(uf_embed(c.p, R"({"kind": "dirac", "at": 0})", v.data(), v.size(), &leak) == UF_OK);
  CHECK(leak > 0.0);
  double value = 0;
  size_t warnings = 9;
  REQUIRE(uf_pair(c.p, R"({"kind": "dirac", "at": 0})", 0, &value, &warnings) == UF_OK);
  CHECK(value == doctest::Approx(0.55).epsilon(1e-6));
  CHECK(warnings == 0);
  CHECK(uf_pair(c.p, R"({"kind": "dirac", "at": 0})", 5, &value, nullptr) == UF_ERR_CONFIG);
  CHECK(uf_embed(c.p, "{oops", v.data(), v.size(), &leak) == UF_ERR_CONFIG);
  CHECK(uf_embed(c.p, R"({"kind": "dirac", "at": 0, "order": 9})", v.data(), v.size(),
                 &leak) == UF_ERR_ORDER);
  Text r;
  REQUIRE(uf_mul_report(c.p, R"({"kind": "dirac", "at": 0})",
                        R"({"kind": "heaviside", "at": 0})", &r.p) == UF_OK);
  CHECK(r.str().find("\"exploratory\": true") != std::string::npos);
}

TEST_CASE("suite plan and run") {
  Ctx c;
  REQUIRE(uf_context_create_default(&c.p) == UF_OK);
  Text plan;
  REQUIRE(uf_suite_plan(c.p, "all", &plan.p) == UF_OK);
  CHECK(plan.str().find("leibniz\n") != std::string::npos);
  Text bad;
  CHECK(uf_suite_plan(c.p, "nope", &bad.p) == UF_ERR_CONFIG);
  Text report;
  int passed = 0;
  REQUIRE(uf_run_suite(c.p, "reproducing", 42, &report.p, &passed) == UF_OK);
  CHECK(passed == 1);
  CHECK(report.str().find("\"seed\": 42") != std::string::npos);
}
