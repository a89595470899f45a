#include "ultrafn/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ultrafn/error.hpp"

namespace ultrafn {

namespace {

void reject_unknown(const json& j, const char* what,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object())
    throw Error(ErrorCode::Config, std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known)
      throw Error(ErrorCode::Config,
                  "unknown key '" + key + "' in " + std::string(what));
  }
}

// Typed read with the key named in the error.
template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::Config, std::string("key '") + key +
                                       "' has the wrong type");
  }
}

void check_inside(double x, double beta, bool open, const char* what) {
  const bool ok = open ? (x > -beta && x < beta) : (x >= -beta && x <= beta);
  if (!ok) {
    std::ostringstream os;
    os << what << ' ' << x << " is not inside " << (open ? '(' : '[') << -beta
       << ", " << beta << (open ? ')' : ']');
    throw Error(ErrorCode::Config, os.str());
  }
}

SpaceConfig parse_space(const json& j) {
  reject_unknown(j, "space", {"beta", "polynomial_degree", "knots",
                              "truncated_power_degrees", "condition_cap"});
  SpaceConfig s;
  read(j, "beta", s.beta);
  read(j, "polynomial_degree", s.polynomial_degree);
  read(j, "knots", s.knots);
  read(j, "truncated_power_degrees", s.truncated_power_degrees);
  read(j, "condition_cap", s.condition_cap);
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "leibniz",  "dual-basis",        "reproducing", "pairing",
      "diagram",  "product",           "polynomial-kernel",
      "linearity", "tiny-oracle",      "locality"};
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

RunConfig parse_run_config(const json& j) {
  reject_unknown(j, "run config",
                 {"space", "anchors", "required_points", "suites",
                  "output_dir", "tolerances", "d_max", "heaviside_jump_value"});
  RunConfig c;
  if (j.contains("space")) c.space = parse_space(j.at("space"));
  read(j, "anchors", c.anchors);
  read(j, "required_points", c.required_points);
  read(j, "suites", c.suites);
  read(j, "output_dir", c.output_dir);
  read(j, "tolerances", c.tolerances);
  read(j, "d_max", c.d_max);
  read(j, "heaviside_jump_value", c.heaviside_jump_value);

  if (!(c.space.beta > 0.0))
    throw Error(ErrorCode::Config, "beta must be positive");
  for (double a : c.anchors) check_inside(a, c.space.beta, true, "anchor");
  for (double r : c.required_points)
    check_inside(r, c.space.beta, false, "required point");
  for (const auto& s : c.suites)
    if (!is_suite_name(s)) throw Error(ErrorCode::Config, "unknown suite '" + s + "'");
  for (const auto& [s, tol] : c.tolerances) {
    if (!is_suite_name(s))
      throw Error(ErrorCode::Config, "tolerance given for unknown suite '" + s + "'");
    if (!(tol >= 0.0))
      throw Error(ErrorCode::Config, "tolerance for '" + s + "' must be >= 0");
  }
  if (c.d_max < 0) throw Error(ErrorCode::Config, "d_max must be >= 0");
  if (c.output_dir.empty())
    throw Error(ErrorCode::Config, "output_dir must not be empty");
  return c;
}

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, std::string("config is not valid JSON: ") +
                                       e.what());
  }
  return parse_run_config(j);
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(read_text_file(path));
}

json to_json(const RunConfig& c) {
  return json{{"space",
               {{"beta", c.space.beta},
                {"polynomial_degree", c.space.polynomial_degree},
                {"knots", c.space.knots},
                {"truncated_power_degrees", c.space.truncated_power_degrees},
                {"condition_cap", c.space.condition_cap}}},
              {"anchors", c.anchors},
              {"required_points", c.required_points},
              {"suites", c.suites},
              {"output_dir", c.output_dir},
              {"tolerances", c.tolerances},
              {"d_max", c.d_max},
              {"heaviside_jump_value", c.heaviside_jump_value}};
}

ContextOptions context_options(const RunConfig& c) {
  ContextOptions o;
  o.space = c.space;
  o.anchors = c.anchors;
  o.required_points = c.required_points;
  return o;
}

json to_json(const PiecewisePolynomial& p) {
  return json{{"breakpoints", std::vector<double>(p.breakpoints().begin(),
                                                  p.breakpoints().end())},
              {"pieces", p.pieces()}};
}

PiecewisePolynomial ppoly_from_json(const json& j) {
  reject_unknown(j, "piecewise polynomial", {"breakpoints", "pieces"});
  if (!j.contains("breakpoints") || !j.contains("pieces"))
    throw Error(ErrorCode::Config,
                "piecewise polynomial needs 'breakpoints' and 'pieces'");
  std::vector<double> bp;
  std::vector<std::vector<double>> pieces;
  read(j, "breakpoints", bp);
  read(j, "pieces", pieces);
  return PiecewisePolynomial(std::move(bp), std::move(pieces));
}

DistributionDescriptor descriptor_from_json(const json& j, double beta,
                                            double jump_value) {
  reject_unknown(j, "descriptor", {"kind", "at", "order", "representative",
                                   "support", "label", "coefficients"});
  std::string kind;
  read(j, "kind", kind);
  auto need_at = [&] {
    if (!j.contains("at"))
      throw Error(ErrorCode::Config, "descriptor kind '" + kind + "' needs 'at'");
    double q = 0.0;
    read(j, "at", q);
    return q;
  };
  DistributionDescriptor t;
  if (kind == "dirac") {
    t = dirac(beta, need_at());
  } else if (kind == "heaviside") {
    const double q = need_at();
    int order = 2;
    read(j, "order", order);
    t = order == 0 ? heaviside_sampled(beta, q, jump_value) : heaviside(beta, q);
  } else if (kind == "polynomial") {
    std::vector<double> c;
    read(j, "coefficients", c);
    if (c.empty() && !j.contains("representative"))
      throw Error(ErrorCode::Config,
                  "polynomial descriptor needs 'coefficients' or 'representative'");
    t = polynomial(beta, c);
  } else if (kind == "continuous" || kind == "custom") {
    if (!j.contains("representative"))
      throw Error(ErrorCode::Config,
                  "descriptor kind '" + kind + "' needs 'representative'");
    t = continuous(PiecewisePolynomial::zero(beta), kind);
    if (kind == "custom") t.kind = DistributionKind::Custom;
  } else {
    throw Error(ErrorCode::Config, "unknown descriptor kind '" + kind + "'");
  }
  if (j.contains("representative")) {
    auto phi = ppoly_from_json(j.at("representative"));
    if (std::abs(phi.beta() - beta) > 1e-12 * beta)
      throw Error(ErrorCode::Config,
                  "representative is not defined on [-beta, beta]");
    t.representative = std::move(phi);
    t.sampler = {};
  }
  if (kind != "heaviside") read(j, "order", t.order);
  if (j.contains("support")) {
    std::vector<double> s;
    read(j, "support", s);
    if (s.size() != 2 || !(s[0] <= s[1]) || s[0] < -beta || s[1] > beta)
      throw Error(ErrorCode::Config,
                  "'support' must be [a, b] with -beta <= a <= b <= beta");
    t.support_lo = s[0];
    t.support_hi = s[1];
  }
  read(j, "label", t.label);
  return t;
}

DistributionDescriptor load_descriptor(const std::string& path, double beta,
                                       double jump_value) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config,
                "descriptor " + path + " is not valid JSON: " + e.what());
  }
  return descriptor_from_json(j, beta, jump_value);
}

json to_json(const DistributionDescriptor& t) {
  json j{{"kind", to_string(t.kind)},
         {"order", t.order},
         {"support", {t.support_lo, t.support_hi}},
         {"label", t.label}};
  if (t.at) j["at"] = *t.at;
  if (t.representative) j["representative"] = to_json(*t.representative);
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush())
    throw Error(ErrorCode::Io, "cannot write " + path);
}

}  // namespace ultrafn
