#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ultrafn/embedding.hpp"

namespace ultrafn {

using json = nlohmann::json;

struct RunConfig {
  SpaceConfig space;
  std::vector<double> anchors{0.0};
  std::vector<double> required_points;
  /// Suites run by `check --suite all`; every known suite when empty.
  std::vector<std::string> suites;
  std::string output_dir = "out";
  /// Per-suite override of the main tolerance.
  std::map<std::string, double> tolerances;
  int d_max = kDefaultMaxOrder;
  double heaviside_jump_value = 0.5;
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// Throws Config on unknown keys, wrong types, unknown suite names, or points
/// outside the interval.
RunConfig parse_run_config(const json& j);
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);
json to_json(const RunConfig& config);

ContextOptions context_options(const RunConfig& config);

json to_json(const PiecewisePolynomial& p);
PiecewisePolynomial ppoly_from_json(const json& j);

/// {"kind", "at", "order", "representative", "support", "label",
///  "coefficients"}; "coefficients" is the polynomial kind's shorthand for a
/// global polynomial. A heaviside with order 0 takes the sampled path.
DistributionDescriptor descriptor_from_json(const json& j, double beta,
                                            double jump_value = 0.5);
DistributionDescriptor load_descriptor(const std::string& path, double beta,
                                       double jump_value = 0.5);
json to_json(const DistributionDescriptor& t);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ultrafn
