#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ultrafn/config.hpp"

namespace ultrafn {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct CheckRecord {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// "<=" for ordinary checks, ">" for witnesses that must be nonzero.
  std::string comparison = "<=";
  /// Reported-only measurements pass unconditionally.
  bool asserted = true;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = kDefaultSeed;
  bool passed = false;
  std::vector<CheckRecord> checks;
  /// Kept out of the JSON so that reports are byte-identical across runs.
  double wall_seconds = 0.0;
};

json to_json(const SuiteReport& report);

/// Runs one suite on `ctx` (built from `config`). Library errors raised
/// inside the suite become a failed "error" record instead of propagating.
SuiteReport run_suite(const std::string& name, const ContextPtr& ctx,
                      const RunConfig& config,
                      std::uint64_t seed = kDefaultSeed);

}  // namespace ultrafn
