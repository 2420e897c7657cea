#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace bcrate {

enum class SuiteScale { kQuick, kFull };

struct ClaimCheck {
  std::string what;
  bool pass = false;
};

/// One reproduced finite claim: every check is an exact comparison or a verified construction.
struct ClaimResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<ClaimCheck> checks;
  /// Set when the claim threw (cap hit, bad input); the claim then fails.
  std::string error;
  double runtime_ms = 0;
};

/// Claim ids in report order.
std::vector<int> claim_ids();

/// Throws std::invalid_argument for unknown ids.
ClaimResult run_claim(int id, SuiteScale scale);

/// Runs the claims on `workers` threads (0: BCRATE_WORKERS, else hardware concurrency) and returns
/// them in id order.
std::vector<ClaimResult> paper_suite(SuiteScale scale, int workers = 0);

nlohmann::json to_json(const ClaimResult& claim);

}  // namespace bcrate
