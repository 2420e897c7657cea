#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "bcrate/codes.hpp"
#include "bcrate/hierarchy.hpp"
#include "bcrate/instance.hpp"

namespace bcrate {

/// What a bound says about β.
enum class BoundKind { kLower, kUpper, kNeither };
std::string to_string(BoundKind kind);

struct BoundEntry {
  std::string name;
  Rational value;
  BoundKind kind = BoundKind::kNeither;
  /// Short human-readable witness (sequence, cover size, scheme and verification mode).
  std::string witness;
  double runtime_ms = 0;
  std::string provenance;
};

struct ReportOptions {
  std::vector<int> levels;
  bool alpha = false;
  bool psi_f = false;
  bool chibar_f = false;
  bool chibar = false;
  bool minrk2 = false;
  /// Build and verify the code of every computed cover or representation, plus the two-symbol code
  /// when β = 2.
  bool codes = false;
  /// --all: every bound above plus levels 1 and 2; caps hit by optional items become notes.
  bool all = false;
  /// Symmetry for the hierarchy LPs: "none", "auto", "cyclic", "cyclicN". A group already set in
  /// `hierarchy.symmetry` wins and this string only labels it.
  std::string symmetry = "none";
  int minrk_free_entries = 26;
  HierarchyOptions hierarchy;
  VerifyOptions verify;
  /// Include runtime_ms fields; off keeps the report byte-deterministic.
  bool timings = false;
};

struct BoundReport {
  std::string instance;
  int messages = 0;
  int receivers = 0;
  bool graph = false;
  std::vector<BoundEntry> bounds;
  std::optional<Rational> best_lower;
  std::optional<Rational> best_upper;
  /// "β(name) = p/q exact" and flags such as levels above β.
  std::vector<std::string> verdicts;
  std::vector<std::string> notes;
  bool timings = false;
};

/// Throws ResourceCapError for explicitly requested items that hit a cap.
BoundReport build_report(const std::string& name, const LoadedInstance& loaded, const ReportOptions& options);

nlohmann::json to_json(const BoundReport& report);
std::string to_csv(const BoundReport& report);
/// Aligned table; decimals are marked approximate with a leading "~".
std::string to_table(const BoundReport& report);

}  // namespace bcrate
