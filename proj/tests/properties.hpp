#pragma once

#include <functional>
#include <string>
#include <vector>

namespace bcrate::props {

struct PropertyResult {
  std::string id;
  std::string what;
  int cases = 0;
  /// Exhaustive over a finite family rather than sampled.
  bool exhaustive = false;
  std::vector<std::string> failures;
  double runtime_ms = 0;

  bool pass() const { return failures.empty() && cases > 0; }
};

struct Property {
  std::string id;
  std::string what;
  std::function<PropertyResult()> run;
};

/// Parts a..j of the invariant suite, in order.
const std::vector<Property>& properties();

PropertyResult run_property(const std::string& id);

}  // namespace bcrate::props
