// One line per acceptance criterion. A criterion passes when every check holds and it finishes
// inside its time limit. Exit status is the number of failed criteria.
#include <chrono>
#include <cstdio>
#include <map>
#include <string>

#include "bcrate/suite.hpp"
#include "properties.hpp"

namespace {

// Wall-clock limits in seconds.
const std::map<int, double> kLimits = {{1, 5}, {2, 120}, {3, 60}, {4, 1}, {5, 30}, {6, 120},
                                       {7, 600 + 2 * 1800}, {8, 30}, {9, 30}, {10, 1200}, {11, 60}};

void line(int id, bool pass, double seconds, const std::string& detail) {
  std::printf("criterion %2d: %s  %.2fs / limit %.0fs  %s\n", id, pass ? "PASS" : "FAIL", seconds, kLimits.at(id), detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  int failed = 0;
  for (int id : bcrate::claim_ids()) {
    if (id == 11) break;
    const auto claim = bcrate::run_claim(id, bcrate::SuiteScale::kFull);
    const double seconds = claim.runtime_ms / 1000;
    const bool pass = claim.pass && seconds <= kLimits.at(id);
    std::string detail = claim.title;
    if (!claim.error.empty()) detail += " [error: " + claim.error + "]";
    for (const auto& c : claim.checks) {
      if (!c.pass) detail += " [failed: " + c.what + "]";
    }
    line(id, pass, seconds, detail);
    failed += !pass;
  }

  const auto start = std::chrono::steady_clock::now();
  bool props_pass = true;
  std::string detail;
  for (const auto& p : bcrate::props::properties()) {
    const auto res = p.run();
    const bool ok = res.pass() && (res.exhaustive || res.cases >= 200);
    props_pass = props_pass && ok;
    detail += "(" + res.id + ")" + (ok ? "ok" : "FAIL") + ":" + std::to_string(res.cases) + " ";
    for (const auto& f : res.failures) std::printf("  property %s: %s\n", res.id.c_str(), f.c_str());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  props_pass = props_pass && seconds <= kLimits.at(10);
  line(10, props_pass, seconds, "property suites " + detail);
  failed += !props_pass;

  const auto claim = bcrate::run_claim(11, bcrate::SuiteScale::kFull);
  const double s11 = claim.runtime_ms / 1000;
  const bool pass11 = claim.pass && s11 <= kLimits.at(11);
  line(11, pass11, s11, claim.title + (claim.error.empty() ? "" : " [error: " + claim.error + "]"));
  failed += !pass11;

  std::printf("%d of 11 criteria failed\n", failed);
  return failed;
}
