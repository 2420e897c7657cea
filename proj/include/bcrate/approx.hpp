#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcrate/combinatorics.hpp"
#include "bcrate/instance.hpp"
#include "bcrate/rational.hpp"

namespace bcrate {

enum class SamplingMode { kExact, kMonteCarlo };
std::string to_string(SamplingMode mode);

struct ApproxOptions {
  /// Prefix-set weights are enumerated exactly up to this many messages, sampled above it.
  int exact_limit = 20;
  bool force_monte_carlo = false;
  std::uint64_t seed = 1;
  /// Initial permutation sample count in Monte-Carlo mode (doubled on a coverage failure).
  std::int64_t samples = 20'000;
};

struct LowDegreeCover {
  FractionalCover cover;  // weak, unit coverage
  int d = 0;
  /// 4d+2 in exact mode; inflated by 11/10 in Monte-Carlo mode.
  Rational bound;
  SamplingMode mode = SamplingMode::kExact;
  std::int64_t samples = 0;
};

/// Weak cover from the random permutation prefix construction. Needs |S(j)| + d >= n for every
/// receiver; throws std::invalid_argument naming the first receiver that fails. Coverage is 1 per
/// receiver regardless of rates.
LowDegreeCover low_degree_cover(const Instance& inst, int d, const ApproxOptions& options = {});

/// Either an expanding sequence of size k+1 or a weak cover (unit coverage) of weight at most `bound`.
struct ApproxOutcome {
  int k = 1;
  std::optional<ExpandingSequence> sequence;
  std::optional<FractionalCover> cover;
  /// Upper end of a rational enclosure of 6k·n^(1-1/k).
  Rational bound;
  SamplingMode mode = SamplingMode::kExact;
};

ApproxOutcome find_expanding_or_cover(const Instance& inst, int k, const ApproxOptions& options = {});

/// Independent re-check of an outcome (sequence size and expansion, cover validity and weight).
std::vector<std::string> check_outcome(const Instance& inst, const ApproxOutcome& outcome);

/// One dyadic rate class 2^-s < r_i <= 2^(1-s).
struct TauClass {
  int s = 1;
  std::vector<int> messages;
  /// Smallest k for which no expanding sequence of size k+1 was found; 0 when capped.
  int k = 0;
  bool capped = false;
  /// 2^-s · 12k · n^(1-1/k) (upper enclosure); absent when capped.
  std::optional<Rational> cover_term;
  /// 2^-s · 2|V_s|.
  Rational trivial_term;
  Rational term;
  /// Longest sequence found in the class, in original receiver indices.
  std::vector<int> sequence;
};

struct TauCertificate {
  std::vector<TauClass> classes;
  Rational tau;
  /// Explicit weak cover of the instance with its own rates; total <= tau.
  FractionalCover cover;
  /// Enclosure of n(2 log log n + 24)/log n with base-2 logs; absent for n < 4.
  std::optional<Enclosure> ratio_bound;
  /// n < 4: tau = min(Σ r_i, ψ_f) computed exactly instead of the dyadic sum.
  bool small_n_fallback = false;
  int k_cap = 0;
  SamplingMode mode = SamplingMode::kExact;
  std::uint64_t seed = 0;
  /// Factor the rates were divided by when some exceeded 1; tau and the cover are in the units of
  /// the instance that was passed in.
  Rational rate_scale = 1;
};

TauCertificate tau(const Instance& inst, const ApproxOptions& options = {});

std::vector<std::string> check_tau(const Instance& inst, const TauCertificate& cert);

struct ApproxBeta {
  Rational lower;
  ExpandingSequence lower_witness;
  Rational upper;
  TauCertificate certificate;
};

/// lower = heaviest expanding sequence found (greedy or during the tau search), upper = tau.
ApproxBeta approximate_beta(const Instance& inst, const ApproxOptions& options = {});

}  // namespace bcrate
