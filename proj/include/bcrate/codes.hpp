#pragma once

#include <json.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "bcrate/combinatorics.hpp"
#include "bcrate/instance.hpp"
#include "bcrate/linalg.hpp"

namespace bcrate {

/// Receiver j recovers its d symbols as matrix · [broadcast ; symbols of the known messages].
struct LinearDecoder {
  int receiver = 0;
  /// Messages whose symbols the decoder reads, in increasing order (a subset of N(j)).
  std::vector<int> known;
  FieldMatrix matrix;
  /// False when some wanted symbol is outside the span available to the receiver (its row is zero).
  bool complete = true;
};

/// Linear index code over F_p. Every message is d field symbols; the broadcast is encoder · x where x
/// stacks the messages (symbol t of message i sits at column i·d + t).
struct CodeScheme {
  std::string name;
  int field = 2;
  int message_count = 0;
  int symbols_per_message = 1;
  FieldMatrix encoder;
  std::vector<LinearDecoder> decoders;
  /// Broadcast symbols per message symbol.
  Rational rate;

  int broadcast_symbols() const { return static_cast<int>(encoder.size()); }
};

/// Solves for each receiver's decoder; receivers that cannot decode get `complete = false`.
void attach_decoders(const Instance& inst, CodeScheme& scheme);

/// Dimension and rate consistency problems, or empty.
std::vector<std::string> check_scheme(const Instance& inst, const CodeScheme& scheme);

/// Wraps an explicit encoder (rows over F_p, width n·d) and derives the decoders.
CodeScheme linear_code(const Instance& inst, std::string name, int field, int symbols_per_message, FieldMatrix encoder);

/// One XOR per clique. Throws std::invalid_argument unless the sets are cliques covering V.
CodeScheme clique_cover_code(const Graph& g, const std::vector<std::vector<int>>& cliques);

/// q bits per message and p broadcast bits where p/q is the cover weight. Unit rates only.
CodeScheme strong_cover_code(const Instance& inst, const FractionalCover& cover);

/// d field symbols per message, one Vandermonde-weighted sum per hyperclique copy. Unit rates only.
CodeScheme mds_weak_cover_code(const Instance& inst, const FractionalCover& cover);

/// Broadcasts a row basis of B·x for a representation B over F_p.
CodeScheme minrk_code(const Graph& g, const Representation& rep);

enum class VerifyMode { kAuto, kExhaustive, kRandomized };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::kAuto;
  std::int64_t trials = 100'000;
  std::uint64_t seed = 1;
  /// Exhaustive runs are allowed up to this many message vectors.
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 24;
};

struct DecodingFailure {
  std::vector<int> message;
  int receiver = 0;
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::kExhaustive;
  std::uint64_t vectors = 0;
  std::uint64_t seed = 0;
  std::uint64_t failure_count = 0;
  /// First few counterexamples.
  std::vector<DecodingFailure> failures;
  bool pass = false;
  /// Set for randomized runs: the result is evidence, not proof.
  std::string warning;
};

std::string to_string(VerifyMode mode);

/// Simulates every receiver's decoder against the encoder. Auto picks exhaustive when p^(n·d) fits
/// under the cap. Throws ResourceCapError("exhaustive-vectors") when exhaustive is forced past the cap.
VerificationReport verify_code(const Instance& inst, const CodeScheme& scheme, const VerifyOptions& options = {});

nlohmann::json to_json(const CodeScheme& scheme);
nlohmann::json to_json(const VerificationReport& report);

}  // namespace bcrate
