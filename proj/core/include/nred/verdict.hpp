#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nred/trace.hpp"

namespace nred {

enum class Outcome { sound, unsound, inconclusive, not_applicable };

const char* to_string(Outcome o);

/// Unsound atomic fusion: a body trace z1…zm of `block` with z_i ↣ z_j.
struct AtomicWitness {
  std::string block;
  std::vector<std::string> scc_first;   // actions on the edges of S1
  std::vector<std::string> scc_second;  // actions on the edges of S2
  /// z_i, a1, b1, …, ap, bp, z_j
  std::vector<std::string> chain;
  /// Relation used between consecutive chain entries: "conflict", "po" or "at".
  std::vector<std::string> steps;
  std::vector<std::string> body_trace;
  std::size_t i = 0;  // 1-based positions in body_trace
  std::size_t j = 0;
  /// Interleaving of the original program without a fused representative.
  IndexedTrace interleaving;
  std::uint32_t threads = 0;
};

/// Unsound sync-point instrumentation: (a,b) in the phase order with
/// (b,a) ∉ I, plus paths ρ1·a and ρ2·b through the instrumented template.
struct SyncWitness {
  std::string a, b;
  std::vector<std::string> path_a, path_b;  // labels, • included
  std::uint64_t count_a = 0;                // |ρ1|_•
  std::uint64_t count_b = 0;                // |ρ2|_•
};

/// Oracle counterexample: an interleaving with no representative.
struct TraceWitness {
  IndexedTrace trace;
};

using Witness = std::variant<AtomicWitness, SyncWitness, TraceWitness>;

struct Condition {
  std::string name;
  Outcome outcome = Outcome::sound;
  std::string note;
};

inline constexpr const char* kCertificateExact = "exact";
inline constexpr const char* kCertificateAbstract = "sound-only under abstraction";
inline constexpr const char* kCertificateBounded = "within bounds";

struct Verdict {
  Outcome result = Outcome::sound;
  std::optional<Witness> witness;
  std::vector<Condition> checked_conditions;
  std::string certificate = kCertificateExact;
  std::vector<std::string> warnings;
  std::optional<Bounds> bounds;

  bool sound() const { return result == Outcome::sound; }
  bool unsound() const { return result == Outcome::unsound; }
};

}  // namespace nred
