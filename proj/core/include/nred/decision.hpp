#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "nred/bit_matrix.hpp"
#include "nred/model.hpp"
#include "nred/relation.hpp"
#include "nred/verdict.hpp"

namespace nred {

/// A binary relation over a fixed, sorted action alphabet.
struct ActionRelation {
  std::vector<std::string> alphabet;
  BitMatrix m;

  bool contains(const std::string& a, const std::string& b) const;
  std::vector<ActionPair> pairs() const;
  std::size_t size() const { return m.count(); }
};

struct DecisionOptions {
  /// Refuse (NotApplicable) instead of abstracting lock and sync-point edges.
  bool strict_locks = false;
};

/// ⪯: (a,b) when some trace of t contains a and later b (or a = b).
ActionRelation program_order(const ThreadTemplate& t);

/// at: (a,b) when some body trace contains b and later a.
ActionRelation at_relation(const AtomicFusion& f);

/// ↣ = C ∘ ((⪯ ∪ at) ∘ C)⁺ over the named alphabet of t, C = Σ² ∖ I.
ActionRelation escape_relation(const ThreadTemplate& t, const AtomicFusion& f,
                               const CommutativityRelation& i);

/// Is every interleaving of t covered by one where the blocks of f run
/// atomically? Throws InconsistentInputs when the fusion is not over t.
Verdict check_atomic_fusion(const ThreadTemplate& t, const AtomicFusion& f,
                            const CommutativityRelation& i, const DecisionOptions& opts = {});

inline constexpr std::uint64_t kInfinity = std::numeric_limits<std::uint64_t>::max();

struct PhaseBound {
  std::uint64_t min_count = 0;
  std::uint64_t max_count = 0;  // kInfinity when pumpable
};

using PhaseBounds = std::map<std::string, PhaseBound>;

/// Fewest sync-points before an occurrence of a. Throws ActionUnreachable.
std::uint64_t min_barrier_count(const ThreadTemplate& g, const std::string& a);
/// Most sync-points before an occurrence of a, or kInfinity.
std::uint64_t max_barrier_count(const ThreadTemplate& g, const std::string& a);
/// Both counts for every named action on some init→exit path.
PhaseBounds phase_bounds(const ThreadTemplate& g);

/// ⊴ = {(a,b) | min•(a) < max•(b)}.
ActionRelation phase_order(const ThreadTemplate& g);

Verdict check_sync_instrumentation(const SyncPointInstrumentation& inst,
                                   const CommutativityRelation& i,
                                   const DecisionOptions& opts = {});

/// Ĩ over the fused alphabet: a block symbol commutes with x when every body
/// action does.
CommutativityRelation lift_commutativity(const CommutativityRelation& i, const AtomicFusion& f);

Verdict check_natural_reduction(const ThreadTemplate& t, const NaturalReductionSpec& spec,
                                const CommutativityRelation& i,
                                const DecisionOptions& opts = {});

}  // namespace nred
