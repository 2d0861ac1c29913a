#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nred/model.hpp"
#include "nred/relation.hpp"
#include "nred/trace.hpp"
#include "nred/verdict.hpp"

namespace nred {

enum class Tri { yes, no, unknown };

const char* to_string(Tri t);

/// Lock predicate: per lock, complete ⟨acq:i⟩⟨rel:i⟩ pairs by single
/// threads, optionally ending in one unmatched acquire.
bool lock_feasible(const IndexedTrace& tr);

/// Sync-point predicate: the inductive definition over shrinking thread sets,
/// a rendezvous being any permutation of the current set's • steps. The
/// outermost set is the set of indices occurring in `tr`.
bool barrier_feasible(const IndexedTrace& tr);

struct CoverResult {
  Tri result = Tri::no;
  std::uint64_t states = 0;  // swaps needed (inversions) when decided
};

/// Is dst reachable from src by swapping adjacent ⟨a:i⟩⟨b:j⟩ with i ≠ j and
/// (a,b) ∈ I, using at most `max_depth` swaps (default |src|²)? Decided from
/// the inversions between the two traces: dst is reachable iff the per-thread
/// projections agree and every inverted pair is cross-thread and allowed by
/// I, and the fewest swaps needed is the number of inversions.
CoverResult try_covers(const IndexedTrace& src, const IndexedTrace& dst,
                       const CommutativityRelation& i,
                       std::optional<std::uint64_t> max_depth = std::nullopt);

/// As try_covers; throws DepthExceeded when the bound is hit undecided.
bool covers(const IndexedTrace& src, const IndexedTrace& dst, const CommutativityRelation& i,
            std::optional<std::uint64_t> max_depth = std::nullopt);

/// L(p) within bounds: •-free plain projections (block symbols kept) of
/// synchronization-feasible interleavings of at most max_threads complete
/// thread runs, each with at most max_local_len non-• steps. Thread indices
/// are renamed by first appearance; the result is sorted and duplicate-free.
std::vector<IndexedTrace> enumerate_interleavings(const ParameterizedProgram& p,
                                                  const Bounds& bounds);

struct ReductionResult {
  Tri holds = Tri::yes;
  std::optional<IndexedTrace> counterexample;
  std::string reason;
};

/// l1 ⊆ l2 and every trace of l2 is covered by one of l1. With
/// `up_to_renaming`, both sets are taken as closed under thread renaming and
/// membership is tested on canonical names.
ReductionResult is_mazurkiewicz_reduction(const std::vector<IndexedTrace>& l1,
                                          const std::vector<IndexedTrace>& l2,
                                          const CommutativityRelation& i,
                                          std::optional<std::uint64_t> max_depth = std::nullopt,
                                          bool up_to_renaming = false);

/// Renames thread indices to 1, 2, … by first appearance.
IndexedTrace canonical_threads(const IndexedTrace& t);

/// A program whose interleavings serve as representatives: a template that
/// may contain block symbols (run atomically, expanded by their bodies),
/// lock edges and sync-points.
struct ReductionTarget {
  ThreadTemplate templ;
  std::map<std::string, ThreadTemplate> blocks;
};

/// Does some interleaving of `target` (blocks expanded) cover τ?
/// Decided by a search over linear extensions of τ's non-commuting order.
bool has_representative(const ReductionTarget& target, const IndexedTrace& tau,
                        const CommutativityRelation& i);

enum class OracleEngine { frontier, explicit_sets };

struct OracleOptions {
  OracleEngine engine = OracleEngine::frontier;
  /// Budget on interleavings examined; exceeding it gives `inconclusive`.
  std::uint64_t max_candidates = 200000;
};

Verdict oracle_check_atomic(const ThreadTemplate& t, const AtomicFusion& f,
                            const CommutativityRelation& i, const Bounds& bounds,
                            const OracleOptions& opts = {});
Verdict oracle_check_sync(const SyncPointInstrumentation& inst, const CommutativityRelation& i,
                          const Bounds& bounds, const OracleOptions& opts = {});
Verdict oracle_check_natural(const ThreadTemplate& t, const NaturalReductionSpec& spec,
                             const CommutativityRelation& i, const Bounds& bounds,
                             const OracleOptions& opts = {});

using Configuration = std::vector<LocationId>;

/// Resolves location names; throws UnknownLocation.
Configuration configuration(const ThreadTemplate& t, const std::vector<std::string>& names);

struct CoverabilityResult {
  bool coverable = false;
  std::optional<IndexedTrace> witness;  // synchronization actions included
};

/// Explicit-state search with max_threads threads (local length unbounded).
CoverabilityResult bounded_coverability(const ParameterizedProgram& p, const Configuration& c,
                                        const Bounds& bounds);

}  // namespace nred
