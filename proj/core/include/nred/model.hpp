#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nred/relation.hpp"
#include "nred/template.hpp"

namespace nred {

struct Violation {
  std::string kind;  // e.g. "init-equals-exit", "unreachable"
  std::string message;
  std::vector<std::string> elements;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  void add(std::string kind, std::string message, std::vector<std::string> elements = {});
  /// Appends `other`, prefixing its messages with `context`.
  void merge(const ValidationReport& other, const std::string& context = {});
  std::string to_string() const;
};

/// Structural invariants: init ≠ exit, reachability from init, co-reachability
/// of exit, unique plain/block labels.
ValidationReport validate_template(const ThreadTemplate& t);

/// Template invariants plus consistency with the synchronization kind.
ValidationReport validate_program(const ParameterizedProgram& p);

/// Pairs are declared by construction; warns about template actions that the
/// relation does not declare (they commute with nothing).
ValidationReport validate_relation(const CommutativityRelation& i, const ThreadTemplate& t);

struct AtomicFusion {
  ThreadTemplate outer;
  std::map<std::string, ThreadTemplate> blocks;  // block symbol -> body
};

/// Replaces every block-symbol edge of `outer` by a copy of its body. Body
/// locations are renamed `<block>::<location>`; body init/exit are identified
/// with the edge's source/target.
ThreadTemplate substitute_blocks(const AtomicFusion& f);

/// Fusion invariants. When `original` is given, also checks that the
/// substituted template has the same trace language.
ValidationReport validate_fusion(const AtomicFusion& f,
                                 const ThreadTemplate* original = nullptr);

struct SyncPointInstrumentation {
  ThreadTemplate base;
  ThreadTemplate instrumented;
  std::optional<std::vector<std::string>> insertion_locations;
};

/// Splits every location ℓ ∈ m into ℓ –•→ ℓ^ with the outgoing edges of ℓ
/// moved to ℓ^. Throws UnknownLocation.
SyncPointInstrumentation insert_syncpoints(const ThreadTemplate& t,
                                           const std::vector<std::string>& m);

/// (i) erasing • from T(instrumented) gives T(base); (ii) the erasure is
/// injective on T(instrumented).
ValidationReport validate_instrumentation(const SyncPointInstrumentation& inst);

struct NaturalReductionSpec {
  std::optional<AtomicFusion> fusion;
  /// Over the fused template when a fusion is present.
  std::optional<SyncPointInstrumentation> instrumentation;

  /// The program the instrumentation must be based on.
  ThreadTemplate reduced_base(const ThreadTemplate& original) const;
};

ValidationReport validate_spec(const NaturalReductionSpec& spec, const ThreadTemplate& original);

/// Adds both orders of every pair of plain actions leaving distinct locations
/// whose must-hold lock sets intersect.
CommutativityRelation lockset_extension(const CommutativityRelation& i,
                                        const std::map<std::string, std::set<std::string>>& must_hold,
                                        const ThreadTemplate& t);

/// Lock and sync-point edges renamed to fresh plain actions, one per edge.
/// The fresh names contain characters that user identifiers cannot, so no
/// relation declares them and they conflict with everything.
struct LockAbstraction {
  ThreadTemplate templ;
  std::vector<std::string> fresh_actions;
  std::map<std::string, Action> origin;  // fresh name -> replaced action
  bool changed() const { return !fresh_actions.empty(); }
};

LockAbstraction abstract_synchronization(const ThreadTemplate& t);

}  // namespace nred
