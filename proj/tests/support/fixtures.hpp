#pragma once

#include <set>
#include <string>
#include <vector>

#include "nred/model.hpp"
#include "nred/relation.hpp"

// The two running examples, built directly (no parser involved).
namespace nred::testing {

struct Branches {
  ThreadTemplate original;  // l0 -a-> l2, l0 -b1-> l1 -b2-> l2, l0 -c-> l2
  AtomicFusion fusion;      // b1 b2 fused into block B
  CommutativityRelation i;  // Σ² ∖ {(a,b2), (b1,c)}
  CommutativityRelation i_prime;  // I ∖ {(b1,b2)}
};
Branches branches();

struct Phased {
  ThreadTemplate base;  // l0 -a-> l1 -b-> l2 -c-> l3
  SyncPointInstrumentation inst;  // sync-points at l1 and l2
  CommutativityRelation i;        // Σ² ∖ {(b,b), (c,c)}
  CommutativityRelation i_prime;  // Σ² ∖ {(b,c), (c,b)}
};
Phased phased();

/// Straight-line template over `actions`, locations q0 … qn.
ThreadTemplate line(const std::vector<std::string>& actions);

/// Labels of init→exit paths with at most `max_len` edges.
std::set<std::vector<std::string>> bounded_traces(const ThreadTemplate& t, std::size_t max_len);

}  // namespace nred::testing
