#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nred/model.hpp"
#include "nred/relation.hpp"
#include "nred/template.hpp"

namespace nred {

/// Literals are signed 1-based variable indices.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // three literals each
};

/// Throws ParseError. Clauses must have exactly three literals.
CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula& phi);

/// `x3` / `~x3`
std::string literal_name(int literal);

/// Exhaustive; throws TooManyVariables above 24 variables.
bool brute_sat(const CnfFormula& phi);

struct CoverabilityInstance {
  ParameterizedProgram program;
  std::vector<std::string> configuration;  // location names
};

struct FusionGadget {
  ParameterizedProgram program;  // contains enter;leave unfused
  AtomicFusion fusion;           // enter;leave as block "B"
  CommutativityRelation relation;
};

/// Fresh actions enter, leave, c[1..r] and a fresh exit: init –enter→ ℓa
/// –leave→ ℓab, ℓi –c[i]→ ℓab, old exit –finish→ ℓab. I relates all pairs
/// but (enter,c[1]), (c[1],c[2]), …, (c[r],leave). The fusion is unsound iff
/// the configuration is coverable.
FusionGadget coverability_to_fusion(const ParameterizedProgram& p,
                                    const std::vector<std::string>& c);

/// One clause thread per clause, each branch of a literal l of clause i
/// acquiring m[i][l] and probing m[j][¬l] for every j ≠ i in ascending order
/// before reaching ℓi. Packaged with bounded_to_parameterized; the
/// configuration is [t1::ℓ1, …, tn::ℓn].
CoverabilityInstance sat_to_coverability(const CnfFormula& phi);

struct SyncGadget {
  ParameterizedProgram program;
  SyncPointInstrumentation instrumentation;
};

/// From each ℓi: acq(claim[i]); c[i]; acq(m[i]); one of acq(m[j]);rel(m[j])
/// for j ≠ i; rel(m[i]) into a fresh exit, with a sync-point inserted before
/// rel(m[i]). claim[i] is never released. The old exit reaches the fresh exit
/// by `finish`. Requires |c| > 1.
SyncGadget coverability_to_syncpoint(const ParameterizedProgram& p,
                                     const std::vector<std::string>& c);

/// Branch i from a fresh init acquires slot[i] (never released), then runs
/// template i with locations renamed `t<i>::<loc>`; exits are merged.
/// Throws AlphabetCollision when plain alphabets overlap.
ThreadTemplate bounded_to_parameterized(const std::vector<ThreadTemplate>& templates);

}  // namespace nred
