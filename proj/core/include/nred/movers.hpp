#pragma once

#include <map>
#include <string>
#include <vector>

#include "nred/model.hpp"
#include "nred/relation.hpp"

namespace nred {

enum class Mover { left, right, both, non };

const char* to_string(Mover m);

struct MoverClassification {
  std::map<std::string, Mover> classes;
  std::vector<std::string> warnings;

  bool is_left(const std::string& a) const;
  bool is_right(const std::string& a) const;
};

/// a is a left-mover when (b,a) ∈ I for every declared b, a right-mover when
/// (a,b) ∈ I for every declared b. When `t` is given, declared actions that
/// label no live edge of t are reported as dead.
MoverClassification classify_movers(const std::vector<std::string>& alphabet,
                                    const CommutativityRelation& i,
                                    const ThreadTemplate* t = nullptr);

enum class LiptonResult { certified_sound, unknown };

const char* to_string(LiptonResult r);

struct LiptonReport {
  LiptonResult result = LiptonResult::certified_sound;
  std::string failing_block;
  std::vector<std::string> counterexample;  // body trace outside R*ΣL*
  MoverClassification movers;
};

/// Lipton's rule: every body trace has the form r…r x l…l with r right-movers
/// and l left-movers.
LiptonReport lipton_check(const AtomicFusion& f, const CommutativityRelation& i);

}  // namespace nred
