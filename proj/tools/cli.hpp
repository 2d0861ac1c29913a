#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nred/report.hpp"
#include "nred/trace.hpp"

namespace nred::cli {

struct CheckRequest {
  std::string command = "check";  // check, oracle, movers, validate
  std::string mode = "natural";   // atomic, sync, natural, movers, oracle, coverability
  std::string input = "-";
  std::optional<Bounds> bounds;
  bool json = false;
  bool strict_locks = false;
  bool witness = false;
};

struct Outcome {
  Report report;
  std::string output;  // rendered report
  int exit_code = 0;
};

/// Runs one request on already-read input text. Never throws for bad input;
/// errors become exit code 3.
Outcome run(const CheckRequest& req, const std::string& text);

struct GenRequest {
  std::string kind;  // thm1, 3sat, thm6, b2p
  std::vector<std::string> texts;  // inputs (DIMACS for 3sat)
  std::vector<std::string> cover;  // overrides the input's `cover`
  bool json = false;
};

struct GenOutcome {
  std::string output;
  std::string error;
  int exit_code = 0;
};

GenOutcome generate(const GenRequest& req);

/// 0 sound/true, 1 unsound/false, 2 inconclusive, 3 input error.
int exit_code_for(const std::string& result);

}  // namespace nred::cli
