#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nred/trace.hpp"
#include "nred/verdict.hpp"

namespace nred {

inline constexpr const char* kReportSchema = "nred-report/1";

/// Tool version compiled into the library.
const char* version();

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

/// Machine-readable outcome of one CLI run. The text rendering is derived
/// from the same structure.
struct Report {
  std::string command;  // check, oracle, movers, validate, gen
  std::string mode;     // atomic, sync, natural, movers, oracle, coverability, validate
  std::string input;    // file name or "-"
  std::string input_digest;
  std::string tool_version;
  double wall_time_ms = 0;

  std::string result;  // sound, unsound, inconclusive, not_applicable, coverable, ...
  std::string certificate;
  std::optional<Bounds> bounds;
  std::vector<Condition> conditions;
  std::vector<std::string> warnings;
  std::vector<std::string> errors;
  std::optional<Witness> witness;
  /// Coverability witness (synchronization actions included).
  std::optional<IndexedTrace> trace;
  std::map<std::string, std::string> movers;
  std::optional<std::string> lipton;
  int exit_code = 0;

  friend bool operator==(const Report&, const Report&);
};

std::string to_json(const Report& r);
/// Throws ParseError.
Report report_from_json(std::string_view text);
std::string to_text(const Report& r);

/// `a b c` with 1-based positions marked, e.g. for body traces.
std::string render_witness(const Witness& w);

}  // namespace nred
