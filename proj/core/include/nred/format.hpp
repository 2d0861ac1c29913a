#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nred/model.hpp"
#include "nred/relation.hpp"
#include "nred/template.hpp"

namespace nred {

/// Source position, 1-based; line 0 means unknown.
struct SourcePos {
  int line = 0;
  int column = 0;
};

/// Edge as written: `name` is a plain action or block symbol (resolved
/// later), or a lock for lock edges.
struct RawEdge {
  std::string source;
  ActionKind kind = ActionKind::plain;
  std::string name;
  std::string target;
  SourcePos pos;
};

struct RawTemplate {
  std::optional<std::string> init, exit;
  std::vector<std::string> locations;  // declared, may be empty
  std::vector<RawEdge> edges;
  SourcePos pos;
};

/// Syntax of a `.nred` file or its JSON mirror. The top-level template is the
/// program with block symbols on its edges; the original program is obtained
/// by substituting the block bodies (or given explicitly in `original`).
struct Document {
  std::string name;
  std::optional<SyncKind> sync_kind;
  std::optional<std::vector<std::string>> actions;
  RawTemplate templ;
  std::map<std::string, RawTemplate> blocks;
  std::optional<RawTemplate> original;
  std::optional<std::vector<ActionPair>> conflicts;
  std::optional<std::vector<ActionPair>> commutes;
  std::vector<std::string> syncpoints;
  std::optional<RawTemplate> instrumented;
  std::vector<std::string> cover;
  /// First occurrence of every identifier, for diagnostics.
  std::map<std::string, SourcePos> positions;
};

/// Throws ParseError.
Document parse_nred(std::string_view text);
Document parse_json_document(std::string_view text);
/// JSON when the first non-blank character is `{`, `.nred` otherwise.
Document parse_document(std::string_view text);

std::string write_nred(const Document& d);
std::string write_json(const Document& d);

/// Resolved and validated input.
struct Input {
  ParameterizedProgram program;  // the original program
  CommutativityRelation relation;
  NaturalReductionSpec spec;
  std::vector<std::string> cover;
  std::vector<std::string> warnings;
};

/// Builds the structures and runs the model validators; throws
/// ValidationError listing every violation with its source position.
Input resolve(const Document& d);

/// parse_document + resolve.
Input parse_input(std::string_view text);

RawTemplate raw_template(const ThreadTemplate& t);

/// A document describing `program` (blocks and instrumentation optional).
Document make_document(const std::string& name, const ThreadTemplate& top,
                       const std::map<std::string, ThreadTemplate>& blocks,
                       const std::optional<CommutativityRelation>& relation,
                       const std::vector<std::string>& syncpoints = {},
                       const std::vector<std::string>& cover = {});

/// Graphviz rendering of a template.
std::string to_dot(const ThreadTemplate& t, const std::string& name = "template");

/// Identifiers may not contain whitespace or any of `(){},#@>`.
bool valid_identifier(std::string_view s);

}  // namespace nred
