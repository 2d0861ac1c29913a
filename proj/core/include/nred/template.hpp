#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nred/action.hpp"

namespace nred {

using LocationId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  LocationId source = 0;
  Action action;
  LocationId target = 0;
};

class TemplateBuilder;

/// Thread template: a control-flow graph whose edges carry actions, with one
/// initial and one exit location. Instances are built with TemplateBuilder
/// and are immutable afterwards.
class ThreadTemplate {
 public:
  ThreadTemplate() = default;

  std::size_t num_locations() const { return names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  LocationId init() const { return init_; }
  LocationId exit() const { return exit_; }

  const std::string& location_name(LocationId l) const { return names_[l]; }
  const std::vector<std::string>& location_names() const { return names_; }
  std::optional<LocationId> find_location(std::string_view name) const;

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const EdgeId> out_edges(LocationId l) const;
  std::span<const EdgeId> in_edges(LocationId l) const;

  /// Edge carrying the plain action or block symbol `name`, if any. When the
  /// name labels several edges (an invalid template) the first one is
  /// returned.
  std::optional<EdgeId> find_named_edge(std::string_view name) const;

  /// Sorted names of plain actions and block symbols occurring on edges.
  std::vector<std::string> named_alphabet() const;
  /// Sorted names of plain actions only.
  std::vector<std::string> plain_alphabet() const;
  /// Sorted lock names used by acquire/release edges.
  std::vector<std::string> locks() const;

  bool has_lock_actions() const;
  bool has_syncpoints() const;

  /// Structural equality up to location numbering (names must agree).
  bool same_graph(const ThreadTemplate& other) const;

 private:
  friend class TemplateBuilder;
  void index();

  std::vector<std::string> names_;
  std::unordered_map<std::string, LocationId> by_name_;
  std::vector<Edge> edges_;
  LocationId init_ = 0;
  LocationId exit_ = 0;

  // CSR adjacency
  std::vector<std::uint32_t> out_offsets_, in_offsets_;
  std::vector<EdgeId> out_list_, in_list_;
  std::unordered_map<std::string, EdgeId> named_edge_;
};

class TemplateBuilder {
 public:
  TemplateBuilder() = default;
  explicit TemplateBuilder(const ThreadTemplate& from);

  /// Returns the id of `name`, creating the location on first use.
  LocationId location(std::string_view name);
  bool has_location(std::string_view name) const;

  TemplateBuilder& edge(std::string_view src, Action a, std::string_view dst);
  TemplateBuilder& edge(LocationId src, Action a, LocationId dst);
  TemplateBuilder& init(std::string_view name);
  TemplateBuilder& exit(std::string_view name);

  ThreadTemplate build() const;

 private:
  ThreadTemplate t_;
};

enum class SyncKind { trivial, locks, locks_and_syncpoints };

const char* to_string(SyncKind k);

struct ParameterizedProgram {
  ThreadTemplate templ;
  SyncKind sync = SyncKind::trivial;

  /// Smallest synchronization kind able to express every edge of `t`.
  static ParameterizedProgram inferred(ThreadTemplate t);
};

}  // namespace nred
