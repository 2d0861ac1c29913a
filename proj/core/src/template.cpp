#include "nred/template.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace nred {

std::optional<LocationId> ThreadTemplate::find_location(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::span<const EdgeId> ThreadTemplate::out_edges(LocationId l) const {
  return {out_list_.data() + out_offsets_[l], out_offsets_[l + 1] - out_offsets_[l]};
}

std::span<const EdgeId> ThreadTemplate::in_edges(LocationId l) const {
  return {in_list_.data() + in_offsets_[l], in_offsets_[l + 1] - in_offsets_[l]};
}

std::optional<EdgeId> ThreadTemplate::find_named_edge(std::string_view name) const {
  auto it = named_edge_.find(std::string(name));
  if (it == named_edge_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ThreadTemplate::named_alphabet() const {
  std::set<std::string> s;
  for (const auto& e : edges_)
    if (e.action.is_named()) s.insert(e.action.name);
  return {s.begin(), s.end()};
}

std::vector<std::string> ThreadTemplate::plain_alphabet() const {
  std::set<std::string> s;
  for (const auto& e : edges_)
    if (e.action.kind == ActionKind::plain) s.insert(e.action.name);
  return {s.begin(), s.end()};
}

std::vector<std::string> ThreadTemplate::locks() const {
  std::set<std::string> s;
  for (const auto& e : edges_)
    if (e.action.is_lock()) s.insert(e.action.lock);
  return {s.begin(), s.end()};
}

bool ThreadTemplate::has_lock_actions() const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.action.is_lock(); });
}

bool ThreadTemplate::has_syncpoints() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) {
    return e.action.kind == ActionKind::syncpoint;
  });
}

bool ThreadTemplate::same_graph(const ThreadTemplate& other) const {
  if (num_locations() != other.num_locations() || num_edges() != other.num_edges())
    return false;
  std::set<std::string> mine(names_.begin(), names_.end());
  std::set<std::string> theirs(other.names_.begin(), other.names_.end());
  if (mine != theirs) return false;
  if (location_name(init_) != other.location_name(other.init_)) return false;
  if (location_name(exit_) != other.location_name(other.exit_)) return false;
  using Key = std::tuple<std::string, Action, std::string>;
  std::multiset<Key> a, b;
  for (const auto& e : edges_)
    a.emplace(location_name(e.source), e.action, location_name(e.target));
  for (const auto& e : other.edges_)
    b.emplace(other.location_name(e.source), e.action, other.location_name(e.target));
  return a == b;
}

void ThreadTemplate::index() {
  const std::size_t n = names_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++out_offsets_[e.source + 1];
    ++in_offsets_[e.target + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_list_.assign(edges_.size(), 0);
  in_list_.assign(edges_.size(), 0);
  auto out_fill = out_offsets_;
  auto in_fill = in_offsets_;
  named_edge_.clear();
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    out_list_[out_fill[e.source]++] = id;
    in_list_[in_fill[e.target]++] = id;
    if (e.action.is_named()) named_edge_.emplace(e.action.name, id);
  }
}

TemplateBuilder::TemplateBuilder(const ThreadTemplate& from)
    : t_(from) {}

LocationId TemplateBuilder::location(std::string_view name) {
  auto key = std::string(name);
  auto it = t_.by_name_.find(key);
  if (it != t_.by_name_.end()) return it->second;
  auto id = static_cast<LocationId>(t_.names_.size());
  t_.names_.push_back(key);
  t_.by_name_.emplace(std::move(key), id);
  return id;
}

bool TemplateBuilder::has_location(std::string_view name) const {
  return t_.by_name_.count(std::string(name)) != 0;
}

TemplateBuilder& TemplateBuilder::edge(std::string_view src, Action a,
                                       std::string_view dst) {
  auto s = location(src);
  auto d = location(dst);
  return edge(s, std::move(a), d);
}

TemplateBuilder& TemplateBuilder::edge(LocationId src, Action a, LocationId dst) {
  t_.edges_.push_back({src, std::move(a), dst});
  return *this;
}

TemplateBuilder& TemplateBuilder::init(std::string_view name) {
  t_.init_ = location(name);
  return *this;
}

TemplateBuilder& TemplateBuilder::exit(std::string_view name) {
  t_.exit_ = location(name);
  return *this;
}

ThreadTemplate TemplateBuilder::build() const {
  ThreadTemplate t = t_;
  if (t.names_.empty()) {
    // An empty builder still yields a well-formed (if invalid) template.
    TemplateBuilder b;
    b.location("init");
    return b.build();
  }
  t.index();
  return t;
}

const char* to_string(SyncKind k) {
  switch (k) {
    case SyncKind::trivial: return "trivial";
    case SyncKind::locks: return "locks";
    case SyncKind::locks_and_syncpoints: return "locks+syncpoints";
  }
  return "?";
}

ParameterizedProgram ParameterizedProgram::inferred(ThreadTemplate t) {
  SyncKind k = SyncKind::trivial;
  if (t.has_syncpoints())
    k = SyncKind::locks_and_syncpoints;
  else if (t.has_lock_actions())
    k = SyncKind::locks;
  return {std::move(t), k};
}

}  // namespace nred
