#include "nred/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace nred {

int SymbolTable::intern(const std::string& s) {
  auto [it, fresh] = ids_.emplace(s, static_cast<int>(names_.size()));
  if (fresh) names_.push_back(s);
  return it->second;
}

std::uint32_t Nfa::add_state(bool accept) {
  arcs.emplace_back();
  accepting.push_back(accept);
  return static_cast<std::uint32_t>(arcs.size() - 1);
}

std::optional<std::string> label_all(const Action& a) { return a.label(); }

std::optional<std::string> label_erase_syncpoints(const Action& a) {
  if (a.kind == ActionKind::syncpoint) return std::nullopt;
  return a.label();
}

Nfa template_nfa(const ThreadTemplate& t, SymbolTable& symbols, const LabelMap& map) {
  Nfa n;
  for (std::size_t i = 0; i < t.num_locations(); ++i) n.add_state(i == t.exit());
  n.init = t.init();
  for (const auto& e : t.edges()) {
    auto s = map(e.action);
    n.add_arc(e.source, s ? symbols.intern(*s) : kEpsilon, e.target);
  }
  return n;
}

namespace {

using StateSet = std::vector<std::uint32_t>;

StateSet closure(const Nfa& n, StateSet s) {
  std::vector<bool> in(n.size(), false);
  for (auto q : s) in[q] = true;
  for (std::size_t k = 0; k < s.size(); ++k)
    for (const auto& arc : n.arcs[s[k]])
      if (arc.label == kEpsilon && !in[arc.target]) {
        in[arc.target] = true;
        s.push_back(arc.target);
      }
  std::sort(s.begin(), s.end());
  return s;
}

StateSet step(const Nfa& n, const StateSet& s, int label) {
  StateSet out;
  for (auto q : s)
    for (const auto& arc : n.arcs[q])
      if (arc.label == label) out.push_back(arc.target);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return closure(n, std::move(out));
}

bool accepts(const Nfa& n, const StateSet& s) {
  return std::any_of(s.begin(), s.end(), [&](std::uint32_t q) { return n.accepting[q]; });
}

std::vector<int> labels_of(const Nfa& n, const StateSet& s) {
  std::set<int> out;
  for (auto q : s)
    for (const auto& arc : n.arcs[q])
      if (arc.label != kEpsilon) out.insert(arc.label);
  return {out.begin(), out.end()};
}

// Subset-construction product; `bad(accA, accB)` flags a distinguishing state.
template <class Bad>
bool search(const Nfa& a, const Nfa& b, const SymbolTable& symbols,
            std::vector<std::string>* cex, Bad bad) {
  using Key = std::pair<StateSet, StateSet>;
  std::map<Key, std::size_t> seen;
  std::vector<Key> states;
  std::vector<std::pair<std::size_t, int>> parent;
  std::deque<std::size_t> queue;

  Key start{closure(a, {a.init}), closure(b, {b.init})};
  seen.emplace(start, 0);
  states.push_back(start);
  parent.emplace_back(0, kEpsilon);
  queue.push_back(0);

  while (!queue.empty()) {
    auto id = queue.front();
    queue.pop_front();
    const auto [sa, sb] = states[id];
    if (bad(accepts(a, sa), accepts(b, sb))) {
      if (cex) {
        cex->clear();
        for (auto k = id; k != 0; k = parent[k].first)
          cex->push_back(symbols.name(parent[k].second));
        std::reverse(cex->begin(), cex->end());
      }
      return false;
    }
    auto la = labels_of(a, sa);
    auto lb = labels_of(b, sb);
    std::vector<int> labels;
    std::set_union(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(labels));
    for (int l : labels) {
      Key next{step(a, sa, l), step(b, sb, l)};
      if (next.first.empty() && next.second.empty()) continue;
      auto [it, fresh] = seen.emplace(next, states.size());
      if (!fresh) continue;
      states.push_back(std::move(next));
      parent.emplace_back(id, l);
      queue.push_back(it->second);
    }
  }
  return true;
}

}  // namespace

bool nfa_included(const Nfa& a, const Nfa& b, const SymbolTable& symbols,
                  std::vector<std::string>* counterexample) {
  return search(a, b, symbols, counterexample,
                [](bool acc_a, bool acc_b) { return acc_a && !acc_b; });
}

bool nfa_equivalent(const Nfa& a, const Nfa& b, const SymbolTable& symbols,
                    std::vector<std::string>* counterexample) {
  return search(a, b, symbols, counterexample,
                [](bool acc_a, bool acc_b) { return acc_a != acc_b; });
}

}  // namespace nred
