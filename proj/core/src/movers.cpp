#include "nred/movers.hpp"

#include <cassert>
#include <set>

#include "nred/automaton.hpp"
#include "nred/graph.hpp"

namespace nred {

const char* to_string(Mover m) {
  switch (m) {
    case Mover::left: return "left";
    case Mover::right: return "right";
    case Mover::both: return "both";
    case Mover::non: return "non";
  }
  return "?";
}

const char* to_string(LiptonResult r) {
  return r == LiptonResult::certified_sound ? "certified-sound" : "unknown";
}

bool MoverClassification::is_left(const std::string& a) const {
  auto it = classes.find(a);
  return it != classes.end() && (it->second == Mover::left || it->second == Mover::both);
}

bool MoverClassification::is_right(const std::string& a) const {
  auto it = classes.find(a);
  return it != classes.end() && (it->second == Mover::right || it->second == Mover::both);
}

MoverClassification classify_movers(const std::vector<std::string>& alphabet,
                                    const CommutativityRelation& i, const ThreadTemplate* t) {
  MoverClassification out;
  const auto& all = i.alphabet();
  for (const auto& a : alphabet) {
    if (!i.declared(a)) {
      out.classes[a] = Mover::non;
      out.warnings.push_back("action " + a + " is not declared in the commutativity alphabet");
      continue;
    }
    bool left = true, right = true;
    for (const auto& b : all) {
      left = left && i.contains(b, a);
      right = right && i.contains(a, b);
    }
    out.classes[a] = left && right ? Mover::both
                     : left        ? Mover::left
                     : right       ? Mover::right
                                   : Mover::non;
  }
  if (t) {
    auto adj = location_graph(*t);
    auto fwd = reachable_from(adj, t->init());
    auto bwd = coreachable_to(adj, t->exit());
    std::set<std::string> live;
    for (const auto& e : t->edges())
      if (e.action.is_named() && fwd[e.source] && bwd[e.target]) live.insert(e.action.name);
    std::string dead;
    for (const auto& a : all)
      if (!live.count(a)) dead += (dead.empty() ? "" : ", ") + a;
    if (!dead.empty())
      out.warnings.push_back("mover quantification includes dead actions: " + dead);
  }
  return out;
}

LiptonReport lipton_check(const AtomicFusion& f, const CommutativityRelation& i) {
  LiptonReport rep;
  ThreadTemplate whole;
  try {
    whole = substitute_blocks(f);
  } catch (const std::exception&) {
    whole = f.outer;
  }
  std::set<std::string> names(i.alphabet().begin(), i.alphabet().end());
  for (const auto& a : whole.named_alphabet()) names.insert(a);
  rep.movers = classify_movers({names.begin(), names.end()}, i, &whole);

  for (const auto& [sym, body] : f.blocks) {
    assert(body.init() != body.exit());  // ε ∉ T(body)
    SymbolTable symbols;
    auto nb = template_nfa(body, symbols, label_all);
    Nfa form;
    auto q0 = form.add_state(false);
    auto q1 = form.add_state(true);
    for (const auto& x : body.named_alphabet()) {
      int s = symbols.intern(x);
      form.add_arc(q0, s, q1);
      if (rep.movers.is_right(x)) form.add_arc(q0, s, q0);
      if (rep.movers.is_left(x)) form.add_arc(q1, s, q1);
    }
    std::vector<std::string> cex;
    if (!nfa_included(nb, form, symbols, &cex)) {
      rep.result = LiptonResult::unknown;
      rep.failing_block = sym;
      rep.counterexample = std::move(cex);
      return rep;
    }
  }
  return rep;
}

}  // namespace nred
