#include "nred/model.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "nred/automaton.hpp"
#include "nred/error.hpp"
#include "nred/graph.hpp"

namespace nred {

void ValidationReport::add(std::string kind, std::string message,
                           std::vector<std::string> elements) {
  violations.push_back({std::move(kind), std::move(message), std::move(elements)});
}

void ValidationReport::merge(const ValidationReport& other, const std::string& context) {
  for (auto v : other.violations) {
    if (!context.empty()) v.message = context + ": " + v.message;
    violations.push_back(std::move(v));
  }
  for (const auto& w : other.warnings)
    warnings.push_back(context.empty() ? w : context + ": " + w);
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) os << "error: " << v.message << '\n';
  for (const auto& w : warnings) os << "warning: " << w << '\n';
  return os.str();
}

ValidationReport validate_template(const ThreadTemplate& t) {
  ValidationReport r;
  if (t.init() == t.exit())
    r.add("init-equals-exit", "init equals exit", {t.location_name(t.init())});
  auto adj = location_graph(t);
  auto fwd = reachable_from(adj, t.init());
  auto bwd = coreachable_to(adj, t.exit());
  for (LocationId l = 0; l < t.num_locations(); ++l) {
    const auto& n = t.location_name(l);
    if (!fwd[l]) r.add("unreachable", n + " unreachable from init", {n});
    if (!bwd[l]) r.add("not-coreachable", "exit unreachable from " + n, {n});
  }
  std::map<std::string, int> seen;
  for (const auto& e : t.edges())
    if (e.action.is_named()) ++seen[e.action.name];
  for (const auto& [name, k] : seen)
    if (k > 1)
      r.add("duplicate-label", "action " + name + " labels " + std::to_string(k) + " edges",
            {name});
  return r;
}

ValidationReport validate_program(const ParameterizedProgram& p) {
  auto r = validate_template(p.templ);
  for (const auto& e : p.templ.edges()) {
    bool bad = (p.sync == SyncKind::trivial && e.action.is_sync()) ||
               (p.sync == SyncKind::locks && e.action.kind == ActionKind::syncpoint);
    if (bad)
      r.add("sync-kind", "action " + e.action.label() + " not allowed with " +
                             to_string(p.sync) + " synchronization",
            {e.action.label()});
  }
  return r;
}

ValidationReport validate_relation(const CommutativityRelation& i, const ThreadTemplate& t) {
  ValidationReport r;
  std::vector<std::string> missing;
  for (const auto& a : t.named_alphabet())
    if (!i.declared(a)) missing.push_back(a);
  if (!missing.empty()) {
    std::string list;
    for (const auto& a : missing) list += (list.empty() ? "" : ", ") + a;
    r.warnings.push_back("actions not declared in the commutativity alphabet (commute with nothing): " +
                         list);
  }
  return r;
}

ThreadTemplate substitute_blocks(const AtomicFusion& f) {
  std::set<std::string> used;
  for (const auto& e : f.outer.edges())
    if (e.action.kind == ActionKind::block) used.insert(e.action.name);
  for (const auto& [sym, body] : f.blocks)
    if (!used.count(sym))
      throw Error(ErrorCode::block_symbol_missing,
                  "block symbol " + sym + " labels no edge of the outer template");

  TemplateBuilder b;
  for (const auto& n : f.outer.location_names()) b.location(n);
  b.init(f.outer.location_name(f.outer.init()));
  b.exit(f.outer.location_name(f.outer.exit()));
  for (const auto& e : f.outer.edges()) {
    const auto& src = f.outer.location_name(e.source);
    const auto& dst = f.outer.location_name(e.target);
    if (e.action.kind != ActionKind::block) {
      b.edge(src, e.action, dst);
      continue;
    }
    auto it = f.blocks.find(e.action.name);
    if (it == f.blocks.end())
      throw Error(ErrorCode::validation_error, "block symbol " + e.action.name + " has no body");
    const auto& body = it->second;
    std::vector<std::string> rename(body.num_locations());
    for (LocationId l = 0; l < body.num_locations(); ++l) {
      if (l == body.init()) {
        rename[l] = src;
      } else if (l == body.exit()) {
        rename[l] = dst;
      } else {
        auto n = e.action.name + "::" + body.location_name(l);
        while (b.has_location(n) || f.outer.find_location(n)) n += "'";
        rename[l] = n;
        b.location(n);
      }
    }
    for (const auto& be : body.edges())
      b.edge(rename[be.source], be.action, rename[be.target]);
  }
  return b.build();
}

ValidationReport validate_fusion(const AtomicFusion& f, const ThreadTemplate* original) {
  ValidationReport r;
  r.merge(validate_template(f.outer), "outer template");

  std::map<std::string, int> outer_blocks;
  std::set<std::string> outer_plain;
  for (const auto& e : f.outer.edges()) {
    if (e.action.kind == ActionKind::block) ++outer_blocks[e.action.name];
    if (e.action.kind == ActionKind::plain) outer_plain.insert(e.action.name);
  }
  for (const auto& [sym, k] : outer_blocks) {
    if (!f.blocks.count(sym)) r.add("missing-body", "block symbol " + sym + " has no body", {sym});
    if (outer_plain.count(sym))
      r.add("symbol-clash", "block symbol " + sym + " is also a plain action", {sym});
  }

  std::map<std::string, std::string> owner;
  for (const auto& [sym, body] : f.blocks) {
    const std::string ctx = "block " + sym;
    if (!outer_blocks.count(sym))
      r.add("block-symbol-missing", "block symbol " + sym + " labels no edge of the outer template",
            {sym});
    r.merge(validate_template(body), ctx);
    for (const auto& e : body.edges()) {
      if (e.action.kind != ActionKind::plain) {
        r.add("body-action", ctx + ": body contains non-plain action " + e.action.label(),
              {sym, e.action.label()});
        continue;
      }
      const auto& a = e.action.name;
      if (outer_plain.count(a))
        r.add("alphabet-overlap", ctx + ": action " + a + " also occurs outside the block", {sym, a});
      auto [it, fresh] = owner.emplace(a, sym);
      if (!fresh && it->second != sym)
        r.add("alphabet-overlap",
              "action " + a + " occurs in blocks " + it->second + " and " + sym, {it->second, sym, a});
    }
  }
  if (!r.ok()) return r;

  if (original) {
    auto sub = substitute_blocks(f);
    SymbolTable symbols;
    auto n1 = template_nfa(sub, symbols, label_all);
    auto n2 = template_nfa(*original, symbols, label_all);
    std::vector<std::string> cex;
    if (!nfa_equivalent(n1, n2, symbols, &cex)) {
      std::string w;
      for (const auto& s : cex) w += (w.empty() ? "" : " ") + s;
      r.add("substitution-mismatch",
            "substituting the block bodies does not yield the original template (distinguishing trace: " +
                (w.empty() ? std::string("ε") : w) + ")",
            cex);
    }
  }
  return r;
}

SyncPointInstrumentation insert_syncpoints(const ThreadTemplate& t,
                                           const std::vector<std::string>& m) {
  std::set<LocationId> marked;
  for (const auto& n : m) {
    auto l = t.find_location(n);
    if (!l) throw Error(ErrorCode::unknown_location, "unknown location " + n);
    marked.insert(*l);
  }
  TemplateBuilder b;
  for (const auto& n : t.location_names()) b.location(n);
  b.init(t.location_name(t.init()));
  b.exit(t.location_name(t.exit()));
  std::map<LocationId, std::string> hat;
  for (auto l : marked) {
    auto n = t.location_name(l) + "^";
    while (b.has_location(n)) n += "^";
    b.location(n);
    hat[l] = n;
    b.edge(t.location_name(l), Action::syncpoint(), n);
  }
  for (const auto& e : t.edges()) {
    auto it = hat.find(e.source);
    const auto& src = it != hat.end() ? it->second : t.location_name(e.source);
    b.edge(src, e.action, t.location_name(e.target));
  }
  return {t, b.build(), m};
}

namespace {

// Two accepting runs with equal •-erased trace but different • placement.
// Solo •-moves inside one gap between letters are taken by one run only,
// the other run's •-moves being paired with them jointly.
bool erasure_injective(const ThreadTemplate& g) {
  struct State {
    LocationId p, q;
    std::uint8_t seg;   // 0 none, 1 run one ahead, 2 run two ahead
    std::uint8_t flag;  // some earlier gap differed
  };
  auto key = [](const State& s) {
    return (std::uint64_t{s.p} << 32 | s.q) * 6 + s.seg * 2 + s.flag;
  };
  std::unordered_set<std::uint64_t> seen;
  std::deque<State> work;
  auto push = [&](State s) {
    if (seen.insert(key(s)).second) work.push_back(s);
  };
  push({g.init(), g.init(), 0, 0});
  while (!work.empty()) {
    auto s = work.front();
    work.pop_front();
    if (s.p == g.exit() && s.q == g.exit() && (s.flag || s.seg != 0)) return false;
    for (auto e1 : g.out_edges(s.p)) {
      const auto& a = g.edge(e1);
      if (a.action.kind == ActionKind::syncpoint) {
        if (s.seg != 2) push({a.target, s.q, 1, s.flag});
        for (auto e2 : g.out_edges(s.q))
          if (g.edge(e2).action.kind == ActionKind::syncpoint)
            push({a.target, g.edge(e2).target, s.seg, s.flag});
        continue;
      }
      for (auto e2 : g.out_edges(s.q)) {
        const auto& b = g.edge(e2);
        if (b.action == a.action)
          push({a.target, b.target, 0, static_cast<std::uint8_t>(s.flag || s.seg != 0)});
      }
    }
    if (s.seg != 1)
      for (auto e2 : g.out_edges(s.q))
        if (g.edge(e2).action.kind == ActionKind::syncpoint)
          push({s.p, g.edge(e2).target, 2, s.flag});
  }
  return true;
}

}  // namespace

ValidationReport validate_instrumentation(const SyncPointInstrumentation& inst) {
  ValidationReport r;
  if (inst.base.has_syncpoints())
    r.add("base-syncpoint", "base template already contains sync-points");
  SymbolTable symbols;
  auto base = template_nfa(inst.base, symbols, label_all);
  auto erased = template_nfa(inst.instrumented, symbols, label_erase_syncpoints);
  std::vector<std::string> cex;
  if (!nfa_equivalent(base, erased, symbols, &cex)) {
    std::string w;
    for (const auto& s : cex) w += (w.empty() ? "" : " ") + s;
    r.add("projection-mismatch",
          "erasing sync-points does not give the base trace language (distinguishing trace: " +
              (w.empty() ? std::string("ε") : w) + ")",
          cex);
  }
  if (!erasure_injective(inst.instrumented))
    r.add("not-injective",
          "two instrumented traces differ only in sync-point placement");
  return r;
}

ThreadTemplate NaturalReductionSpec::reduced_base(const ThreadTemplate& original) const {
  return fusion ? fusion->outer : original;
}

ValidationReport validate_spec(const NaturalReductionSpec& spec, const ThreadTemplate& original) {
  ValidationReport r;
  r.merge(validate_template(original), "template");
  if (spec.fusion) r.merge(validate_fusion(*spec.fusion, &original), "fusion");
  if (spec.instrumentation) {
    const auto& inst = *spec.instrumentation;
    r.merge(validate_instrumentation(inst), "instrumentation");
    auto expected = spec.reduced_base(original);
    SymbolTable symbols;
    auto n1 = template_nfa(inst.base, symbols, label_all);
    auto n2 = template_nfa(expected, symbols, label_all);
    if (!nfa_equivalent(n1, n2, symbols))
      r.add("instrumentation-base",
            spec.fusion ? "instrumentation is not based on the fused template"
                        : "instrumentation is not based on the program template");
  }
  return r;
}

CommutativityRelation lockset_extension(
    const CommutativityRelation& i, const std::map<std::string, std::set<std::string>>& must_hold,
    const ThreadTemplate& t) {
  std::vector<std::pair<LocationId, std::string>> actions;
  for (const auto& e : t.edges())
    if (e.action.kind == ActionKind::plain) actions.emplace_back(e.source, e.action.name);
  auto held = [&](LocationId l) -> const std::set<std::string>* {
    auto it = must_hold.find(t.location_name(l));
    return it == must_hold.end() ? nullptr : &it->second;
  };
  std::vector<ActionPair> extra;
  for (std::size_t x = 0; x < actions.size(); ++x)
    for (std::size_t y = x + 1; y < actions.size(); ++y) {
      auto [l1, a] = actions[x];
      auto [l2, b] = actions[y];
      if (l1 == l2) continue;
      const auto* m1 = held(l1);
      const auto* m2 = held(l2);
      if (!m1 || !m2) continue;
      bool overlap = std::any_of(m1->begin(), m1->end(),
                                 [&](const std::string& m) { return m2->count(m) != 0; });
      if (!overlap) continue;
      extra.emplace_back(a, b);
      extra.emplace_back(b, a);
    }
  if (extra.empty()) return i;
  auto alphabet = i.alphabet();
  for (const auto& [a, b] : extra) {
    alphabet.push_back(a);
    alphabet.push_back(b);
  }
  auto pairs = i.pairs();
  pairs.insert(pairs.end(), extra.begin(), extra.end());
  return CommutativityRelation::from_pairs(std::move(alphabet), pairs);
}

LockAbstraction abstract_synchronization(const ThreadTemplate& t) {
  LockAbstraction out;
  TemplateBuilder b;
  for (const auto& n : t.location_names()) b.location(n);
  b.init(t.location_name(t.init()));
  b.exit(t.location_name(t.exit()));
  std::set<std::string> taken;
  for (const auto& e : t.edges()) {
    if (!e.action.is_sync()) {
      b.edge(e.source, e.action, e.target);
      continue;
    }
    auto base = e.action.label() + "@" + t.location_name(e.source) + ">" +
                t.location_name(e.target);
    auto name = base;
    for (int k = 2; taken.count(name); ++k) name = base + "#" + std::to_string(k);
    taken.insert(name);
    out.fresh_actions.push_back(name);
    out.origin.emplace(name, e.action);
    b.edge(e.source, Action::plain(name), e.target);
  }
  out.templ = b.build();
  return out;
}

}  // namespace nred
