#include "nred/decision.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "nred/error.hpp"
#include "nred/graph.hpp"

namespace nred {

bool ActionRelation::contains(const std::string& a, const std::string& b) const {
  auto i = std::lower_bound(alphabet.begin(), alphabet.end(), a);
  auto j = std::lower_bound(alphabet.begin(), alphabet.end(), b);
  if (i == alphabet.end() || *i != a || j == alphabet.end() || *j != b) return false;
  return m.test(static_cast<std::size_t>(i - alphabet.begin()),
                static_cast<std::size_t>(j - alphabet.begin()));
}

std::vector<ActionPair> ActionRelation::pairs() const {
  std::vector<ActionPair> out;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    m.for_each_in_row(i, [&](std::size_t j) { out.emplace_back(alphabet[i], alphabet[j]); });
  return out;
}

namespace {

// Named actions of a template, sorted, with the edge each one labels.
struct ActionIndex {
  std::vector<std::string> names;
  std::unordered_map<std::string, std::uint32_t> idx;
  std::vector<EdgeId> edge;

  explicit ActionIndex(const ThreadTemplate& t) : names(t.named_alphabet()) {
    for (std::uint32_t k = 0; k < names.size(); ++k) {
      idx.emplace(names[k], k);
      edge.push_back(*t.find_named_edge(names[k]));
    }
  }
  std::size_t size() const { return names.size(); }
  std::optional<std::uint32_t> find(const std::string& a) const {
    auto it = idx.find(a);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }
};

std::vector<bool> live_locations(const ThreadTemplate& t) {
  auto adj = location_graph(t);
  auto fwd = reachable_from(adj, t.init());
  auto bwd = coreachable_to(adj, t.exit());
  std::vector<bool> live(t.num_locations());
  for (std::size_t l = 0; l < live.size(); ++l) live[l] = fwd[l] && bwd[l];
  return live;
}

bool live_edge(const ThreadTemplate& t, const std::vector<bool>& live, EdgeId e) {
  return live[t.edge(e).source] && live[t.edge(e).target];
}

BitMatrix all_pairs(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j);
  return m;
}

BitMatrix po_matrix(const ThreadTemplate& t, const ActionIndex& ix) {
  const auto n = ix.size();
  const auto live = live_locations(t);
  auto reach = location_reachability(t);
  BitMatrix to_target(n, t.num_locations());
  BitMatrix from_source(t.num_locations(), n);
  for (std::uint32_t a = 0; a < n; ++a) {
    if (!live_edge(t, live, ix.edge[a])) continue;
    to_target.set(a, t.edge(ix.edge[a]).target);
    from_source.set(t.edge(ix.edge[a]).source, a);
  }
  auto po = compose(compose(to_target, reach), from_source);
  for (std::size_t a = 0; a < n; ++a) po.set(a, a);
  return po;
}

// at over the indices of `ix`; body actions missing from `ix` are skipped.
BitMatrix at_matrix(const AtomicFusion& f, const ActionIndex& ix) {
  BitMatrix at(ix.size(), ix.size());
  for (const auto& [sym, body] : f.blocks) {
    auto reach = location_reachability(body);
    for (const auto& eb : body.edges())
      for (const auto& ea : body.edges()) {
        auto a = ix.find(ea.action.name);
        auto b = ix.find(eb.action.name);
        if (a && b && reach.test(eb.target, ea.source)) at.set(*a, *b);
      }
  }
  return at;
}

ActionRelation to_relation(const ActionIndex& ix, BitMatrix m) {
  return {ix.names, std::move(m)};
}

std::vector<EdgeId> shortest_path(const ThreadTemplate& t, LocationId from, LocationId to) {
  std::vector<std::optional<EdgeId>> via(t.num_locations());
  std::vector<bool> seen(t.num_locations(), false);
  std::deque<LocationId> q{from};
  seen[from] = true;
  while (!q.empty() && !seen[to]) {
    auto l = q.front();
    q.pop_front();
    for (auto e : t.out_edges(l)) {
      auto d = t.edge(e).target;
      if (seen[d]) continue;
      seen[d] = true;
      via[d] = e;
      q.push_back(d);
    }
  }
  if (!seen[to])
    throw Error(ErrorCode::inconsistent_inputs,
                "no path from " + t.location_name(from) + " to " + t.location_name(to));
  std::vector<EdgeId> path;
  for (auto l = to; l != from; l = t.edge(*via[l]).source) path.push_back(*via[l]);
  std::reverse(path.begin(), path.end());
  return path;
}

struct AtomicContext {
  ThreadTemplate work;  // t with synchronization abstracted if needed
  std::map<std::string, Action> origin;
  ActionIndex ix;
  BitMatrix conflict;  // C
  BitMatrix po, at;

  Action action_of(const std::string& name) const {
    auto it = origin.find(name);
    return it == origin.end() ? Action::plain(name) : it->second;
  }
  void append_path(std::vector<Action>& out, LocationId from, LocationId to) const {
    for (auto e : shortest_path(work, from, to)) out.push_back(action_of_edge(e));
  }
  Action action_of_edge(EdgeId e) const {
    const auto& a = work.edge(e).action;
    return a.is_named() ? action_of(a.name) : a;
  }
};

// Body trace init → … → exit visiting `first`, then `second` (a distinct
// occurrence even when both are the same edge).
std::vector<std::string> body_trace_through(const ThreadTemplate& body, EdgeId first,
                                            EdgeId second, std::size_t* pos_first,
                                            std::size_t* pos_second) {
  std::vector<std::string> out;
  auto emit_path = [&](LocationId from, LocationId to) {
    for (auto e : shortest_path(body, from, to)) out.push_back(body.edge(e).action.name);
  };
  const auto& e1 = body.edge(first);
  const auto& e2 = body.edge(second);
  emit_path(body.init(), e1.source);
  out.push_back(e1.action.name);
  *pos_first = out.size();
  emit_path(e1.target, e2.source);
  out.push_back(e2.action.name);
  *pos_second = out.size();
  emit_path(e2.target, body.exit());
  return out;
}

// Alternating search a –R→ · –C→ · –R→ … –R→ b over J = R ∘ (C ∘ R)*.
bool interior_chain(const AtomicContext& cx, const BitMatrix& r, std::uint32_t a,
                    std::uint32_t b, std::vector<std::uint32_t>& nodes,
                    std::vector<std::string>& steps) {
  const auto n = cx.ix.size();
  // state = node * 2 + phase; phase 0: next step is R, phase 1: next is C
  std::vector<std::int64_t> parent(2 * n, -2);
  std::deque<std::uint32_t> q;
  parent[2 * a] = -1;
  q.push_back(2 * a);
  const std::uint32_t goal = 2 * b + 1;
  while (!q.empty() && parent[goal] == -2) {
    auto s = q.front();
    q.pop_front();
    auto x = s / 2;
    const auto& rel = (s % 2 == 0) ? r : cx.conflict;
    rel.for_each_in_row(x, [&](std::size_t y) {
      auto t = static_cast<std::uint32_t>(2 * y + (1 - s % 2));
      if (parent[t] != -2) return;
      parent[t] = s;
      q.push_back(t);
    });
  }
  if (parent[goal] == -2) return false;
  std::vector<std::uint32_t> states;
  for (std::int64_t s = goal; s != -1; s = parent[static_cast<std::size_t>(s)])
    states.push_back(static_cast<std::uint32_t>(s));
  std::reverse(states.begin(), states.end());
  nodes.clear();
  steps.clear();
  for (std::size_t k = 0; k < states.size(); ++k) {
    nodes.push_back(states[k] / 2);
    if (k == 0) continue;
    auto x = states[k - 1] / 2, y = states[k] / 2;
    if (states[k - 1] % 2 == 1)
      steps.push_back("conflict");
    else
      steps.push_back(cx.po.test(x, y) ? "po" : "at");
  }
  return true;
}

IndexedTrace induced_interleaving(const AtomicContext& cx, const AtomicFusion& f,
                                  const AtomicWitness& w, std::uint32_t* threads) {
  const auto& t = cx.work;
  struct Parts {
    std::vector<Action> rho, iota, sigma;
  };
  std::vector<Parts> parts;

  // thread 1: ρ0 z1…zm σ0
  Parts p0;
  auto first = *t.find_named_edge(w.body_trace.front());
  auto last = *t.find_named_edge(w.body_trace.back());
  cx.append_path(p0.rho, t.init(), t.edge(first).source);
  cx.append_path(p0.sigma, t.edge(last).target, t.exit());
  parts.push_back(std::move(p0));

  // chain = z_i, a1, b1, …, ap, bp, z_j
  for (std::size_t k = 1; k + 2 < w.chain.size(); k += 2) {
    const auto& a = w.chain[k];
    const auto& b = w.chain[k + 1];
    Parts p;
    if (w.steps[k] == "po") {
      auto ea = *t.find_named_edge(a);
      auto eb = *t.find_named_edge(b);
      cx.append_path(p.rho, t.init(), t.edge(ea).source);
      p.iota.push_back(cx.action_of(a));
      if (a != b) {
        cx.append_path(p.iota, t.edge(ea).target, t.edge(eb).source);
        p.iota.push_back(cx.action_of(b));
      }
      cx.append_path(p.sigma, t.edge(eb).target, t.exit());
    } else {
      // at(a,b): a body trace with b before a, run inside ι
      for (const auto& [sym, body] : f.blocks) {
        auto ea = body.find_named_edge(a);
        auto eb = body.find_named_edge(b);
        if (!ea || !eb) continue;
        std::size_t i1 = 0, i2 = 0;
        auto tr = body_trace_through(body, *eb, *ea, &i1, &i2);
        for (const auto& x : tr) p.iota.push_back(Action::plain(x));
        auto ef = *t.find_named_edge(tr.front());
        auto el = *t.find_named_edge(tr.back());
        cx.append_path(p.rho, t.init(), t.edge(ef).source);
        cx.append_path(p.sigma, t.edge(el).target, t.exit());
        break;
      }
    }
    parts.push_back(std::move(p));
  }

  IndexedTrace out;
  auto emit = [&](const std::vector<Action>& xs, std::uint32_t th) {
    for (const auto& x : xs) out.push_back({x, th});
  };
  for (std::uint32_t k = 0; k < parts.size(); ++k) emit(parts[k].rho, k + 1);
  for (std::size_t k = 0; k < w.i; ++k) out.push_back({Action::plain(w.body_trace[k]), 1});
  for (std::uint32_t k = 1; k < parts.size(); ++k) emit(parts[k].iota, k + 1);
  for (std::size_t k = w.i; k < w.body_trace.size(); ++k)
    out.push_back({Action::plain(w.body_trace[k]), 1});
  for (std::uint32_t k = 0; k < parts.size(); ++k) emit(parts[k].sigma, k + 1);
  *threads = static_cast<std::uint32_t>(parts.size());
  return out;
}

AtomicContext make_context(const ThreadTemplate& t, const AtomicFusion& f,
                           const CommutativityRelation& i, const DecisionOptions& opts,
                           Verdict* v) {
  ThreadTemplate work = t;
  std::map<std::string, Action> origin;
  if (t.has_lock_actions() || t.has_syncpoints()) {
    if (opts.strict_locks)
      throw Error(ErrorCode::not_applicable,
                  "template uses locks or sync-points; the atomicity check is exact only for "
                  "trivial synchronization");
    auto abs = abstract_synchronization(t);
    work = abs.templ;
    origin = abs.origin;
    if (v) {
      v->certificate = kCertificateAbstract;
      v->warnings.push_back(
          "lock and sync-point edges treated as plain actions that commute with nothing");
    }
  }
  ActionIndex ix(work);
  auto consistent = [&](const std::string& a) { return ix.find(a) || i.declared(a); };
  for (const auto& e : f.outer.edges())
    if (e.action.kind == ActionKind::plain && !consistent(e.action.name))
      throw Error(ErrorCode::inconsistent_inputs,
                  "fusion action " + e.action.name + " is unknown to the template and relation");
  for (const auto& [sym, body] : f.blocks)
    for (const auto& e : body.edges())
      if (!ix.find(e.action.name))
        throw Error(ErrorCode::inconsistent_inputs,
                    "block " + sym + " action " + e.action.name + " does not occur in the template");
  auto c = all_pairs(ix.size()).minus(i.matrix(ix.names));
  auto po = po_matrix(work, ix);
  auto at = at_matrix(f, ix);
  return {std::move(work), std::move(origin), std::move(ix), std::move(c), std::move(po),
          std::move(at)};
}

}  // namespace

ActionRelation program_order(const ThreadTemplate& t) {
  ActionIndex ix(t);
  return to_relation(ix, po_matrix(t, ix));
}

ActionRelation at_relation(const AtomicFusion& f) {
  TemplateBuilder b;
  b.init("i").exit("x");
  std::set<std::string> names;
  for (const auto& [sym, body] : f.blocks)
    for (const auto& e : body.edges()) names.insert(e.action.name);
  for (const auto& n : names) b.edge("i", Action::plain(n), "x");
  ActionIndex ix(b.build());
  return to_relation(ix, at_matrix(f, ix));
}

ActionRelation escape_relation(const ThreadTemplate& t, const AtomicFusion& f,
                               const CommutativityRelation& i) {
  auto cx = make_context(t, f, i, {}, nullptr);
  auto r = cx.po;
  r |= cx.at;
  auto inner = transitive_closure(compose(r, cx.conflict));
  return to_relation(cx.ix, compose(cx.conflict, inner));
}

Verdict check_atomic_fusion(const ThreadTemplate& t, const AtomicFusion& f,
                            const CommutativityRelation& i, const DecisionOptions& opts) {
  Verdict v;
  auto cx = make_context(t, f, i, opts, &v);
  for (const auto& w : validate_relation(i, cx.work).warnings) v.warnings.push_back(w);
  const auto n = cx.ix.size();

  // J = R ∘ (C ∘ R)*: the interior of a chain z –C→ a –J→ b –C→ z'.
  auto r = cx.po;
  r |= cx.at;
  auto star = transitive_closure(compose(cx.conflict, r));
  for (std::size_t k = 0; k < n; ++k) star.set(k, k);
  auto j = compose(r, star);
  auto conflict_t = cx.conflict.transposed();

  for (const auto& [sym, body] : f.blocks) {
    const auto k = body.num_edges();
    std::vector<std::uint32_t> act(k);
    for (EdgeId e = 0; e < k; ++e) act[e] = *cx.ix.find(body.edge(e).action.name);

    BitMatrix succ(k, k);
    for (EdgeId e = 0; e < k; ++e)
      for (auto g : body.out_edges(body.edge(e).target)) succ.set(e, g);
    auto sccs = scc(succ);
    auto reach = transitive_closure(succ);
    const auto ns = sccs.size();
    auto below = [&](std::size_t s1, std::size_t s2) {  // s1 ⪯ s2
      return s1 == s2 || reach.test(sccs.members[s1].front(), sccs.members[s2].front());
    };

    // Aset(S) = {a | some z ∈ S with (z,a) ∉ I}, Bset(S) = {b | some z' ∈ S with (b,z') ∉ I}
    BitMatrix aset(ns, n), bset(ns, n);
    for (std::size_t s = 0; s < ns; ++s)
      for (auto e : sccs.members[s]) {
        aset.or_row(s, cx.conflict.row(act[e]));
        bset.or_row(s, conflict_t.row(act[e]));
      }
    // restrict to ⪯-minimal / ⪯-maximal SCCs
    BitMatrix amin = aset, bmax = bset;
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t u = 0; u < ns; ++u) {
        if (u == s || !below(u, s)) continue;
        for (std::size_t w = 0; w < amin.row(s).size(); ++w) {
          amin.row(s)[w] &= ~aset.row(u)[w];
          bmax.row(u)[w] &= ~bset.row(s)[w];
        }
      }

    for (std::size_t s1 = 0; s1 < ns; ++s1) {
      BitMatrix image(1, n);
      amin.for_each_in_row(s1, [&](std::size_t a) { image.or_row(0, j.row(a)); });
      if (!image.row_any(0)) continue;
      for (std::size_t s2 = 0; s2 < ns; ++s2) {
        if (!below(s1, s2) || (s1 == s2 && !sccs.nontrivial[s1])) continue;
        std::optional<std::size_t> hit;
        bmax.for_each_in_row(s2, [&](std::size_t b) {
          if (!hit && image.test(0, b)) hit = b;
        });
        if (!hit) continue;

        // Witness.
        const auto b = static_cast<std::uint32_t>(*hit);
        std::uint32_t a = 0;
        std::optional<EdgeId> z, z2;
        amin.for_each_in_row(s1, [&](std::size_t x) {
          if (z || !j.test(x, b)) return;
          for (auto e : sccs.members[s1])
            if (cx.conflict.test(act[e], x)) {
              a = static_cast<std::uint32_t>(x);
              z = e;
              return;
            }
        });
        for (auto e : sccs.members[s2])
          if (!z2 && cx.conflict.test(b, act[e])) z2 = e;

        AtomicWitness w;
        w.block = sym;
        for (auto e : sccs.members[s1]) w.scc_first.push_back(cx.ix.names[act[e]]);
        for (auto e : sccs.members[s2]) w.scc_second.push_back(cx.ix.names[act[e]]);
        std::sort(w.scc_first.begin(), w.scc_first.end());
        std::sort(w.scc_second.begin(), w.scc_second.end());
        std::vector<std::uint32_t> nodes;
        std::vector<std::string> steps;
        interior_chain(cx, r, a, b, nodes, steps);
        w.chain.push_back(cx.ix.names[act[*z]]);
        w.steps.push_back("conflict");
        for (auto x : nodes) w.chain.push_back(cx.ix.names[x]);
        for (auto& s : steps) w.steps.push_back(s);
        w.steps.push_back("conflict");
        w.chain.push_back(cx.ix.names[act[*z2]]);
        w.body_trace = body_trace_through(body, *z, *z2, &w.i, &w.j);
        w.interleaving = induced_interleaving(cx, f, w, &w.threads);
        v.result = Outcome::unsound;
        v.witness = std::move(w);
        v.checked_conditions.push_back({"atomic-fusion", Outcome::unsound, "block " + sym});
        return v;
      }
    }
  }
  v.checked_conditions.push_back({"atomic-fusion", Outcome::sound, {}});
  return v;
}

// ---------------------------------------------------------------------------
// Sync-points

namespace {

struct PhaseData {
  ActionIndex ix;
  std::vector<bool> live_action;
  std::vector<PhaseBound> bound;
  ZeroOneResult shortest;
  std::vector<bool> live;
};

PhaseData compute_phases(const ThreadTemplate& g) {
  PhaseData d{ActionIndex(g), {}, {}, {}, live_locations(g)};
  const auto nl = g.num_locations();

  std::vector<std::vector<WeightedArc>> arcs(nl);
  std::vector<std::vector<std::uint32_t>> adj(nl);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!live_edge(g, d.live, e)) continue;
    const auto& ed = g.edge(e);
    auto w = ed.action.kind == ActionKind::syncpoint ? 1u : 0u;
    arcs[ed.source].push_back({ed.target, w, e});
    adj[ed.source].push_back(ed.target);
  }
  d.shortest = zero_one_bfs(arcs, g.init());

  // Longest •-count on the condensation; ∞ once an ancestor SCC has an
  // internal • edge.
  auto sccs = scc(adj);
  const auto k = sccs.size();
  constexpr std::uint64_t kNone = kInfinity - 1;
  std::vector<std::uint64_t> longest(k, kNone);
  std::vector<bool> pump(k, false);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!live_edge(g, d.live, e)) continue;
    const auto& ed = g.edge(e);
    if (ed.action.kind == ActionKind::syncpoint &&
        sccs.component[ed.source] == sccs.component[ed.target])
      pump[sccs.component[ed.source]] = true;
  }
  std::vector<std::vector<EdgeId>> leaving(k);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (live_edge(g, d.live, e)) leaving[sccs.component[g.edge(e).source]].push_back(e);
  if (d.live[g.init()]) longest[sccs.component[g.init()]] = 0;
  for (std::size_t c = k; c-- > 0;) {
    if (longest[c] == kNone) continue;
    for (auto e : leaving[c]) {
      const auto& ed = g.edge(e);
      auto c2 = sccs.component[ed.target];
      if (c2 == c) continue;
      auto w = ed.action.kind == ActionKind::syncpoint ? 1u : 0u;
      if (longest[c2] == kNone || longest[c] + w > longest[c2]) longest[c2] = longest[c] + w;
      if (pump[c]) pump[c2] = true;
    }
  }

  d.live_action.assign(d.ix.size(), false);
  d.bound.assign(d.ix.size(), {});
  for (std::uint32_t a = 0; a < d.ix.size(); ++a) {
    auto e = d.ix.edge[a];
    if (!live_edge(g, d.live, e)) continue;
    d.live_action[a] = true;
    auto src = g.edge(e).source;
    auto c = sccs.component[src];
    d.bound[a].min_count = d.shortest.dist[src];
    d.bound[a].max_count = pump[c] ? kInfinity : longest[c];
  }
  return d;
}

std::uint32_t require_live(const PhaseData& d, const ThreadTemplate& g, const std::string& a) {
  auto k = d.ix.find(a);
  if (!k || !d.live_action[*k])
    throw Error(ErrorCode::action_unreachable,
                "action " + a + " lies on no init-to-exit path of " +
                    (g.num_locations() ? g.location_name(g.init()) : std::string("template")));
  return *k;
}

std::vector<std::string> labels_of(const ThreadTemplate& g, const std::vector<EdgeId>& es) {
  std::vector<std::string> out;
  for (auto e : es) out.push_back(g.edge(e).action.label());
  return out;
}

// A path init → `to` crossing at least `k` sync-points (BFS over capped counts).
std::vector<EdgeId> path_with_syncpoints(const ThreadTemplate& g, const std::vector<bool>& live,
                                         LocationId to, std::uint64_t k) {
  const auto width = k + 1;
  auto id = [&](LocationId l, std::uint64_t c) { return l * width + c; };
  const auto states = g.num_locations() * width;
  std::vector<std::optional<std::pair<std::uint64_t, EdgeId>>> parent(states);
  std::vector<bool> seen(states, false);
  std::deque<std::uint64_t> q{id(g.init(), 0)};
  seen[id(g.init(), 0)] = true;
  const auto goal = id(to, k);
  while (!q.empty() && !seen[goal]) {
    auto s = q.front();
    q.pop_front();
    auto l = static_cast<LocationId>(s / width);
    auto c = s % width;
    for (auto e : g.out_edges(l)) {
      if (!live_edge(g, live, e)) continue;
      const auto& ed = g.edge(e);
      auto c2 = std::min<std::uint64_t>(k, c + (ed.action.kind == ActionKind::syncpoint));
      auto s2 = id(ed.target, c2);
      if (seen[s2]) continue;
      seen[s2] = true;
      parent[s2] = std::pair{s, e};
      q.push_back(s2);
    }
  }
  std::vector<EdgeId> path;
  if (!seen[goal]) return path;
  for (auto s = goal; parent[s]; s = parent[s]->first) path.push_back(parent[s]->second);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::uint64_t min_barrier_count(const ThreadTemplate& g, const std::string& a) {
  auto d = compute_phases(g);
  return d.bound[require_live(d, g, a)].min_count;
}

std::uint64_t max_barrier_count(const ThreadTemplate& g, const std::string& a) {
  auto d = compute_phases(g);
  return d.bound[require_live(d, g, a)].max_count;
}

PhaseBounds phase_bounds(const ThreadTemplate& g) {
  auto d = compute_phases(g);
  PhaseBounds out;
  for (std::uint32_t a = 0; a < d.ix.size(); ++a)
    if (d.live_action[a]) out.emplace(d.ix.names[a], d.bound[a]);
  return out;
}

ActionRelation phase_order(const ThreadTemplate& g) {
  auto d = compute_phases(g);
  const auto n = d.ix.size();
  BitMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!d.live_action[a]) continue;
    for (std::size_t b = 0; b < n; ++b)
      if (d.live_action[b] && d.bound[a].min_count < d.bound[b].max_count) m.set(a, b);
  }
  return to_relation(d.ix, std::move(m));
}

Verdict check_sync_instrumentation(const SyncPointInstrumentation& inst,
                                   const CommutativityRelation& i, const DecisionOptions& opts) {
  Verdict v;
  if (inst.base.has_lock_actions() || inst.instrumented.has_lock_actions()) {
    if (opts.strict_locks)
      throw Error(ErrorCode::not_applicable,
                  "sync-point soundness under lock semantics is coNP-hard; no exact check");
    v.result = Outcome::not_applicable;
    v.checked_conditions.push_back(
        {"sync-instrumentation", Outcome::not_applicable,
         "program uses locks; the phase-order criterion only applies to trivial synchronization"});
    return v;
  }
  const auto& g = inst.instrumented;
  for (const auto& w : validate_relation(i, g).warnings) v.warnings.push_back(w);
  auto d = compute_phases(g);
  const auto n = d.ix.size();
  auto imat = i.matrix(d.ix.names);

  for (std::uint32_t a = 0; a < n; ++a) {
    if (!d.live_action[a]) continue;
    for (std::uint32_t b = 0; b < n; ++b) {
      if (!d.live_action[b] || !(d.bound[a].min_count < d.bound[b].max_count)) continue;
      if (imat.test(b, a)) continue;
      SyncWitness w;
      w.a = d.ix.names[a];
      w.b = d.ix.names[b];
      auto src_a = g.edge(d.ix.edge[a]).source;
      std::vector<EdgeId> pa;
      for (auto l = src_a; l != g.init(); l = d.shortest.parent_node[l])
        pa.push_back(*d.shortest.parent_tag[l]);
      std::reverse(pa.begin(), pa.end());
      w.path_a = labels_of(g, pa);
      w.path_a.push_back(w.a);
      w.count_a = d.bound[a].min_count;
      auto pb = path_with_syncpoints(g, d.live, g.edge(d.ix.edge[b]).source,
                                     d.bound[a].min_count + 1);
      w.path_b = labels_of(g, pb);
      w.count_b = static_cast<std::uint64_t>(std::count(w.path_b.begin(), w.path_b.end(),
                                                        std::string(kSyncLabel)));
      w.path_b.push_back(w.b);
      v.result = Outcome::unsound;
      v.witness = std::move(w);
      v.checked_conditions.push_back({"sync-instrumentation", Outcome::unsound,
                                      "(" + d.ix.names[a] + "," + d.ix.names[b] + ")"});
      return v;
    }
  }
  v.checked_conditions.push_back({"sync-instrumentation", Outcome::sound, {}});
  return v;
}

CommutativityRelation lift_commutativity(const CommutativityRelation& i, const AtomicFusion& f) {
  std::set<std::string> orig_set;
  for (const auto& e : f.outer.edges())
    if (e.action.kind == ActionKind::plain) orig_set.insert(e.action.name);
  std::map<std::string, std::vector<std::string>> body_actions;
  for (const auto& [sym, body] : f.blocks)
    for (const auto& e : body.edges()) {
      orig_set.insert(e.action.name);
      body_actions[sym].push_back(e.action.name);
    }
  for (const auto& a : i.alphabet()) orig_set.insert(a);
  std::vector<std::string> orig(orig_set.begin(), orig_set.end());
  std::unordered_map<std::string, std::size_t> oidx;
  for (std::size_t k = 0; k < orig.size(); ++k) oidx.emplace(orig[k], k);
  auto im = i.matrix(orig);
  const auto no = orig.size();

  // Fused alphabet: outer plain actions (and every declared action that is
  // not inside a block) plus the block symbols.
  std::set<std::string> inside;
  for (const auto& [sym, acts] : body_actions) inside.insert(acts.begin(), acts.end());
  std::vector<std::string> fused;
  for (const auto& a : orig)
    if (!inside.count(a)) fused.push_back(a);
  for (const auto& [sym, body] : f.blocks) fused.push_back(sym);
  std::sort(fused.begin(), fused.end());
  fused.erase(std::unique(fused.begin(), fused.end()), fused.end());

  // members(x): body of x (or x itself); left(x) = {v | ∀u ∈ members(x). (u,v) ∈ I}
  const auto nf = fused.size();
  BitMatrix members(nf, no), left(nf, no);
  for (std::size_t x = 0; x < nf; ++x) {
    auto it = f.blocks.find(fused[x]);
    std::vector<std::string> us = it != f.blocks.end() ? body_actions[fused[x]]
                                                       : std::vector<std::string>{fused[x]};
    for (std::size_t w = 0; w < left.row(x).size(); ++w) {
      left.row(x)[w] = ~std::uint64_t{0};
    }
    for (const auto& u : us) {
      auto k = oidx.at(u);
      members.set(x, k);
      for (std::size_t w = 0; w < left.row(x).size(); ++w) {
        left.row(x)[w] &= im.row(k)[w];
      }
    }
  }
  BitMatrix lifted(nf, nf);
  for (std::size_t x = 0; x < nf; ++x)
    for (std::size_t y = 0; y < nf; ++y) {
      bool ok = true;
      for (std::size_t w = 0; ok && w < members.row(y).size(); ++w)
        ok = (members.row(y)[w] & ~left.row(x)[w]) == 0;
      if (ok) lifted.set(x, y);
    }
  return CommutativityRelation::from_matrix(std::move(fused), std::move(lifted));
}

Verdict check_natural_reduction(const ThreadTemplate& t, const NaturalReductionSpec& spec,
                                const CommutativityRelation& i, const DecisionOptions& opts) {
  Verdict v;
  auto absorb = [&](const Verdict& sub) {
    for (const auto& c : sub.checked_conditions) v.checked_conditions.push_back(c);
    for (const auto& w : sub.warnings)
      if (std::find(v.warnings.begin(), v.warnings.end(), w) == v.warnings.end())
        v.warnings.push_back(w);
    if (sub.certificate != kCertificateExact) v.certificate = sub.certificate;
    if (sub.result == Outcome::unsound && v.result != Outcome::unsound) {
      v.result = Outcome::unsound;
      v.witness = sub.witness;
    } else if (sub.result == Outcome::not_applicable && v.result == Outcome::sound) {
      v.result = Outcome::not_applicable;
    }
  };
  if (spec.fusion) absorb(check_atomic_fusion(t, *spec.fusion, i, opts));
  if (spec.instrumentation) {
    if (spec.fusion)
      absorb(check_sync_instrumentation(*spec.instrumentation, lift_commutativity(i, *spec.fusion),
                                        opts));
    else
      absorb(check_sync_instrumentation(*spec.instrumentation, i, opts));
  }
  return v;
}

}  // namespace nred
