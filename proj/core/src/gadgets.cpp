#include "nred/gadgets.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "nred/error.hpp"

namespace nred {

namespace {

std::string indexed(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

// `name`, primed until it is not a location of `b`.
std::string fresh_location(const TemplateBuilder& b, std::string name) {
  while (b.has_location(name)) name += "'";
  return name;
}

void require_fresh_actions(const ThreadTemplate& t, const std::vector<std::string>& names) {
  auto alpha = t.named_alphabet();
  for (const auto& n : names)
    if (std::binary_search(alpha.begin(), alpha.end(), n))
      throw Error(ErrorCode::alphabet_collision, "action '" + n + "' already used by the program");
}

void require_fresh_locks(const ThreadTemplate& t, const std::vector<std::string>& names) {
  auto locks = t.locks();
  for (const auto& n : names)
    if (std::binary_search(locks.begin(), locks.end(), n))
      throw Error(ErrorCode::alphabet_collision, "lock '" + n + "' already used by the program");
}

}  // namespace

// ---------------------------------------------------------------------------
// CNF

std::string literal_name(int literal) {
  return (literal < 0 ? "~x" : "x") + std::to_string(std::abs(literal));
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula phi;
  bool header = false;
  std::vector<int> current;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt;
      long vars = 0, clauses = 0;
      if (!(ls >> fmt >> vars >> clauses) || fmt != "cnf" || vars <= 0 || clauses < 0)
        throw ParseError("malformed problem line", line_no, 1);
      phi.num_vars = static_cast<int>(vars);
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before problem line", line_no, 1);
    do {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw ParseError("bad literal '" + tok + "'", line_no, 1);
      if (v == 0) {
        if (current.size() != 3)
          throw ParseError("clause with " + std::to_string(current.size()) +
                               " literals (exactly 3 required)",
                           line_no, 1);
        phi.clauses.push_back(current);
        current.clear();
        continue;
      }
      if (std::abs(v) > phi.num_vars)
        throw ParseError("literal " + tok + " exceeds declared variables", line_no, 1);
      current.push_back(static_cast<int>(v));
    } while (ls >> tok);
  }
  if (!current.empty()) throw ParseError("unterminated clause", line_no, 1);
  if (!header) throw ParseError("missing problem line", 0, 0);
  return phi;
}

std::string to_dimacs(const CnfFormula& phi) {
  std::string s = "p cnf " + std::to_string(phi.num_vars) + " " +
                  std::to_string(phi.clauses.size()) + "\n";
  for (const auto& c : phi.clauses) {
    for (int l : c) s += std::to_string(l) + " ";
    s += "0\n";
  }
  return s;
}

bool brute_sat(const CnfFormula& phi) {
  if (phi.num_vars > 24)
    throw Error(ErrorCode::too_many_variables,
                std::to_string(phi.num_vars) + " variables (at most 24)");
  const std::uint32_t n = static_cast<std::uint32_t>(std::max(phi.num_vars, 0));
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    bool all = std::all_of(phi.clauses.begin(), phi.clauses.end(), [&](const auto& c) {
      return std::any_of(c.begin(), c.end(), [&](int l) {
        bool v = (a >> (std::abs(l) - 1)) & 1u;
        return l > 0 ? v : !v;
      });
    });
    if (all) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Reductions

FusionGadget coverability_to_fusion(const ParameterizedProgram& p,
                                    const std::vector<std::string>& c) {
  if (c.empty()) throw Error(ErrorCode::validation_error, "empty configuration");
  const auto& t = p.templ;
  std::vector<LocationId> locs;
  for (const auto& n : c) {
    auto l = t.find_location(n);
    if (!l) throw Error(ErrorCode::unknown_location, "unknown location '" + n + "'");
    locs.push_back(*l);
  }
  std::vector<std::string> fresh{"enter", "leave", "finish", "B"};
  for (std::size_t i = 1; i <= c.size(); ++i) fresh.push_back(indexed("c", i));
  require_fresh_actions(t, fresh);

  // Shared part: the program, c[i] edges and the finish edge into ℓab.
  TemplateBuilder shared(t);
  const auto l_ab = fresh_location(shared, "l_ab");
  const auto l_a = fresh_location(shared, "l_a");
  for (std::size_t i = 0; i < c.size(); ++i)
    shared.edge(c[i], Action::plain(indexed("c", i + 1)), l_ab);
  shared.edge(t.location_name(t.exit()), Action::plain("finish"), l_ab);
  shared.exit(l_ab);

  TemplateBuilder original(shared);
  original.edge(t.location_name(t.init()), Action::plain("enter"), l_a);
  original.edge(l_a, Action::plain("leave"), l_ab);

  TemplateBuilder outer(shared);
  outer.edge(t.location_name(t.init()), Action::block("B"), l_ab);

  TemplateBuilder body;
  body.edge("s", Action::plain("enter"), "a").edge("a", Action::plain("leave"), "ab");
  body.init("s").exit("ab");

  FusionGadget g;
  g.program = {original.build(), p.sync};
  g.fusion.outer = outer.build();
  g.fusion.blocks.emplace("B", body.build());

  auto alpha = g.program.templ.plain_alphabet();
  std::vector<ActionPair> conflicts;
  conflicts.emplace_back("enter", "c[1]");
  for (std::size_t i = 1; i < c.size(); ++i)
    conflicts.emplace_back(indexed("c", i), indexed("c", i + 1));
  conflicts.emplace_back(indexed("c", c.size()), "leave");
  g.relation = CommutativityRelation::from_conflicts(alpha, conflicts);
  return g;
}

ThreadTemplate bounded_to_parameterized(const std::vector<ThreadTemplate>& templates) {
  if (templates.empty()) throw Error(ErrorCode::validation_error, "no templates");
  std::set<std::string> seen;
  for (const auto& t : templates)
    for (const auto& a : t.plain_alphabet())
      if (!seen.insert(a).second)
        throw Error(ErrorCode::alphabet_collision, "action '" + a + "' used by two templates");
  std::vector<std::string> slots;
  for (std::size_t i = 1; i <= templates.size(); ++i) slots.push_back(indexed("slot", i));
  for (const auto& t : templates) require_fresh_locks(t, slots);

  TemplateBuilder b;
  b.location("init");
  b.location("exit");
  b.init("init").exit("exit");
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const auto& t = templates[i];
    const std::string prefix = "t" + std::to_string(i + 1) + "::";
    // The branch exit is merged into the common exit unless it has
    // successors, in which case a private lock edge leads there.
    const bool merge = t.out_edges(t.exit()).empty();
    auto name = [&](LocationId l) {
      if (merge && l == t.exit()) return std::string("exit");
      return prefix + t.location_name(l);
    };
    b.edge("init", Action::acquire(slots[i]), name(t.init()));
    for (const auto& e : t.edges()) b.edge(name(e.source), e.action, name(e.target));
    if (!merge) b.edge(name(t.exit()), Action::acquire(indexed("done", i + 1)), "exit");
  }
  return b.build();
}

CoverabilityInstance sat_to_coverability(const CnfFormula& phi) {
  if (phi.clauses.empty()) throw Error(ErrorCode::validation_error, "formula without clauses");
  for (const auto& c : phi.clauses) {
    if (c.size() != 3) throw Error(ErrorCode::validation_error, "clause without 3 literals");
    for (int l : c)
      if (l == 0 || std::abs(l) > phi.num_vars)
        throw Error(ErrorCode::validation_error, "literal over an undeclared variable");
  }
  const std::size_t n = phi.clauses.size();
  auto lock = [](std::size_t clause, int lit) {
    return indexed("m", clause) + "[" + literal_name(lit) + "]";
  };
  std::vector<ThreadTemplate> threads;
  std::vector<std::string> config;
  for (std::size_t i = 1; i <= n; ++i) {
    TemplateBuilder b;
    b.init("init").exit("exit");
    const std::string goal = "l" + std::to_string(i);
    for (std::size_t k = 0; k < 3; ++k) {
      const int l = phi.clauses[i - 1][k];
      std::string at = "init";
      auto step = [&](Action a, const std::string& to) {
        b.edge(at, std::move(a), to);
        at = to;
      };
      const std::string branch = "b" + std::to_string(k + 1) + ".";
      std::size_t s = 0;
      auto next = [&] { return branch + std::to_string(++s); };
      std::vector<Action> seq{Action::acquire(lock(i, l))};
      for (std::size_t j = 1; j <= n; ++j) {
        if (j == i) continue;
        seq.push_back(Action::acquire(lock(j, -l)));
        seq.push_back(Action::release(lock(j, -l)));
      }
      for (std::size_t q = 0; q < seq.size(); ++q)
        step(seq[q], q + 1 == seq.size() ? goal : next());
    }
    b.edge(goal, Action::plain(indexed("fin", i)), "exit");
    threads.push_back(b.build());
    config.push_back("t" + std::to_string(i) + "::" + goal);
  }
  CoverabilityInstance out;
  out.program = {bounded_to_parameterized(threads), SyncKind::locks};
  out.configuration = std::move(config);
  return out;
}

SyncGadget coverability_to_syncpoint(const ParameterizedProgram& p,
                                     const std::vector<std::string>& c) {
  const std::size_t n = c.size();
  if (n < 2) throw Error(ErrorCode::validation_error, "configuration needs at least two locations");
  const auto& t = p.templ;
  for (const auto& name : c)
    if (!t.find_location(name))
      throw Error(ErrorCode::unknown_location, "unknown location '" + name + "'");
  std::vector<std::string> locks, claims, actions{"finish"};
  for (std::size_t i = 1; i <= n; ++i) {
    locks.push_back(indexed("m", i));
    claims.push_back(indexed("claim", i));
    actions.push_back(indexed("c", i));
  }
  require_fresh_locks(t, locks);
  require_fresh_locks(t, claims);
  require_fresh_actions(t, actions);

  TemplateBuilder b(t);
  const auto exit = fresh_location(b, "sync.exit");
  b.location(exit);
  std::vector<std::string> unlock_points;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string pre = "sync" + std::to_string(i) + ".";
    const auto claimed = fresh_location(b, pre + "K");
    const auto start = fresh_location(b, pre + "C");
    const auto held = fresh_location(b, pre + "L");
    const auto done = fresh_location(b, pre + "U");
    // claim[i] is never released: each branch is taken by at most one thread.
    b.edge(c[i - 1], Action::acquire(claims[i - 1]), claimed);
    b.edge(claimed, Action::plain(indexed("c", i)), start);
    b.edge(start, Action::acquire(locks[i - 1]), held);
    for (std::size_t j = 1; j <= n; ++j) {
      if (j == i) continue;
      const auto probe = fresh_location(b, pre + std::to_string(j) + ".L");
      b.edge(held, Action::acquire(locks[j - 1]), probe);
      b.edge(probe, Action::release(locks[j - 1]), done);
    }
    b.edge(done, Action::release(locks[i - 1]), exit);
    unlock_points.push_back(done);
  }
  b.edge(t.location_name(t.exit()), Action::plain("finish"), exit);
  b.exit(exit);

  SyncGadget g;
  g.program = {b.build(), SyncKind::locks};
  g.instrumentation = insert_syncpoints(g.program.templ, unlock_points);
  return g;
}

}  // namespace nred
