#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "nred/error.hpp"
#include "nred/gadgets.hpp"
#include "nred/oracle.hpp"

using namespace nred;
using namespace nred::testing;

namespace {

// Labels along the chain that leaves `from` by `first` and then follows
// single successors until `to`.
std::vector<std::string> chain(const ThreadTemplate& t, const std::string& from,
                               const std::string& first, const std::string& to) {
  std::vector<std::string> out;
  auto l = *t.find_location(from);
  const auto goal = *t.find_location(to);
  for (auto e : t.out_edges(l))
    if (t.edge(e).action.label() == first) {
      out.push_back(first);
      l = t.edge(e).target;
    }
  while (l != goal && out.size() < 64) {
    const auto& es = t.out_edges(l);
    if (es.size() != 1) break;
    out.push_back(t.edge(es[0]).action.label());
    l = t.edge(es[0]).target;
  }
  return out;
}

ThreadTemplate critical_section() {
  TemplateBuilder b;
  b.edge("l0", Action::acquire("m"), "l1")
      .edge("l1", Action::plain("x"), "l2")
      .edge("l2", Action::release("m"), "l3")
      .init("l0")
      .exit("l3");
  return b.build();
}

CnfFormula cnf(int vars, std::vector<std::vector<int>> clauses) { return {vars, std::move(clauses)}; }

}  // namespace

TEST(Dimacs, RoundTripAndErrors) {
  auto phi = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
  EXPECT_EQ(phi.num_vars, 3);
  EXPECT_EQ(phi.clauses, (std::vector<std::vector<int>>{{1, -2, 3}, {-1, 2, -3}}));
  auto again = parse_dimacs(to_dimacs(phi));
  EXPECT_EQ(again.clauses, phi.clauses);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2 x 0\n"), ParseError);
  EXPECT_EQ(literal_name(3), "x3");
  EXPECT_EQ(literal_name(-3), "~x3");
}

TEST(BruteSat, Examples) {
  EXPECT_TRUE(brute_sat(cnf(1, {{1, 1, 1}})));
  EXPECT_FALSE(brute_sat(cnf(1, {{1, 1, 1}, {-1, -1, -1}})));
  CnfFormula big{25, {{1, 2, 3}}};
  try {
    brute_sat(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::too_many_variables);
  }
}

TEST(SatGadget, ClauseBranchStructure) {
  // C2 = (x1 ∨ ¬x2 ∨ ¬x3) of a three-clause formula.
  auto g = sat_to_coverability(cnf(3, {{1, 2, 3}, {1, -2, -3}, {-1, 2, 3}}));
  EXPECT_EQ(g.configuration, (std::vector<std::string>{"t1::l1", "t2::l2", "t3::l3"}));
  EXPECT_EQ(chain(g.program.templ, "t2::init", "acq(m[2][x1])", "t2::l2"),
            (std::vector<std::string>{"acq(m[2][x1])", "acq(m[1][~x1])", "rel(m[1][~x1])",
                                      "acq(m[3][~x1])", "rel(m[3][~x1])"}));
  EXPECT_EQ(chain(g.program.templ, "t2::init", "acq(m[2][~x2])", "t2::l2"),
            (std::vector<std::string>{"acq(m[2][~x2])", "acq(m[1][x2])", "rel(m[1][x2])",
                                      "acq(m[3][x2])", "rel(m[3][x2])"}));
  EXPECT_EQ(g.program.templ.out_edges(*g.program.templ.find_location("t2::init")).size(), 3u);
  EXPECT_TRUE(validate_program(g.program).ok());
}

TEST(SatGadget, SmallFormulas) {
  auto unsat = sat_to_coverability(cnf(1, {{1, 1, 1}, {-1, -1, -1}}));
  EXPECT_FALSE(bounded_coverability(unsat.program,
                                    configuration(unsat.program.templ, unsat.configuration),
                                    {2, 64, std::nullopt})
                   .coverable);
  auto single = sat_to_coverability(cnf(2, {{1, -2, 2}}));
  EXPECT_TRUE(bounded_coverability(single.program,
                                   configuration(single.program.templ, single.configuration),
                                   {1, 64, std::nullopt})
                  .coverable);
}

TEST(SatGadget, MatchesBruteForce) {
  auto rng = seeded(51);
  for (int k = 0; k < 15; ++k) {
    auto phi = random_cnf(rng, 4, 3);
    auto g = sat_to_coverability(phi);
    auto r = bounded_coverability(
        g.program, configuration(g.program.templ, g.configuration),
        {static_cast<std::uint32_t>(phi.clauses.size()), 64, std::nullopt});
    EXPECT_EQ(r.coverable, brute_sat(phi)) << to_dimacs(phi);
  }
}

TEST(FusionGadget, ReachableExitIsUnsound) {
  ParameterizedProgram p{line({"a"}), SyncKind::trivial};
  auto g = coverability_to_fusion(p, {"q1"});
  EXPECT_TRUE(validate_program(g.program).ok());
  EXPECT_TRUE(validate_fusion(g.fusion, &g.program.templ).ok());
  EXPECT_FALSE(g.relation.contains("enter", "c[1]"));
  EXPECT_FALSE(g.relation.contains("c[1]", "leave"));
  EXPECT_TRUE(g.relation.contains("enter", "leave"));
  auto v = oracle_check_atomic(g.program.templ, g.fusion, g.relation, {2, 3, std::nullopt});
  EXPECT_EQ(v.result, Outcome::unsound);
}

TEST(FusionGadget, UnreachableIsSound) {
  TemplateBuilder b;
  b.edge("l0", Action::acquire("m"), "l1")
      .edge("l1", Action::acquire("m"), "l2")
      .edge("l2", Action::plain("x"), "l3")
      .edge("l0", Action::plain("y"), "l3")
      .init("l0")
      .exit("l3");
  ParameterizedProgram p{b.build(), SyncKind::locks};
  auto g = coverability_to_fusion(p, {"l2"});
  auto v = oracle_check_atomic(g.program.templ, g.fusion, g.relation, {3, 4, std::nullopt});
  EXPECT_EQ(v.result, Outcome::sound);
  EXPECT_EQ(v.certificate, kCertificateBounded);
}

TEST(SyncGadget, Structure) {
  ParameterizedProgram p{critical_section(), SyncKind::locks};
  auto g = coverability_to_syncpoint(p, {"l1", "l2", "l3"});
  const auto& t = g.program.templ;
  EXPECT_TRUE(validate_program(g.program).ok());
  EXPECT_TRUE(validate_instrumentation(g.instrumentation).ok());
  for (int i = 1; i <= 3; ++i)
    EXPECT_EQ(t.out_edges(*t.find_location("sync" + std::to_string(i) + ".L")).size(), 2u);
  try {
    coverability_to_syncpoint(p, {"l1"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation_error);
  }
  EXPECT_THROW(coverability_to_syncpoint(p, {"l1", "nowhere"}), Error);
}

TEST(SyncGadget, OracleMatchesCoverability) {
  ParameterizedProgram p{critical_section(), SyncKind::locks};
  auto none = [](const SyncGadget& g) {
    return CommutativityRelation::empty(g.program.templ.plain_alphabet());
  };
  // l1 and l3 together: one thread inside, one done.
  auto yes = coverability_to_syncpoint(p, {"l1", "l3"});
  EXPECT_EQ(oracle_check_sync(yes.instrumentation, none(yes), {2, 10, std::nullopt}).result,
            Outcome::unsound);
  // l1 and l2 together would need the lock twice.
  auto no = coverability_to_syncpoint(p, {"l1", "l2"});
  EXPECT_EQ(oracle_check_sync(no.instrumentation, none(no), {2, 10, std::nullopt}).result,
            Outcome::sound);
}

TEST(Bounded, SingleTemplate) {
  auto t = bounded_to_parameterized({line({"a"})});
  EXPECT_EQ(bounded_traces(t, 4), (std::set<std::vector<std::string>>{{"acq(slot[1])", "a"}}));
}

TEST(Bounded, TwoBranchesRunOnce) {
  auto t = bounded_to_parameterized({line({"a"}), line({"b"})});
  EXPECT_TRUE(validate_template(t).ok());
  auto ls = enumerate_interleavings({t, SyncKind::locks}, {3, 3, std::nullopt});
  for (const auto& tr : ls) {
    int a = 0, b = 0;
    for (const auto& e : tr) (e.action.name == "a" ? a : b)++;
    EXPECT_LE(a, 1) << to_string(tr);
    EXPECT_LE(b, 1) << to_string(tr);
  }
  EXPECT_FALSE(ls.empty());
}

TEST(Bounded, Collision) {
  try {
    bounded_to_parameterized({line({"a"}), line({"a", "b"})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::alphabet_collision);
  }
}

TEST(Gadgets, OutputsValidate) {
  auto rng = seeded(52);
  for (int k = 0; k < 40; ++k) {
    auto p = random_lock_program(rng, 6);
    const auto& names = p.templ.location_names();
    std::vector<std::string> c;
    for (int s = 0; s < 2; ++s) c.push_back(names[uniform(rng, 0, static_cast<int>(names.size()) - 1)]);
    auto f = coverability_to_fusion(p, c);
    EXPECT_TRUE(validate_program(f.program).ok());
    EXPECT_TRUE(validate_fusion(f.fusion, &f.program.templ).ok());
    auto s = coverability_to_syncpoint(p, c);
    EXPECT_TRUE(validate_program(s.program).ok());
    EXPECT_TRUE(validate_instrumentation(s.instrumentation).ok());
  }
}
