#include <gtest/gtest.h>

#include <deque>
#include <map>

#include "fixtures.hpp"
#include "generators.hpp"
#include "nred/error.hpp"
#include "nred/oracle.hpp"
#include "reference.hpp"

using namespace nred;
using namespace nred::testing;

namespace {

IndexedTrace tr(std::string_view s) { return parse_trace(s); }

// Fewest admissible swaps from src to dst, or -1.
int swap_distance(const IndexedTrace& src, const IndexedTrace& dst,
                  const CommutativityRelation& i) {
  std::map<IndexedTrace, int> dist{{src, 0}};
  std::deque<IndexedTrace> q{src};
  while (!q.empty()) {
    auto t = q.front();
    q.pop_front();
    if (t == dst) return dist[t];
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      const auto& x = t[k];
      const auto& y = t[k + 1];
      if (x.thread == y.thread || !i.contains(x.action.label(), y.action.label())) continue;
      auto u = t;
      std::swap(u[k], u[k + 1]);
      if (dist.emplace(u, dist[t] + 1).second) q.push_back(u);
    }
  }
  return -1;
}

}  // namespace

TEST(LockPredicate, Examples) {
  EXPECT_TRUE(lock_feasible({}));
  EXPECT_TRUE(lock_feasible(tr("acq(m):1 rel(m):1 acq(m):2")));
  EXPECT_TRUE(lock_feasible(tr("acq(m):1 acq(n):2 rel(m):1")));
  EXPECT_FALSE(lock_feasible(tr("acq(m):1 acq(m):2")));
  EXPECT_FALSE(lock_feasible(tr("acq(m):1 rel(m):2")));
  EXPECT_FALSE(lock_feasible(tr("rel(m):1")));
}

TEST(LockPredicate, MatchesPattern) {
  auto rng = seeded(41);
  const std::vector<Action> acts{Action::acquire("m"), Action::release("m"),
                                 Action::acquire("n"), Action::release("n"),
                                 Action::plain("x")};
  for (int k = 0; k < 3000; ++k) {
    IndexedTrace t;
    const int len = uniform(rng, 0, 8);
    for (int s = 0; s < len; ++s)
      t.push_back({acts[uniform(rng, 0, 4)], static_cast<std::uint32_t>(uniform(rng, 1, 3))});
    EXPECT_EQ(lock_feasible(t), reference_lock_feasible(t)) << to_string(t);
  }
}

TEST(BarrierPredicate, Examples) {
  EXPECT_TRUE(barrier_feasible({}));
  EXPECT_TRUE(barrier_feasible(tr("a:1 b:2")));
  EXPECT_TRUE(barrier_feasible(tr("•:1 •:2")));
  EXPECT_TRUE(barrier_feasible(tr("a:1 •:2 •:1 b:2")));
  // A rendezvous is one contiguous block of • steps.
  EXPECT_FALSE(barrier_feasible(tr("•:2 a:1 •:1")));
  EXPECT_FALSE(barrier_feasible(tr("•:1 •:1 •:2")));
}

TEST(BarrierPredicate, MatchesLiteralRecursion) {
  auto rng = seeded(42);
  const std::vector<Action> acts{Action::syncpoint(), Action::syncpoint(), Action::plain("x")};
  for (int k = 0; k < 3000; ++k) {
    IndexedTrace t;
    const int len = uniform(rng, 0, 9);
    for (int s = 0; s < len; ++s)
      t.push_back({acts[uniform(rng, 0, 2)], static_cast<std::uint32_t>(uniform(rng, 1, 3))});
    EXPECT_EQ(barrier_feasible(t), reference_barrier_feasible(t)) << to_string(t);
  }
}

TEST(Covers, Examples) {
  auto full = CommutativityRelation::full({"a", "b"});
  auto none = CommutativityRelation::empty({"a", "b"});
  auto r = try_covers(tr("a:1 b:2"), tr("b:2 a:1"), full);
  EXPECT_EQ(r.result, Tri::yes);
  EXPECT_EQ(r.states, 1u);
  EXPECT_EQ(try_covers(tr("a:1 b:2"), tr("b:2 a:1"), none).result, Tri::no);
  EXPECT_EQ(try_covers(tr("a:1 b:1"), tr("b:1 a:1"), full).result, Tri::no);
  EXPECT_TRUE(covers(tr("a:1 b:2"), tr("a:1 b:2"), none));
  // Direction matters: only ⟨a⟩⟨b⟩ → ⟨b⟩⟨a⟩ is allowed.
  auto ab = CommutativityRelation::from_pairs({"a", "b"}, {{"a", "b"}});
  EXPECT_TRUE(covers(tr("a:1 b:2"), tr("b:2 a:1"), ab));
  EXPECT_FALSE(covers(tr("b:2 a:1"), tr("a:1 b:2"), ab));
}

TEST(Covers, DepthExceeded) {
  auto full = CommutativityRelation::full({"a", "b"});
  auto src = tr("a:1 a:1 b:2 b:2");
  auto dst = tr("b:2 b:2 a:1 a:1");
  EXPECT_EQ(try_covers(src, dst, full, 3).result, Tri::unknown);
  EXPECT_EQ(try_covers(src, dst, full, 4).result, Tri::yes);
  try {
    covers(src, dst, full, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::depth_exceeded);
  }
}

TEST(Covers, MatchesBreadthFirstSearch) {
  auto rng = seeded(43);
  const std::vector<std::string> sigma{"a", "b", "c"};
  for (int k = 0; k < 400; ++k) {
    auto i = random_relation(rng, sigma, 0.6);
    auto src = random_trace(rng, uniform(rng, 0, 6), sigma, 3);
    auto closure = swap_closure(src, i);
    std::vector<IndexedTrace> pool(closure.begin(), closure.end());
    auto dst = coin(rng, 0.5) && !pool.empty()
                   ? pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)]
                   : random_trace(rng, src.size(), sigma, 3);
    auto r = try_covers(src, dst, i);
    const int d = swap_distance(src, dst, i);
    EXPECT_EQ(r.result == Tri::yes, d >= 0) << to_string(src) << " → " << to_string(dst);
    EXPECT_EQ(r.result == Tri::yes, reference_covers(src, dst, i));
    if (d >= 0) EXPECT_EQ(r.states, static_cast<std::uint64_t>(d));
  }
}

TEST(Enumerate, StraightLine) {
  ParameterizedProgram p{line({"a", "b"}), SyncKind::trivial};
  auto ls = enumerate_interleavings(p, {2, 2, std::nullopt});
  // Runs of one or two threads; no empty program.
  std::vector<IndexedTrace> want{
      tr("a:1 a:2 b:1 b:2"),
      tr("a:1 a:2 b:2 b:1"),
      tr("a:1 b:1"),
      tr("a:1 b:1 a:2 b:2"),
  };
  std::sort(want.begin(), want.end());
  EXPECT_EQ(ls, want);
}

TEST(Enumerate, LocalLengthBound) {
  ParameterizedProgram p{line({"a", "b", "c"}), SyncKind::trivial};
  EXPECT_TRUE(enumerate_interleavings(p, {2, 2, std::nullopt}).empty());
}

TEST(Enumerate, LocksExcludeOverlap) {
  TemplateBuilder b;
  b.edge("l0", Action::acquire("m"), "l1")
      .edge("l1", Action::plain("x"), "l2")
      .edge("l2", Action::release("m"), "l3")
      .init("l0")
      .exit("l3");
  auto ls = enumerate_interleavings({b.build(), SyncKind::locks}, {2, 3, std::nullopt});
  EXPECT_EQ(ls, (std::vector<IndexedTrace>{tr("x:1"), tr("x:1 x:2")}));
}

TEST(Enumerate, SyncPointsAlign) {
  auto f = phased();
  ParameterizedProgram p{f.inst.instrumented, SyncKind::locks_and_syncpoints};
  auto ls = enumerate_interleavings(p, {2, 3, std::nullopt});
  // Every a precedes every b, every b precedes every c.
  for (const auto& t : ls) {
    std::string last = "a";
    for (const auto& e : t) {
      EXPECT_GE(e.action.name, last) << to_string(t);
      last = e.action.name;
    }
  }
  EXPECT_TRUE(std::find(ls.begin(), ls.end(), tr("a:1 a:2 b:2 b:1 c:1 c:2")) != ls.end());
}

TEST(Mazurkiewicz, Examples) {
  auto full = CommutativityRelation::full({"a", "b"});
  auto none = CommutativityRelation::empty({"a", "b"});
  std::vector<IndexedTrace> l1{tr("a:1 b:2")};
  std::vector<IndexedTrace> l2{tr("a:1 b:2"), tr("b:2 a:1")};
  EXPECT_EQ(is_mazurkiewicz_reduction(l1, l2, full).holds, Tri::yes);
  auto r = is_mazurkiewicz_reduction(l1, l2, none);
  EXPECT_EQ(r.holds, Tri::no);
  EXPECT_EQ(r.counterexample, tr("b:2 a:1"));
  EXPECT_EQ(is_mazurkiewicz_reduction(l2, l1, full).holds, Tri::no);
  // Up to renaming, ⟨b:1⟩⟨a:2⟩ names the same trace as ⟨b:2⟩⟨a:1⟩.
  std::vector<IndexedTrace> l3{tr("a:1 b:2"), tr("b:1 a:2")};
  EXPECT_EQ(is_mazurkiewicz_reduction(l1, l3, full).holds, Tri::no);
  EXPECT_EQ(is_mazurkiewicz_reduction(l1, l3, full, std::nullopt, true).holds, Tri::yes);
}

TEST(Mazurkiewicz, MatchesReference) {
  auto rng = seeded(44);
  const std::vector<std::string> sigma{"a", "b"};
  for (int k = 0; k < 300; ++k) {
    auto i = random_relation(rng, sigma, 0.6);
    std::vector<IndexedTrace> l2, l1;
    const int n = uniform(rng, 1, 4);
    const auto len = static_cast<std::size_t>(uniform(rng, 1, 4));
    for (int s = 0; s < n; ++s) l2.push_back(random_trace(rng, len, sigma, 2));
    std::sort(l2.begin(), l2.end());
    l2.erase(std::unique(l2.begin(), l2.end()), l2.end());
    for (const auto& t : l2)
      if (coin(rng, 0.6)) l1.push_back(t);
    auto r = is_mazurkiewicz_reduction(l1, l2, i);
    EXPECT_EQ(r.holds == Tri::yes, reference_reduction(l1, l2, i));
  }
}

TEST(Canonical, RenamesByFirstAppearance) {
  EXPECT_EQ(canonical_threads(tr("a:3 b:1 c:3")), tr("a:1 b:2 c:1"));
}

TEST(Representative, Branches) {
  auto f = branches();
  ReductionTarget target{f.fusion.outer, f.fusion.blocks};
  // c moves right past b2 since (c,b2) ∈ I.
  EXPECT_TRUE(has_representative(target, tr("b1:1 c:2 b2:1"), f.i));
  // a cannot pass b2, but b1 can pass a.
  EXPECT_TRUE(has_representative(target, tr("b1:1 a:2 b2:1"), f.i));
  auto blocked = f.i.without({{"b1", "a"}});
  EXPECT_FALSE(has_representative(target, tr("b1:1 a:2 b2:1"), blocked));
}

TEST(Oracle, RunningExamples) {
  auto a = branches();
  Bounds b{2, 2, std::nullopt};
  EXPECT_EQ(oracle_check_atomic(a.original, a.fusion, a.i, b).result, Outcome::sound);
  auto v = oracle_check_atomic(a.original, a.fusion, a.i_prime, b);
  EXPECT_EQ(v.result, Outcome::unsound);
  EXPECT_EQ(v.certificate, kCertificateBounded);
  EXPECT_TRUE(std::holds_alternative<TraceWitness>(*v.witness));

  auto s = phased();
  Bounds bs{2, 3, std::nullopt};
  EXPECT_EQ(oracle_check_sync(s.inst, s.i, bs).result, Outcome::sound);
  EXPECT_EQ(oracle_check_sync(s.inst, s.i_prime, bs).result, Outcome::unsound);
}

TEST(Oracle, EnginesAgree) {
  auto rng = seeded(45);
  for (int k = 0; k < 60; ++k) {
    auto inst = random_instance(rng);
    Bounds b{2, 4, std::nullopt};
    auto x = oracle_check_natural(inst.original, inst.spec, inst.relation, b,
                                  {OracleEngine::frontier, 200000});
    auto y = oracle_check_natural(inst.original, inst.spec, inst.relation, b,
                                  {OracleEngine::explicit_sets, 200000});
    if (x.result == Outcome::inconclusive || y.result == Outcome::inconclusive) continue;
    EXPECT_EQ(x.result, y.result) << "seed " << inst.seed;
  }
}

TEST(Oracle, BudgetGivesInconclusive) {
  auto a = branches();
  auto v = oracle_check_atomic(a.original, a.fusion, a.i, {3, 2, std::nullopt},
                               {OracleEngine::explicit_sets, 1});
  EXPECT_EQ(v.result, Outcome::inconclusive);
}

TEST(Coverability, Examples) {
  TemplateBuilder b;
  b.edge("l0", Action::acquire("m"), "l1")
      .edge("l1", Action::plain("x"), "l2")
      .edge("l2", Action::release("m"), "l3")
      .init("l0")
      .exit("l3");
  auto t = b.build();
  ParameterizedProgram p{t, SyncKind::locks};
  auto c = configuration(t, {"l1", "l2"});
  EXPECT_FALSE(bounded_coverability(p, c, {3, 8, std::nullopt}).coverable);
  auto d = configuration(t, {"l1", "l3"});
  auto r = bounded_coverability(p, d, {2, 8, std::nullopt});
  ASSERT_TRUE(r.coverable);
  EXPECT_TRUE(lock_feasible(*r.witness));
  EXPECT_FALSE(bounded_coverability(p, d, {1, 8, std::nullopt}).coverable);
  EXPECT_THROW(configuration(t, {"nowhere"}), Error);
}

TEST(Coverability, MonotoneInThreads) {
  auto rng = seeded(46);
  for (int k = 0; k < 60; ++k) {
    auto p = random_lock_program(rng, 6);
    const auto& names = p.templ.location_names();
    std::vector<std::string> c{names[uniform(rng, 0, static_cast<int>(names.size()) - 1)],
                               names[uniform(rng, 0, static_cast<int>(names.size()) - 1)]};
    auto cfg = configuration(p.templ, c);
    bool before = false;
    for (std::uint32_t n = 1; n <= 3; ++n) {
      auto r = bounded_coverability(p, cfg, {n, 8, std::nullopt});
      if (before) EXPECT_TRUE(r.coverable) << k << " threads " << n;
      if (r.coverable) EXPECT_TRUE(lock_feasible(*r.witness));
      before = r.coverable;
    }
  }
}
