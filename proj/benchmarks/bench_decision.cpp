#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "nred/decision.hpp"
#include "nred/model.hpp"
#include "nred/oracle.hpp"

using namespace nred;

namespace {

std::string loc(std::size_t k) { return "l" + std::to_string(k); }

// Straight line a0 a1 … with the middle edge fused to a block B = x y and a
// sync-point a quarter of the way in.
struct Ladder {
  ThreadTemplate original;
  NaturalReductionSpec spec;
  CommutativityRelation relation;
};

Ladder ladder(std::size_t n) {
  TemplateBuilder outer;
  std::vector<std::string> names{"x", "y"};
  const std::size_t mid = n / 2;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (k == mid) {
      outer.edge(loc(k), Action::block("B"), loc(k + 1));
      continue;
    }
    names.push_back("a" + std::to_string(k));
    outer.edge(loc(k), Action::plain(names.back()), loc(k + 1));
  }
  outer.init(loc(0)).exit(loc(n - 1));
  TemplateBuilder body;
  body.edge("s", Action::plain("x"), "m").edge("m", Action::plain("y"), "t").init("s").exit("t");
  AtomicFusion f{outer.build(), {{"B", body.build()}}};
  Ladder l;
  l.original = substitute_blocks(f);
  l.spec.fusion = f;
  l.spec.instrumentation = insert_syncpoints(f.outer, {loc(n / 4)});
  std::vector<ActionPair> conflicts{{"x", "y"}, {"y", "x"}};
  for (std::size_t k = 0; k + 1 < n; k += 31)
    if (k != mid) conflicts.emplace_back("a" + std::to_string(k), "x");
  l.relation = CommutativityRelation::from_conflicts(names, conflicts);
  return l;
}

void BM_AtomicFusion(benchmark::State& state) {
  auto l = ladder(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(check_atomic_fusion(l.original, *l.spec.fusion, l.relation));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AtomicFusion)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_SyncInstrumentation(benchmark::State& state) {
  auto l = ladder(static_cast<std::size_t>(state.range(0)));
  auto lifted = lift_commutativity(l.relation, *l.spec.fusion);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_sync_instrumentation(*l.spec.instrumentation, lifted));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SyncInstrumentation)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_NaturalReduction(benchmark::State& state) {
  auto l = ladder(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(check_natural_reduction(l.original, l.spec, l.relation));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NaturalReduction)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_Covers(benchmark::State& state) {
  // ⟨a:1⟩^n ⟨b:2⟩^n reversed: n² swaps.
  const auto n = static_cast<std::size_t>(state.range(0));
  IndexedTrace src, dst;
  for (std::size_t k = 0; k < n; ++k) src.push_back({Action::plain("a"), 1});
  for (std::size_t k = 0; k < n; ++k) src.push_back({Action::plain("b"), 2});
  dst.assign(src.begin() + static_cast<long>(n), src.end());
  dst.insert(dst.end(), src.begin(), src.begin() + static_cast<long>(n));
  auto i = CommutativityRelation::full({"a", "b"});
  for (auto _ : state) benchmark::DoNotOptimize(try_covers(src, dst, i));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Covers)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_OracleAtomic(benchmark::State& state) {
  TemplateBuilder t;
  t.edge("l0", Action::plain("a"), "l2")
      .edge("l0", Action::plain("b1"), "l1")
      .edge("l1", Action::plain("b2"), "l2")
      .edge("l0", Action::plain("c"), "l2")
      .init("l0")
      .exit("l2");
  TemplateBuilder outer, body;
  outer.edge("l0", Action::plain("a"), "l2")
      .edge("l0", Action::block("B"), "l2")
      .edge("l0", Action::plain("c"), "l2")
      .init("l0")
      .exit("l2");
  body.edge("s", Action::plain("b1"), "m").edge("m", Action::plain("b2"), "t").init("s").exit("t");
  AtomicFusion f{outer.build(), {{"B", body.build()}}};
  auto i = CommutativityRelation::from_conflicts({"a", "b1", "b2", "c"},
                                                 {{"a", "b2"}, {"b1", "c"}});
  const Bounds b{static_cast<std::uint32_t>(state.range(0)), 2, std::nullopt};
  auto tmpl = t.build();
  for (auto _ : state) benchmark::DoNotOptimize(oracle_check_atomic(tmpl, f, i, b));
}
BENCHMARK(BM_OracleAtomic)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
