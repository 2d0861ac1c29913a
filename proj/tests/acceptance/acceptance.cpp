// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"
#include "nred/decision.hpp"
#include "nred/format.hpp"
#include "nred/gadgets.hpp"
#include "nred/movers.hpp"
#include "nred/oracle.hpp"
#include "reference.hpp"

using namespace nred;
using namespace nred::testing;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return read_file(std::string(NRED_DATA_DIR) + "/" + name); }

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<bool(std::ostream&)> body;
};

cli::Outcome check(const std::string& mode, const std::string& file) {
  cli::CheckRequest req;
  req.mode = mode;
  req.input = file;
  return cli::run(req, data(file));
}

// 1 ------------------------------------------------------------------------

bool branches(std::ostream& note) {
  auto sound = check("atomic", "branches.nred");
  auto unsound = check("atomic", "branches_tight.nred");
  note << "I: " << sound.report.result << ", I': " << unsound.report.result;
  if (sound.report.result != "sound" || sound.exit_code != 0) return false;
  if (unsound.report.result != "unsound" || unsound.exit_code != 1) return false;
  const auto* w = unsound.report.witness ? std::get_if<AtomicWitness>(&*unsound.report.witness)
                                         : nullptr;
  if (!w) return false;
  auto in = parse_input(data("branches_tight.nred"));
  const Bounds b{2, 2, std::nullopt};
  auto l2 = enumerate_interleavings(in.program, b);
  const bool in_language =
      std::binary_search(l2.begin(), l2.end(), canonical_threads(w->interleaving));
  const bool represented =
      has_representative({in.spec.fusion->outer, in.spec.fusion->blocks}, w->interleaving,
                         in.relation);
  auto oracle = oracle_check_atomic(in.program.templ, *in.spec.fusion, in.relation, b);
  note << "; witness " << to_string(w->interleaving) << (in_language ? " in L(P)" : " NOT in L(P)")
       << (represented ? ", has a representative" : ", no representative")
       << "; oracle(2 threads, len 2): " << to_string(oracle.result);
  return in_language && !represented && oracle.unsound();
}

// 2 ------------------------------------------------------------------------

bool phased(std::ostream& note) {
  auto sound = check("sync", "phased.nred");
  auto unsound = check("sync", "phased_tight.nred");
  note << "I: " << sound.report.result << ", I': " << unsound.report.result;
  if (sound.report.result != "sound" || unsound.report.result != "unsound") return false;
  const auto* w = unsound.report.witness ? std::get_if<SyncWitness>(&*unsound.report.witness)
                                         : nullptr;
  if (!w) return false;
  note << " (" << w->a << "," << w->b << ")";
  if (!((w->a == "b" && w->b == "c") || (w->a == "c" && w->b == "b"))) return false;
  const std::map<std::string, std::string> want{{"a", "both"}, {"b", "non"}, {"c", "non"}};
  for (const char* f : {"phased.nred", "phased_tight.nred"}) {
    auto m = check("movers", f);
    if (m.report.movers != want) {
      note << "; movers of " << f << " differ";
      return false;
    }
  }
  note << "; movers a: both, b: non, c: non for both relations";
  return true;
}

// 3, 4 ---------------------------------------------------------------------

constexpr std::uint64_t kCorpusSeed = 0x5eed0003;
constexpr std::size_t kCorpusSize = 500;

const std::vector<Instance>& corpus() {
  static const std::vector<Instance> c = [] {
    auto rng = seeded(kCorpusSeed);
    std::vector<Instance> out;
    for (std::size_t k = 0; k < kCorpusSize; ++k) out.push_back(random_instance(rng));
    return out;
  }();
  return c;
}

// Threads for the oracle: length of the witness chain plus one, at most 4.
std::uint32_t oracle_threads(const Verdict& v) {
  std::uint32_t chain = 3;  // no witness: use the cap
  if (v.witness) {
    if (const auto* a = std::get_if<AtomicWitness>(&*v.witness))
      chain = static_cast<std::uint32_t>((a->chain.size() - 2) / 2 + 1);
    else
      chain = 1;
  }
  return std::min<std::uint32_t>(chain + 1, 4);
}

bool agreement(std::ostream& note) {
  std::size_t agree = 0, disagree = 0, inconclusive = 0, unsound = 0;
  for (const auto& inst : corpus()) {
    auto v = check_natural_reduction(inst.original, inst.spec, inst.relation);
    const Bounds b{oracle_threads(v), 8, 64};
    auto o = oracle_check_natural(inst.original, inst.spec, inst.relation, b,
                                  {OracleEngine::frontier, 2000000});
    if (o.result == Outcome::inconclusive) {
      ++inconclusive;
      continue;
    }
    if (o.result == v.result) {
      ++agree;
      unsound += v.unsound();
    } else {
      ++disagree;
      std::cerr << "  disagreement on instance seed " << inst.seed << ": algorithm "
                << to_string(v.result) << ", oracle " << to_string(o.result) << "\n";
    }
  }
  note << corpus().size() << " instances, " << agree << " agree (" << unsound << " unsound), "
       << disagree << " disagree, " << inconclusive << " oracle-inconclusive";
  return corpus().size() >= 500 && disagree == 0;
}

bool lipton(std::ostream& note) {
  std::size_t fused = 0, false_cert = 0, incomplete = 0, sym = 0, sym_violations = 0;
  for (const auto& inst : corpus()) {
    if (!inst.spec.fusion) continue;
    ++fused;
    const auto& f = *inst.spec.fusion;
    auto alg = check_atomic_fusion(inst.original, f, inst.relation);
    auto lr = lipton_check(f, inst.relation);
    if (lr.result == LiptonResult::certified_sound && alg.unsound()) ++false_cert;
    if (lr.result == LiptonResult::unknown && alg.sound()) ++incomplete;
    for (const auto& s : {inst.relation.symmetric_core(), inst.relation.symmetric_closure()}) {
      ++sym;
      if (check_atomic_fusion(inst.original, f, s).sound() &&
          lipton_check(f, s).result != LiptonResult::certified_sound) {
        ++sym_violations;
        std::cerr << "  symmetric instance seed " << inst.seed << " sound but not in Lipton form\n";
      }
    }
  }
  auto in = parse_input(data("branches.nred"));
  const bool regression =
      check_atomic_fusion(in.program.templ, *in.spec.fusion, in.relation).sound() &&
      lipton_check(*in.spec.fusion, in.relation).result == LiptonResult::unknown;
  note << fused << " fused instances: " << false_cert << " (certified, unsound), " << incomplete
       << " (unknown, sound); branches (unknown, sound): " << (regression ? "yes" : "no") << "; "
       << sym << " symmetrized checks, " << sym_violations << " violations";
  return false_cert == 0 && incomplete >= 1 && regression && sym_violations == 0;
}

// 5 ------------------------------------------------------------------------

bool sat(std::ostream& note) {
  auto rng = seeded(0x5eed0005);
  std::size_t agree = 0, satisfiable = 0;
  const std::size_t n = 20;
  for (std::size_t k = 0; k < n; ++k) {
    auto phi = random_cnf(rng, 4, 4);
    auto inst = sat_to_coverability(phi);
    const Bounds b{static_cast<std::uint32_t>(phi.clauses.size()), 64, std::nullopt};
    auto r = bounded_coverability(inst.program, configuration(inst.program.templ, inst.configuration), b);
    const bool s = brute_sat(phi);
    satisfiable += s;
    if (s == r.coverable)
      ++agree;
    else
      std::cerr << "  formula " << k << " disagrees:\n" << to_dimacs(phi);
  }
  note << agree << "/" << n << " formulas agree (" << satisfiable << " satisfiable)";
  return agree == n;
}

// 6 ------------------------------------------------------------------------

// Longest per-thread run in a coverability witness.
std::uint32_t longest_run(const std::optional<IndexedTrace>& w) {
  std::map<std::uint32_t, std::uint32_t> len;
  std::uint32_t best = 0;
  if (w)
    for (const auto& e : *w) best = std::max(best, ++len[e.thread]);
  return best;
}

bool gadgets(std::ostream& note) {
  auto rng = seeded(0x5eed0006);
  const std::size_t n = 20;
  std::size_t coverable = 0, fusion_agree = 0, sync_agree = 0, inconclusive = 0;
  for (std::size_t k = 0; k < n; ++k) {
    auto p = random_lock_program(rng, 6);
    const auto& names = p.templ.location_names();
    std::vector<std::string> c{names[uniform(rng, 0, static_cast<int>(names.size()) - 1)],
                               names[uniform(rng, 0, static_cast<int>(names.size()) - 1)]};
    auto cov = bounded_coverability(p, configuration(p.templ, c), {2, 64, std::nullopt});
    coverable += cov.coverable;
    // Enough steps for the covering run plus the gadget suffix.
    const std::uint32_t reach =
        cov.coverable ? longest_run(cov.witness) : static_cast<std::uint32_t>(names.size());

    auto fg = coverability_to_fusion(p, c);
    auto fo = oracle_check_atomic(fg.program.templ, fg.fusion, fg.relation,
                                  {3, std::max<std::uint32_t>(reach + 1, 2), std::nullopt});
    auto sg = coverability_to_syncpoint(p, c);
    auto so = oracle_check_sync(sg.instrumentation,
                                CommutativityRelation::empty(sg.program.templ.plain_alphabet()),
                                {2, reach + 6, std::nullopt});
    inconclusive += (fo.result == Outcome::inconclusive) + (so.result == Outcome::inconclusive);
    const bool fa = fo.unsound() == cov.coverable && fo.result != Outcome::inconclusive;
    const bool sa = so.unsound() == cov.coverable && so.result != Outcome::inconclusive;
    fusion_agree += fa;
    sync_agree += sa;
    if (!fa || !sa)
      std::cerr << "  program " << k << " [" << c[0] << ", " << c[1] << "] coverable "
                << cov.coverable << ": fusion oracle " << to_string(fo.result)
                << ", sync oracle " << to_string(so.result) << "\n"
                << write_nred(make_document("p", p.templ, {}, std::nullopt));
  }
  note << n << " lock programs (" << coverable << " coverable): fusion gadget " << fusion_agree
       << "/" << n << ", sync gadget " << sync_agree << "/" << n << " agree, " << inconclusive
       << " inconclusive";
  return fusion_agree == n && sync_agree == n;
}

// 7 ------------------------------------------------------------------------

// Least-squares polynomial fit of degree d; returns R².
double r_squared(const std::vector<double>& x, const std::vector<double>& y, int d) {
  const int m = d + 1;
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t k = 0; k < x.size(); ++k)
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) a[r][c] += std::pow(x[k], r + c);
      a[r][m] += std::pow(x[k], r) * y[k];
    }
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    for (int r = 0; r < m; ++r) {
      if (r == col || a[col][col] == 0) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> coef(m);
  for (int r = 0; r < m; ++r) coef[r] = a[r][r] == 0 ? 0 : a[r][m] / a[r][r];
  double mean = 0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0, ss_tot = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double f = 0;
    for (int r = 0; r < m; ++r) f += coef[r] * std::pow(x[k], r);
    ss_res += (y[k] - f) * (y[k] - f);
    ss_tot += (y[k] - mean) * (y[k] - mean);
  }
  return ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
}

bool scaling(std::ostream& note) {
  const std::vector<std::size_t> sizes{100, 200, 500, 1000, 2000, 5000, 10000};
  std::vector<double> xs, ys;
  for (auto n : sizes) {
    auto c = chain_instance(n);
    std::vector<double> runs;
    for (int rep = 0; rep < (n <= 1000 ? 5 : 1); ++rep) {
      auto t0 = std::chrono::steady_clock::now();
      auto v = check_natural_reduction(c.original, c.spec, c.relation);
      runs.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      if (v.result == Outcome::inconclusive) return false;
    }
    std::sort(runs.begin(), runs.end());
    xs.push_back(static_cast<double>(n) / 10000.0);
    ys.push_back(runs[runs.size() / 2]);
  }
  const double r2 = r_squared(xs, ys, 3);
  const double exponent = std::log(ys.back() / ys[3]) / std::log(10.0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "t(1e2)=%.4fs t(1e3)=%.4fs t(1e4)=%.3fs; cubic fit R²=%.4f; "
                "growth exponent 1e3→1e4: %.2f", ys[0], ys[3], ys.back(), r2, exponent);
  note << buf;
  return r2 >= 0.9 && exponent <= 3.0 + 0.5;
}

// 8 ------------------------------------------------------------------------

bool semantics(std::ostream& note) {
  std::size_t checked = 0, wrong = 0;
  auto expect = [&](bool got, bool want) {
    ++checked;
    wrong += got != want;
  };
  auto tr = [](const char* s) { return parse_trace(s); };
  // Listed cases.
  expect(lock_feasible(tr("acq(m):1 rel(m):1 acq(m):2")), true);
  expect(lock_feasible(tr("acq(m):1 acq(m):2")), false);
  expect(lock_feasible(tr("acq(m):1 rel(m):2")), false);
  expect(barrier_feasible(tr("a:1 *:1 *:2 b:2")), true);
  expect(barrier_feasible(tr("*:1 a:2 *:2")), false);
  expect(barrier_feasible(tr("a:1 b:2 a:2")), true);
  auto ab = CommutativityRelation::from_pairs({"a", "b"}, {{"a", "b"}});
  auto none = CommutativityRelation::empty({"a", "b"});
  expect(covers(tr("a:1 b:2"), tr("b:2 a:1"), ab), true);
  expect(covers(tr("a:1 b:1"), tr("b:1 a:1"), CommutativityRelation::full({"a", "b"})), false);
  expect(covers(tr("b:2 a:1"), tr("a:1 b:2"), ab), false);
  expect(covers(tr("a:1 b:2"), tr("b:2 a:1"), none), false);

  // Exhaustive tables up to length 4.
  const std::vector<Action> lock_actions{Action::acquire("m"), Action::release("m"),
                                         Action::acquire("n"), Action::release("n")};
  const std::vector<Action> sync_actions{Action::plain("a"), Action::syncpoint()};
  const std::vector<Action> plain_actions{Action::plain("a"), Action::plain("b")};
  for (std::size_t len = 0; len <= 4; ++len) {
    for (const auto& t : all_traces(len, lock_actions, 2))
      expect(lock_feasible(t), reference_lock_feasible(t));
    for (const auto& t : all_traces(len, sync_actions, 2))
      expect(barrier_feasible(t), reference_barrier_feasible(t));
  }
  const std::vector<std::string> sigma{"a", "b"};
  std::vector<ActionPair> all_pairs;
  for (const auto& x : sigma)
    for (const auto& y : sigma) all_pairs.emplace_back(x, y);
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    std::vector<ActionPair> chosen;
    for (std::size_t k = 0; k < 4; ++k)
      if (mask >> k & 1u) chosen.push_back(all_pairs[k]);
    auto rel = CommutativityRelation::from_pairs(sigma, chosen);
    for (std::size_t len = 0; len <= 4; ++len) {
      auto traces = all_traces(len, plain_actions, 2);
      for (const auto& src : traces) {
        auto closure = swap_closure(src, rel);
        for (const auto& dst : traces) expect(covers(src, dst, rel), closure.count(dst) > 0);
      }
    }
  }
  note << checked << " cases, " << wrong << " mismatches";
  return wrong == 0;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "branches atomic golden", 1.0, branches},
      {2, "phased sync golden and movers", 1.0, phased},
      {3, "algorithm vs oracle agreement", 300.0, agreement},
      {4, "Lipton incompleteness and soundness", 300.0, lipton},
      {5, "3-SAT to coverability contract", 120.0, sat},
      {6, "coverability gadget contracts", 300.0, gadgets},
      {7, "polynomial scaling", 120.0, scaling},
      {8, "semantics tables", 60.0, semantics},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::ostringstream note;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(note);
    } catch (const std::exception& e) {
      note << " exception: " << e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.limit_s;
    if (!in_time) note << " (over time limit)";
    const bool pass = ok && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s / limit %.0f s", s, c.limit_s);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
              << "): " << note.str() << " [" << timing << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
