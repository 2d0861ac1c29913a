#include "nred/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "nred/automaton.hpp"
#include "nred/error.hpp"

namespace nred {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Predicates

bool lock_feasible(const IndexedTrace& tr) {
  std::map<std::string, std::uint32_t> holder;  // absent = free
  for (const auto& e : tr) {
    if (e.action.kind == ActionKind::acquire) {
      if (!holder.emplace(e.action.lock, e.thread).second) return false;
    } else if (e.action.kind == ActionKind::release) {
      auto it = holder.find(e.action.lock);
      if (it == holder.end() || it->second != e.thread) return false;
      holder.erase(it);
    }
  }
  return true;
}

namespace {

class BarrierParser {
 public:
  explicit BarrierParser(const IndexedTrace& tr) : tr_(tr) {
    auto threads = threads_of(tr);
    if (threads.size() > 62) throw Error(ErrorCode::inconsistent_inputs, "too many threads");
    for (std::size_t k = 0; k < threads.size(); ++k) bit_[threads[k]] = std::uint64_t{1} << k;
    for (const auto& e : tr) all_ |= bit_[e.thread];
  }

  bool run() { return feasible(0, all_); }

 private:
  bool feasible(std::size_t pos, std::uint64_t set) {
    if (set == 0) return pos == tr_.size();
    auto key = std::make_pair(pos, set);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = false;
    const auto size = static_cast<std::size_t>(std::popcount(set));
    std::size_t p = pos;
    while (!ok) {
      // τ2 may start here for any strict subset.
      for (std::uint64_t sub = (set - 1) & set;; sub = (sub - 1) & set) {
        if (feasible(p, sub)) {
          ok = true;
          break;
        }
        if (sub == 0) break;
      }
      if (ok || p == tr_.size()) break;
      const auto& e = tr_[p];
      if (e.action.kind == ActionKind::syncpoint) {
        if (p + size > tr_.size()) break;
        std::uint64_t seen = 0;
        bool block = true;
        for (std::size_t q = p; q < p + size && block; ++q) {
          auto b = bit_[tr_[q].thread];
          block = tr_[q].action.kind == ActionKind::syncpoint && (set & b) && !(seen & b);
          seen |= b;
        }
        if (!block) break;
        p += size;
      } else {
        if (!(set & bit_[e.thread])) break;
        ++p;
      }
    }
    memo_[key] = ok;
    return ok;
  }

  const IndexedTrace& tr_;
  std::map<std::uint32_t, std::uint64_t> bit_;
  std::uint64_t all_ = 0;
  std::map<std::pair<std::size_t, std::uint64_t>, bool> memo_;
};

std::string plain_key(const IndexedEvent& e) { return e.action.label(); }

// Per-thread projections as a comparable value.
std::map<std::uint32_t, std::vector<std::string>> projections(const IndexedTrace& t) {
  std::map<std::uint32_t, std::vector<std::string>> out;
  for (const auto& e : t) out[e.thread].push_back(plain_key(e));
  return out;
}

}  // namespace

bool barrier_feasible(const IndexedTrace& tr) { return BarrierParser(tr).run(); }

// ---------------------------------------------------------------------------
// Covering

CoverResult try_covers(const IndexedTrace& src, const IndexedTrace& dst,
                       const CommutativityRelation& i, std::optional<std::uint64_t> max_depth) {
  CoverResult r;
  if (src.size() != dst.size() || projections(src) != projections(dst)) return r;
  // Events are identified by (thread, occurrence). Every pair that ends up in
  // the opposite order must have been swapped directly, which needs distinct
  // threads and (earlier, later) ∈ I; conversely, with all inverted pairs
  // admissible, moving dst's next event to the front one swap at a time
  // succeeds. The number of swaps needed is the number of inversions.
  const std::size_t n = src.size();
  std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> rank;  // event -> dst position
  {
    std::map<std::uint32_t, std::size_t> occ;
    for (std::size_t p = 0; p < n; ++p) rank[{dst[p].thread, occ[dst[p].thread]++}] = p;
  }
  std::vector<std::size_t> order(n);
  {
    std::map<std::uint32_t, std::size_t> occ;
    for (std::size_t p = 0; p < n; ++p) order[p] = rank.at({src[p].thread, occ[src[p].thread]++});
  }
  std::uint64_t inversions = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (order[x] < order[y]) continue;
      if (src[x].thread == src[y].thread) return r;
      if (!i.contains(src[x].action.name, src[y].action.name)) return r;
      ++inversions;
    }
  r.states = inversions;
  const std::uint64_t depth = max_depth.value_or(static_cast<std::uint64_t>(n) * n);
  r.result = inversions <= depth ? Tri::yes : Tri::unknown;
  return r;
}

bool covers(const IndexedTrace& src, const IndexedTrace& dst, const CommutativityRelation& i,
            std::optional<std::uint64_t> max_depth) {
  auto r = try_covers(src, dst, i, max_depth);
  if (r.result == Tri::unknown)
    throw Error(ErrorCode::depth_exceeded, "swap depth exceeded while covering " + to_string(src));
  return r.result == Tri::yes;
}

IndexedTrace canonical_threads(const IndexedTrace& t) {
  std::map<std::uint32_t, std::uint32_t> rename;
  IndexedTrace out;
  out.reserve(t.size());
  for (const auto& e : t) {
    auto it = rename.try_emplace(e.thread, static_cast<std::uint32_t>(rename.size() + 1)).first;
    out.push_back({e.action, it->second});
  }
  return out;
}

namespace {

// Thread renamings of `t` onto `candidate` that preserve projections.
bool covered_up_to_renaming(const IndexedTrace& tau, const IndexedTrace& candidate,
                            const CommutativityRelation& i, std::optional<std::uint64_t> depth,
                            bool& unknown) {
  auto pa = projections(tau);
  auto pb = projections(candidate);
  if (pa.size() != pb.size()) return false;
  std::vector<std::uint32_t> from, to;
  for (const auto& [k, v] : pa) from.push_back(k);
  for (const auto& [k, v] : pb) to.push_back(k);
  std::sort(to.begin(), to.end());
  do {
    bool match = true;
    for (std::size_t k = 0; k < from.size() && match; ++k) match = pa[from[k]] == pb[to[k]];
    if (!match) continue;
    std::map<std::uint32_t, std::uint32_t> back;
    for (std::size_t k = 0; k < from.size(); ++k) back[to[k]] = from[k];
    IndexedTrace renamed = candidate;
    for (auto& e : renamed) e.thread = back[e.thread];
    auto r = try_covers(tau, renamed, i, depth);
    if (r.result == Tri::yes) return true;
    if (r.result == Tri::unknown) unknown = true;
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

}  // namespace

ReductionResult is_mazurkiewicz_reduction(const std::vector<IndexedTrace>& l1,
                                          const std::vector<IndexedTrace>& l2,
                                          const CommutativityRelation& i,
                                          std::optional<std::uint64_t> max_depth,
                                          bool up_to_renaming) {
  ReductionResult res;
  auto norm = [&](const IndexedTrace& t) { return up_to_renaming ? canonical_threads(t) : t; };
  std::set<IndexedTrace> in_l2;
  for (const auto& t : l2) in_l2.insert(norm(t));
  for (const auto& t : l1)
    if (!in_l2.count(norm(t))) {
      res.holds = Tri::no;
      res.counterexample = t;
      res.reason = "not contained in the reference set";
      return res;
    }
  // Candidates are bucketed by the sorted multiset of projections.
  auto bucket = [](const IndexedTrace& t) {
    std::vector<std::vector<std::string>> v;
    for (auto& [k, p] : projections(t)) v.push_back(std::move(p));
    std::sort(v.begin(), v.end());
    return v;
  };
  std::map<std::vector<std::vector<std::string>>, std::vector<const IndexedTrace*>> by_shape;
  for (const auto& t : l1) by_shape[bucket(t)].push_back(&t);
  bool any_unknown = false;
  for (const auto& tau : l2) {
    bool found = false, unknown = false;
    auto it = by_shape.find(bucket(tau));
    if (it != by_shape.end())
      for (const auto* cand : it->second) {
        if (up_to_renaming) {
          found = covered_up_to_renaming(tau, *cand, i, max_depth, unknown);
        } else {
          auto r = try_covers(tau, *cand, i, max_depth);
          found = r.result == Tri::yes;
          unknown = unknown || r.result == Tri::unknown;
        }
        if (found) break;
      }
    if (found) continue;
    if (unknown) {
      any_unknown = true;
      continue;
    }
    res.holds = Tri::no;
    res.counterexample = tau;
    res.reason = "no representative";
    return res;
  }
  if (any_unknown) {
    res.holds = Tri::unknown;
    res.reason = "swap depth exceeded";
  }
  return res;
}

// ---------------------------------------------------------------------------
// Executable form of a program: outer template plus atomic block bodies.

namespace {

struct Move {
  enum Kind : std::uint8_t { plain, acquire, release, sync, enter, leave } kind = plain;
  int label = -1;  // plain
  int lock = -1;   // acquire / release
  std::uint32_t to = 0;
};

class Machine {
 public:
  Machine(const ThreadTemplate& outer, const std::map<std::string, ThreadTemplate>* blocks,
          SymbolTable& labels) {
    const auto n = static_cast<std::uint32_t>(outer.num_locations());
    std::map<std::string, std::uint32_t> offset;
    std::uint32_t total = n;
    if (blocks)
      for (const auto& [name, body] : *blocks) {
        offset[name] = total;
        total += static_cast<std::uint32_t>(body.num_locations());
      }
    moves_.resize(total);
    outer_exit_ = outer.exit();
    init_ = outer.init();
    in_block_.assign(total, false);
    auto lock_id = [&](const std::string& m) {
      auto [it, fresh] = locks_.try_emplace(m, static_cast<int>(locks_.size()));
      (void)fresh;
      return it->second;
    };
    for (const auto& e : outer.edges()) {
      Move mv;
      mv.to = e.target;
      switch (e.action.kind) {
        case ActionKind::plain:
          mv.label = labels.intern(e.action.name);
          break;
        case ActionKind::block:
          if (blocks && blocks->count(e.action.name)) {
            const auto& body = blocks->at(e.action.name);
            const auto base = offset.at(e.action.name);
            mv.kind = Move::enter;
            mv.to = base + body.init();
            moves_[base + body.exit()].push_back({Move::leave, -1, -1, e.target});
          } else {
            mv.label = labels.intern(e.action.name);
          }
          break;
        case ActionKind::acquire:
          mv.kind = Move::acquire;
          mv.lock = lock_id(e.action.lock);
          break;
        case ActionKind::release:
          mv.kind = Move::release;
          mv.lock = lock_id(e.action.lock);
          break;
        case ActionKind::syncpoint:
          mv.kind = Move::sync;
          has_sync_ = true;
          break;
      }
      moves_[e.source].push_back(mv);
    }
    if (blocks)
      for (const auto& [name, body] : *blocks) {
        const auto base = offset.at(name);
        for (std::uint32_t l = 0; l < body.num_locations(); ++l) in_block_[base + l] = true;
        for (const auto& e : body.edges()) {
          Move mv;
          mv.to = base + e.target;
          if (e.action.kind == ActionKind::acquire || e.action.kind == ActionKind::release) {
            mv.kind = e.action.kind == ActionKind::acquire ? Move::acquire : Move::release;
            mv.lock = lock_id(e.action.lock);
          } else if (e.action.kind == ActionKind::syncpoint) {
            mv.kind = Move::sync;
            has_sync_ = true;
          } else {
            mv.label = labels.intern(e.action.name);
          }
          moves_[base + e.source].push_back(mv);
        }
      }
    // Plain moves first: searches try consuming events before silent steps.
    for (auto& v : moves_)
      std::stable_sort(v.begin(), v.end(),
                       [](const Move& a, const Move& b) { return a.kind < b.kind; });
  }

  std::uint32_t init() const { return init_; }
  bool at_exit(std::uint32_t pos) const { return pos == outer_exit_; }
  bool in_block(std::uint32_t pos) const { return in_block_[pos]; }
  const std::vector<Move>& moves(std::uint32_t pos) const { return moves_[pos]; }
  std::size_t num_locks() const { return locks_.size(); }
  bool has_sync() const { return has_sync_; }
  std::string lock_name(int id) const {
    for (const auto& [k, v] : locks_)
      if (v == id) return k;
    return {};
  }

 private:
  std::vector<std::vector<Move>> moves_;
  std::vector<bool> in_block_;
  std::map<std::string, int> locks_;
  std::uint32_t init_ = 0, outer_exit_ = 0;
  bool has_sync_ = false;
};

void put(std::string& key, std::uint32_t v) {
  key.append(reinterpret_cast<const char*>(&v), sizeof v);
}

// Decides whether some run of the machine has τ's projections and respects
// the order of every non-commuting cross-thread pair of τ.
class FrontierSearch {
 public:
  FrontierSearch(const Machine& m, SymbolTable& labels, const IndexedTrace& tau,
                 const CommutativityRelation& i)
      : m_(m) {
    auto threads = threads_of(tau);
    const std::size_t k = threads.size();
    std::map<std::uint32_t, std::size_t> slot;
    for (std::size_t t = 0; t < k; ++t) slot[threads[t]] = t;
    labels_.resize(k);
    need_.resize(k);
    std::vector<std::pair<std::size_t, std::size_t>> where;  // event -> (thread, index)
    for (const auto& e : tau) {
      auto t = slot[e.thread];
      where.emplace_back(t, labels_[t].size());
      labels_[t].push_back(labels.intern(e.action.name));
    }
    for (std::size_t f = 0; f < tau.size(); ++f) {
      auto [tf, qf] = where[f];
      std::vector<std::uint32_t> need(k, 0);
      for (std::size_t e = 0; e < f; ++e) {
        auto [te, qe] = where[e];
        if (te == tf) continue;
        if (!i.contains(tau[e].action.name, tau[f].action.name))
          need[te] = std::max<std::uint32_t>(need[te], static_cast<std::uint32_t>(qe + 1));
      }
      need_[tf].push_back(std::move(need));
    }
    pos_.assign(k, m.init());
    done_.assign(k, 0);
    retired_.assign(k, false);
    holder_.assign(m.num_locks(), -1);
  }

  bool run() { return dfs(); }

 private:
  bool dfs() {
    const std::size_t k = pos_.size();
    if (std::all_of(retired_.begin(), retired_.end(), [](bool b) { return b; })) return true;
    if (!visited_.insert(key()).second) return false;

    auto try_step = [&](std::size_t t, const Move& mv) -> bool {
      auto saved_pos = pos_[t];
      switch (mv.kind) {
        case Move::plain: {
          auto q = done_[t];
          if (q >= labels_[t].size() || labels_[t][q] != mv.label) return false;
          const auto& need = need_[t][q];
          for (std::size_t j = 0; j < k; ++j)
            if (done_[j] < need[j]) return false;
          pos_[t] = mv.to;
          ++done_[t];
          bool ok = dfs();
          --done_[t];
          pos_[t] = saved_pos;
          return ok;
        }
        case Move::acquire: {
          if (holder_[mv.lock] != -1) return false;
          holder_[mv.lock] = static_cast<int>(t);
          pos_[t] = mv.to;
          bool ok = dfs();
          pos_[t] = saved_pos;
          holder_[mv.lock] = -1;
          return ok;
        }
        case Move::release: {
          if (holder_[mv.lock] != static_cast<int>(t)) return false;
          holder_[mv.lock] = -1;
          pos_[t] = mv.to;
          bool ok = dfs();
          pos_[t] = saved_pos;
          holder_[mv.lock] = static_cast<int>(t);
          return ok;
        }
        case Move::enter:
        case Move::leave: {
          auto saved_inside = inside_;
          inside_ = mv.kind == Move::enter ? static_cast<int>(t) : -1;
          pos_[t] = mv.to;
          bool ok = dfs();
          pos_[t] = saved_pos;
          inside_ = saved_inside;
          return ok;
        }
        case Move::sync:
          return false;  // collective, handled below
      }
      return false;
    };

    for (std::size_t t = 0; t < k; ++t) {
      if (retired_[t] || inside_ != -1) continue;
      if (m_.at_exit(pos_[t]) && done_[t] == labels_[t].size()) {
        retired_[t] = true;
        bool ok = dfs();
        retired_[t] = false;
        if (ok) return true;
      }
    }
    for (std::size_t t = 0; t < k; ++t) {
      if (retired_[t] || (inside_ != -1 && inside_ != static_cast<int>(t))) continue;
      for (const auto& mv : m_.moves(pos_[t]))
        if (try_step(t, mv)) return true;
    }
    if (m_.has_sync() && inside_ == -1) return rendezvous(0);
    return false;
  }

  // Every non-retired thread takes one • edge; choices are enumerated.
  bool rendezvous(std::size_t t) {
    const std::size_t k = pos_.size();
    if (t == k) {
      bool any = std::any_of(retired_.begin(), retired_.end(), [](bool b) { return !b; });
      return any && dfs();
    }
    if (retired_[t]) return rendezvous(t + 1);
    auto saved = pos_[t];
    for (const auto& mv : m_.moves(saved)) {
      if (mv.kind != Move::sync) continue;
      pos_[t] = mv.to;
      bool ok = rendezvous(t + 1);
      pos_[t] = saved;
      if (ok) return true;
    }
    return false;
  }

  std::string key() const {
    std::string s;
    for (std::size_t t = 0; t < pos_.size(); ++t) {
      put(s, pos_[t]);
      put(s, static_cast<std::uint32_t>(done_[t]) | (retired_[t] ? 0x80000000u : 0u));
    }
    put(s, static_cast<std::uint32_t>(inside_));
    for (int h : holder_) s.push_back(static_cast<char>(h));
    return s;
  }

  const Machine& m_;
  std::vector<std::vector<int>> labels_;
  std::vector<std::vector<std::vector<std::uint32_t>>> need_;
  std::vector<std::uint32_t> pos_;
  std::vector<std::size_t> done_;
  std::vector<bool> retired_;
  std::vector<int> holder_;
  int inside_ = -1;
  std::unordered_set<std::string> visited_;
};

struct BudgetExceeded {};

// Enumerates synchronization-feasible runs of `threads` threads, each
// completing, with at most `max_len` non-• steps per thread. The callback
// receives the plain projection of each run (thread indices 1..threads).
//
// With `independent` set, only runs in lexicographic normal form with respect
// to that independence are produced, and threads start in index order; every
// run is then equivalent, up to thread renaming and swapping independent
// events, to a produced one.
class RunEnumerator {
 public:
  using Independent = std::function<bool(int, int)>;

  RunEnumerator(const Machine& m, std::size_t threads, std::uint32_t max_len,
                const Independent* independent, std::uint64_t* budget,
                std::function<bool(const IndexedTrace&)> sink)
      : m_(m), k_(threads), max_len_(max_len), indep_(independent), budget_(budget),
        sink_(std::move(sink)) {
    pos_.assign(k_, m.init());
    len_.assign(k_, 0);
    retired_.assign(k_, false);
    started_.assign(k_, false);
    holder_.assign(m.num_locks(), -1);
  }

  /// False when the sink asked to stop.
  bool run() { return dfs(); }

  SymbolTable* labels = nullptr;

 private:
  struct Ev {
    std::uint32_t thread;  // 0-based; kSync for a rendezvous
    Move::Kind kind;
    int label;
    int lock;
  };
  static constexpr std::uint32_t kSync = 0xffffffffu;

  bool tick() {
    if (!budget_) return true;
    if (*budget_ == 0) throw BudgetExceeded{};
    --*budget_;
    return true;
  }

  // Lexicographic key: rendezvous smallest, then thread-major.
  static std::tuple<std::uint32_t, int, int, int> order_key(const Ev& e) {
    if (e.thread == kSync) return {0, 0, 0, 0};
    return {e.thread + 1, static_cast<int>(e.kind), e.label, e.lock};
  }

  bool independent(const Ev& x, const Ev& y) const {
    if (x.thread == kSync || y.thread == kSync || x.thread == y.thread) return false;
    auto is_lock = [](const Ev& e) { return e.kind == Move::acquire || e.kind == Move::release; };
    if (x.kind == Move::plain && y.kind == Move::plain) return (*indep_)(x.label, y.label);
    // Lock operations on distinct locks, or next to a plain event, can be
    // swapped without changing feasibility or the plain projection.
    if (is_lock(x) && is_lock(y)) return x.lock != y.lock;
    return (is_lock(x) && y.kind == Move::plain) || (is_lock(y) && x.kind == Move::plain);
  }

  bool admissible(const Ev& x) const {
    if (!indep_) return true;
    if (x.thread != kSync && !started_[x.thread])
      for (std::uint32_t t = 0; t < x.thread; ++t)
        if (!started_[t]) return false;
    const auto kx = order_key(x);
    for (auto it = trace_.rbegin(); it != trace_.rend(); ++it) {
      if (!independent(*it, x)) break;
      if (order_key(*it) > kx) return false;
    }
    return true;
  }

  bool emit() {
    IndexedTrace out;
    for (const auto& e : trace_)
      if (e.thread != kSync && e.kind == Move::plain)
        out.push_back({Action::plain(labels->name(e.label)), e.thread + 1});
    return sink_(out);
  }

  bool push_and_recurse(const Ev& ev, std::size_t t, std::uint32_t to, bool counts) {
    if (!admissible(ev)) return true;
    auto saved_pos = pos_[t];
    bool saved_started = started_[t];
    pos_[t] = to;
    started_[t] = true;
    if (counts) ++len_[t];
    trace_.push_back(ev);
    bool go = dfs();
    trace_.pop_back();
    if (counts) --len_[t];
    started_[t] = saved_started;
    pos_[t] = saved_pos;
    return go;
  }

  bool dfs() {
    tick();
    if (std::all_of(retired_.begin(), retired_.end(), [](bool b) { return b; })) return emit();
    for (std::size_t t = 0; t < k_; ++t) {
      if (retired_[t]) continue;
      if (inside_ != -1 && inside_ != static_cast<int>(t)) continue;
      if (inside_ == -1 && m_.at_exit(pos_[t])) {
        retired_[t] = true;
        bool go = dfs();
        retired_[t] = false;
        if (!go) return false;
      }
      for (const auto& mv : m_.moves(pos_[t])) {
        const auto tt = static_cast<std::uint32_t>(t);
        switch (mv.kind) {
          case Move::plain:
            if (len_[t] >= max_len_) break;
            if (!push_and_recurse({tt, Move::plain, mv.label, -1}, t, mv.to, true)) return false;
            break;
          case Move::acquire:
            if (len_[t] >= max_len_ || holder_[mv.lock] != -1) break;
            holder_[mv.lock] = static_cast<int>(t);
            if (!push_and_recurse({tt, Move::acquire, -1, mv.lock}, t, mv.to, true)) return false;
            holder_[mv.lock] = -1;
            break;
          case Move::release:
            if (len_[t] >= max_len_ || holder_[mv.lock] != static_cast<int>(t)) break;
            holder_[mv.lock] = -1;
            if (!push_and_recurse({tt, Move::release, -1, mv.lock}, t, mv.to, true)) return false;
            holder_[mv.lock] = static_cast<int>(t);
            break;
          case Move::enter:
          case Move::leave: {
            auto saved_inside = inside_;
            inside_ = mv.kind == Move::enter ? static_cast<int>(t) : -1;
            auto saved_pos = pos_[t];
            bool saved_started = started_[t];
            if (!admissible({tt, mv.kind, -1, -1})) {
              inside_ = saved_inside;
              break;
            }
            pos_[t] = mv.to;
            started_[t] = true;
            trace_.push_back({tt, mv.kind, -1, -1});
            bool go = dfs();
            trace_.pop_back();
            started_[t] = saved_started;
            pos_[t] = saved_pos;
            inside_ = saved_inside;
            if (!go) return false;
            break;
          }
          case Move::sync:
            break;
        }
      }
    }
    if (m_.has_sync() && inside_ == -1) {
      Ev ev{kSync, Move::sync, -1, -1};
      if (admissible(ev)) {
        trace_.push_back(ev);
        bool go = rendezvous(0, false);
        trace_.pop_back();
        if (!go) return false;
      }
    }
    return true;
  }

  bool rendezvous(std::size_t t, bool any) {
    if (t == k_) return any ? dfs() : true;
    if (retired_[t]) return rendezvous(t + 1, any);
    auto saved = pos_[t];
    for (const auto& mv : m_.moves(saved)) {
      if (mv.kind != Move::sync) continue;
      pos_[t] = mv.to;
      bool go = rendezvous(t + 1, true);
      pos_[t] = saved;
      if (!go) return false;
    }
    return true;
  }

  const Machine& m_;
  std::size_t k_;
  std::uint32_t max_len_;
  const Independent* indep_;
  std::uint64_t* budget_;
  std::function<bool(const IndexedTrace&)> sink_;
  std::vector<std::uint32_t> pos_, len_;
  std::vector<bool> retired_, started_;
  std::vector<int> holder_;
  int inside_ = -1;
  std::vector<Ev> trace_;
};

std::vector<IndexedTrace> enumerate_machine(const Machine& m, SymbolTable& labels,
                                            const Bounds& bounds, std::uint64_t* budget) {
  std::set<IndexedTrace> out;
  for (std::size_t n = 1; n <= bounds.max_threads; ++n) {
    RunEnumerator en(m, n, bounds.max_local_len, nullptr, budget, [&](const IndexedTrace& t) {
      out.insert(canonical_threads(t));
      return true;
    });
    en.labels = &labels;
    en.run();
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<IndexedTrace> enumerate_interleavings(const ParameterizedProgram& p,
                                                  const Bounds& bounds) {
  SymbolTable labels;
  Machine m(p.templ, nullptr, labels);
  return enumerate_machine(m, labels, bounds, nullptr);
}

bool has_representative(const ReductionTarget& target, const IndexedTrace& tau,
                        const CommutativityRelation& i) {
  SymbolTable labels;
  Machine m(target.templ, &target.blocks, labels);
  return FrontierSearch(m, labels, tau, i).run();
}

// ---------------------------------------------------------------------------
// Bounded soundness checks

namespace {

Verdict bounded_check(const ThreadTemplate& base, const ReductionTarget& target,
                      const CommutativityRelation& i, const Bounds& bounds,
                      const OracleOptions& opts, const std::string& condition) {
  Verdict v;
  v.certificate = kCertificateBounded;
  v.bounds = bounds;
  std::uint64_t budget = opts.max_candidates;
  Outcome outcome = Outcome::sound;
  std::optional<IndexedTrace> cex;
  std::string note;

  SymbolTable labels;
  Machine original(base, nullptr, labels);
  Machine reduced(target.templ, &target.blocks, labels);
  try {
    if (opts.engine == OracleEngine::explicit_sets) {
      auto l2 = enumerate_machine(original, labels, bounds, &budget);
      auto l1 = enumerate_machine(reduced, labels, bounds, &budget);
      auto r = is_mazurkiewicz_reduction(l1, l2, i, bounds.max_swap_depth, true);
      if (r.holds == Tri::no) {
        outcome = Outcome::unsound;
        cex = r.counterexample;
        note = r.reason;
      } else if (r.holds == Tri::unknown) {
        outcome = Outcome::inconclusive;
        note = r.reason;
      }
    } else {
      const auto& alpha = i.alphabet();
      auto sym = i.matrix(alpha);
      std::unordered_map<int, int> col;
      for (std::size_t k = 0; k < alpha.size(); ++k) col[labels.intern(alpha[k])] = static_cast<int>(k);
      RunEnumerator::Independent indep = [&](int a, int b) {
        auto ia = col.find(a), ib = col.find(b);
        if (ia == col.end() || ib == col.end()) return false;
        return sym.test(ia->second, ib->second) && sym.test(ib->second, ia->second);
      };
      std::set<IndexedTrace> checked;
      for (std::size_t n = 1; n <= bounds.max_threads && !cex; ++n) {
        RunEnumerator en(original, n, bounds.max_local_len, &indep, &budget,
                         [&](const IndexedTrace& t) {
                           auto c = canonical_threads(t);
                           if (!checked.insert(c).second) return true;
                           FrontierSearch fs(reduced, labels, c, i);
                           if (fs.run()) return true;
                           cex = c;
                           return false;
                         });
        en.labels = &labels;
        en.run();
      }
      if (cex) {
        outcome = Outcome::unsound;
        note = "no representative";
      }
    }
  } catch (const BudgetExceeded&) {
    outcome = Outcome::inconclusive;
    note = "candidate budget exhausted";
  }
  v.result = outcome;
  v.checked_conditions.push_back({condition, outcome, note});
  if (cex) v.witness = TraceWitness{*cex};
  return v;
}

}  // namespace

Verdict oracle_check_atomic(const ThreadTemplate& t, const AtomicFusion& f,
                            const CommutativityRelation& i, const Bounds& bounds,
                            const OracleOptions& opts) {
  return bounded_check(t, {f.outer, f.blocks}, i, bounds, opts, "atomic-fusion");
}

Verdict oracle_check_sync(const SyncPointInstrumentation& inst, const CommutativityRelation& i,
                          const Bounds& bounds, const OracleOptions& opts) {
  return bounded_check(inst.base, {inst.instrumented, {}}, i, bounds, opts,
                       "sync-instrumentation");
}

Verdict oracle_check_natural(const ThreadTemplate& t, const NaturalReductionSpec& spec,
                             const CommutativityRelation& i, const Bounds& bounds,
                             const OracleOptions& opts) {
  ReductionTarget target{t, {}};
  if (spec.fusion) target = {spec.fusion->outer, spec.fusion->blocks};
  if (spec.instrumentation) target.templ = spec.instrumentation->instrumented;
  return bounded_check(t, target, i, bounds, opts, "natural-reduction");
}

// ---------------------------------------------------------------------------
// Coverability

Configuration configuration(const ThreadTemplate& t, const std::vector<std::string>& names) {
  Configuration c;
  for (const auto& n : names) {
    auto l = t.find_location(n);
    if (!l) throw Error(ErrorCode::unknown_location, "unknown location '" + n + "'");
    c.push_back(*l);
  }
  return c;
}

namespace {

struct ThreadState {
  std::uint32_t loc;
  std::uint64_t held;
  friend auto operator<=>(const ThreadState&, const ThreadState&) = default;
};

using Global = std::vector<ThreadState>;  // sorted

struct Step {
  ThreadState before;
  Action action;
  ThreadState after;
};

}  // namespace

CoverabilityResult bounded_coverability(const ParameterizedProgram& p, const Configuration& c,
                                        const Bounds& bounds) {
  const auto& t = p.templ;
  auto lock_list = t.locks();
  if (lock_list.size() > 64)
    throw Error(ErrorCode::inconsistent_inputs, "at most 64 locks are supported");
  std::map<std::string, int> lock_bit;
  for (std::size_t k = 0; k < lock_list.size(); ++k) lock_bit[lock_list[k]] = static_cast<int>(k);

  std::map<std::uint32_t, std::size_t> wanted;
  for (auto l : c) ++wanted[l];
  auto covered = [&](const Global& g) {
    std::map<std::uint32_t, std::size_t> have;
    for (const auto& s : g) ++have[s.loc];
    for (auto [l, n] : wanted)
      if (have[l] < n) return false;
    return true;
  };

  CoverabilityResult res;
  const std::size_t k = std::max<std::size_t>(bounds.max_threads, 1);
  Global start(k, ThreadState{t.init(), 0});
  std::map<Global, std::pair<Global, std::vector<Step>>> parent;
  std::deque<Global> queue{start};
  parent.emplace(start, std::make_pair(Global{}, std::vector<Step>{}));
  std::optional<Global> goal;

  while (!queue.empty() && !goal) {
    Global g = queue.front();
    queue.pop_front();
    if (covered(g)) {
      goal = g;
      break;
    }
    std::uint64_t busy = 0;
    for (const auto& s : g) busy |= s.held;
    auto visit = [&](Global next, std::vector<Step> steps) {
      std::sort(next.begin(), next.end());
      if (parent.emplace(next, std::make_pair(g, std::move(steps))).second) queue.push_back(next);
    };
    for (std::size_t th = 0; th < k; ++th) {
      if (th > 0 && g[th] == g[th - 1]) continue;  // symmetric copy
      for (auto eid : t.out_edges(g[th].loc)) {
        const auto& e = t.edge(eid);
        ThreadState after{e.target, g[th].held};
        if (e.action.kind == ActionKind::acquire) {
          auto bit = std::uint64_t{1} << lock_bit[e.action.lock];
          if (busy & bit) continue;
          after.held |= bit;
        } else if (e.action.kind == ActionKind::release) {
          auto bit = std::uint64_t{1} << lock_bit[e.action.lock];
          if (!(g[th].held & bit)) continue;
          after.held &= ~bit;
        } else if (e.action.kind == ActionKind::syncpoint) {
          continue;
        }
        Global next = g;
        next[th] = after;
        visit(std::move(next), {Step{g[th], e.action, after}});
      }
    }
    // Rendezvous: every thread not at exit takes a • edge (first one found).
    if (t.has_syncpoints()) {
      Global next = g;
      std::vector<Step> steps;
      bool ok = false;
      for (std::size_t th = 0; th < k; ++th) {
        if (g[th].loc == t.exit()) continue;
        bool moved = false;
        for (auto eid : t.out_edges(g[th].loc)) {
          const auto& e = t.edge(eid);
          if (e.action.kind != ActionKind::syncpoint) continue;
          next[th].loc = e.target;
          steps.push_back({g[th], e.action, next[th]});
          moved = ok = true;
          break;
        }
        if (!moved) {
          ok = false;
          break;
        }
      }
      if (ok) visit(std::move(next), std::move(steps));
    }
  }
  if (!goal) return res;

  res.coverable = true;
  std::vector<std::vector<Step>> path;
  for (Global g = *goal; g != start;) {
    const auto& [prev, steps] = parent.at(g);
    path.push_back(steps);
    g = prev;
  }
  std::reverse(path.begin(), path.end());
  std::vector<ThreadState> concrete(k, ThreadState{t.init(), 0});
  IndexedTrace witness;
  for (const auto& steps : path) {
    std::vector<bool> used(k, false);
    for (const auto& s : steps) {
      for (std::size_t th = 0; th < k; ++th) {
        if (used[th] || concrete[th] != s.before) continue;
        used[th] = true;
        concrete[th] = s.after;
        witness.push_back({s.action, static_cast<std::uint32_t>(th + 1)});
        break;
      }
    }
  }
  res.witness = std::move(witness);
  return res;
}

}  // namespace nred
