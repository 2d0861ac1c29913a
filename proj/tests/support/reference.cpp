#include "reference.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace nred::testing {

bool reference_lock_feasible(const IndexedTrace& tr) {
  std::map<std::string, std::vector<IndexedEvent>> per_lock;
  for (const auto& e : tr)
    if (e.action.is_lock()) per_lock[e.action.lock].push_back(e);
  for (const auto& [lock, evs] : per_lock) {
    std::size_t k = 0;
    while (k + 1 < evs.size()) {
      if (evs[k].action.kind != ActionKind::acquire) return false;
      if (evs[k + 1].action.kind != ActionKind::release) return false;
      if (evs[k].thread != evs[k + 1].thread) return false;
      k += 2;
    }
    if (k < evs.size() && evs[k].action.kind != ActionKind::acquire) return false;
  }
  return true;
}

namespace {

bool sync_from(const std::set<std::uint32_t>& t, const IndexedTrace& w, std::size_t at) {
  if (at == w.size()) return true;
  const auto& e = w[at];
  if (e.action.kind != ActionKind::syncpoint && t.count(e.thread) &&
      sync_from(t, w, at + 1))
    return true;
  if (!t.empty() && at + t.size() <= w.size()) {
    std::set<std::uint32_t> seen;
    bool ok = true;
    for (std::size_t k = at; k < at + t.size() && ok; ++k)
      ok = w[k].action.kind == ActionKind::syncpoint && t.count(w[k].thread) &&
           seen.insert(w[k].thread).second;
    if (ok && sync_from(t, w, at + t.size())) return true;
  }
  // Continue with a strict subset.
  std::vector<std::uint32_t> members(t.begin(), t.end());
  const std::uint32_t n = static_cast<std::uint32_t>(members.size());
  for (std::uint32_t mask = 0; mask + 1 < (1u << n); ++mask) {
    std::set<std::uint32_t> sub;
    for (std::uint32_t b = 0; b < n; ++b)
      if (mask >> b & 1u) sub.insert(members[b]);
    if (sync_from(sub, w, at)) return true;
  }
  return false;
}

}  // namespace

bool reference_barrier_feasible(const IndexedTrace& tr) {
  std::set<std::uint32_t> t;
  for (const auto& e : tr) t.insert(e.thread);
  return sync_from(t, tr, 0);
}

std::set<IndexedTrace> swap_closure(const IndexedTrace& src, const CommutativityRelation& i) {
  std::set<IndexedTrace> seen{src};
  std::deque<IndexedTrace> queue{src};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k + 1 < cur.size(); ++k) {
      if (cur[k].thread == cur[k + 1].thread) continue;
      if (!i.contains(cur[k].action.name, cur[k + 1].action.name)) continue;
      auto next = cur;
      std::swap(next[k], next[k + 1]);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return seen;
}

bool reference_covers(const IndexedTrace& src, const IndexedTrace& dst,
                      const CommutativityRelation& i) {
  return swap_closure(src, i).count(dst) > 0;
}

bool reference_reduction(const std::vector<IndexedTrace>& l1,
                         const std::vector<IndexedTrace>& l2, const CommutativityRelation& i) {
  std::set<IndexedTrace> big(l2.begin(), l2.end());
  for (const auto& t : l1)
    if (!big.count(t)) return false;
  std::set<IndexedTrace> covered;
  for (const auto& t : l1) {
    auto c = swap_closure(t, i);
    covered.insert(c.begin(), c.end());
  }
  return std::all_of(l2.begin(), l2.end(), [&](const auto& t) { return covered.count(t) > 0; });
}

}  // namespace nred::testing
