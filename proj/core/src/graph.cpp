#include "nred/graph.hpp"

#include <deque>

namespace nred {

SccDecomposition scc(const std::vector<std::vector<std::uint32_t>>& adj) {
  auto out = tarjan_scc(adj.size(), [&](std::uint32_t v, std::size_t& cur) -> long long {
    if (cur >= adj[v].size()) return -1;
    return adj[v][cur++];
  });
  for (std::uint32_t v = 0; v < adj.size(); ++v)
    for (auto w : adj[v])
      if (w == v) out.nontrivial[out.component[v]] = true;
  return out;
}

SccDecomposition scc(const BitMatrix& r) {
  auto out = tarjan_scc(r.rows(), [&](std::uint32_t v, std::size_t& cur) -> long long {
    auto c = r.next_in_row(v, cur);
    if (c >= r.cols()) {
      cur = r.cols();
      return -1;
    }
    cur = c + 1;
    return static_cast<long long>(c);
  });
  for (std::uint32_t v = 0; v < r.rows(); ++v)
    if (r.test(v, v)) out.nontrivial[out.component[v]] = true;
  return out;
}

std::vector<std::vector<std::uint32_t>> location_graph(const ThreadTemplate& t) {
  std::vector<std::vector<std::uint32_t>> adj(t.num_locations());
  for (const auto& e : t.edges()) adj[e.source].push_back(e.target);
  return adj;
}

BitMatrix location_reachability(const ThreadTemplate& t) {
  BitMatrix r(t.num_locations(), t.num_locations());
  for (const auto& e : t.edges()) r.set(e.source, e.target);
  auto c = transitive_closure(r);
  for (std::size_t i = 0; i < t.num_locations(); ++i) c.set(i, i);
  return c;
}

namespace {

std::vector<bool> search(const std::vector<std::vector<std::uint32_t>>& adj,
                         std::uint32_t source) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::uint32_t> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return seen;
}

}  // namespace

std::vector<bool> reachable_from(const std::vector<std::vector<std::uint32_t>>& adj,
                                 std::uint32_t source) {
  return search(adj, source);
}

std::vector<bool> coreachable_to(const std::vector<std::vector<std::uint32_t>>& adj,
                                 std::uint32_t target) {
  std::vector<std::vector<std::uint32_t>> rev(adj.size());
  for (std::uint32_t v = 0; v < adj.size(); ++v)
    for (auto w : adj[v]) rev[w].push_back(v);
  return search(rev, target);
}

ZeroOneResult zero_one_bfs(const std::vector<std::vector<WeightedArc>>& adj,
                           std::uint32_t source) {
  ZeroOneResult r;
  r.dist.assign(adj.size(), kUnreached);
  r.parent_tag.assign(adj.size(), std::nullopt);
  r.parent_node.assign(adj.size(), 0);
  std::deque<std::uint32_t> dq{source};
  r.dist[source] = 0;
  while (!dq.empty()) {
    auto v = dq.front();
    dq.pop_front();
    for (const auto& arc : adj[v]) {
      auto nd = r.dist[v] + arc.weight;
      if (nd < r.dist[arc.target]) {
        r.dist[arc.target] = nd;
        r.parent_tag[arc.target] = arc.tag;
        r.parent_node[arc.target] = v;
        if (arc.weight == 0)
          dq.push_front(arc.target);
        else
          dq.push_back(arc.target);
      }
    }
  }
  return r;
}

}  // namespace nred
