#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "nred/bit_matrix.hpp"
#include "nred/template.hpp"

namespace nred {

/// Strongly connected components. Component ids are in reverse topological
/// order of the condensation: every arc u→v satisfies comp[u] >= comp[v].
struct SccDecomposition {
  std::vector<std::uint32_t> component;            // node -> component id
  std::vector<std::vector<std::uint32_t>> members;  // component id -> nodes
  std::vector<bool> nontrivial;  // >= 2 nodes, or a single node with a self-loop

  std::size_t size() const { return members.size(); }
};

/// Iterative Tarjan. `next(v, cursor)` yields the successor of `v` at or after
/// `cursor` (advancing it) or -1 when exhausted.
template <class Next>
SccDecomposition tarjan_scc(std::size_t n, Next&& next);

SccDecomposition scc(const std::vector<std::vector<std::uint32_t>>& adj);
SccDecomposition scc(const BitMatrix& relation);

/// Location graph of a template as adjacency lists.
std::vector<std::vector<std::uint32_t>> location_graph(const ThreadTemplate& t);

/// Reflexive-transitive reachability between locations.
BitMatrix location_reachability(const ThreadTemplate& t);

std::vector<bool> reachable_from(const std::vector<std::vector<std::uint32_t>>& adj,
                                 std::uint32_t source);
std::vector<bool> coreachable_to(const std::vector<std::vector<std::uint32_t>>& adj,
                                 std::uint32_t target);

/// Shortest paths with 0/1 edge weights (deque BFS). Unreached nodes get
/// kUnreached; `parent` receives the edge used to enter each node.
inline constexpr std::uint64_t kUnreached = std::numeric_limits<std::uint64_t>::max();

struct WeightedArc {
  std::uint32_t target;
  std::uint32_t weight;  // 0 or 1
  std::uint32_t tag;     // caller payload (e.g. edge id)
};

struct ZeroOneResult {
  std::vector<std::uint64_t> dist;
  std::vector<std::optional<std::uint32_t>> parent_tag;
  std::vector<std::uint32_t> parent_node;
};

ZeroOneResult zero_one_bfs(const std::vector<std::vector<WeightedArc>>& adj,
                           std::uint32_t source);

// -- implementation ---------------------------------------------------------

template <class Next>
SccDecomposition tarjan_scc(std::size_t n, Next&& next) {
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kNone), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t v;
    std::size_t cursor;
  };
  std::vector<Frame> call;
  SccDecomposition out;
  out.component.assign(n, kNone);
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& fr = call.back();
      const std::uint32_t v = fr.v;
      const long long w = next(v, fr.cursor);
      if (w >= 0) {
        auto u = static_cast<std::uint32_t>(w);
        if (index[u] == kNone) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = true;
          call.push_back({u, 0});
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], index[u]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        auto id = static_cast<std::uint32_t>(out.members.size());
        out.members.emplace_back();
        std::uint32_t u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = false;
          out.component[u] = id;
          out.members.back().push_back(u);
        } while (u != v);
      }
      call.pop_back();
      if (!call.empty()) {
        auto p = call.back().v;
        low[p] = std::min(low[p], low[v]);
      }
    }
  }
  out.nontrivial.assign(out.members.size(), false);
  for (std::size_t c = 0; c < out.members.size(); ++c)
    if (out.members[c].size() > 1) out.nontrivial[c] = true;
  return out;
}

}  // namespace nred
