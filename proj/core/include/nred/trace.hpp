#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nred/action.hpp"

namespace nred {

/// ⟨a : i⟩: action a executed by thread i (i ≥ 1).
struct IndexedEvent {
  Action action;
  std::uint32_t thread = 1;

  friend bool operator==(const IndexedEvent&, const IndexedEvent&) = default;
  friend auto operator<=>(const IndexedEvent&, const IndexedEvent&) = default;
};

using IndexedTrace = std::vector<IndexedEvent>;

/// `⟨a:1⟩⟨acq(m):2⟩`; the empty trace prints as `ε`.
std::string to_string(const IndexedTrace& t);

/// Whitespace-separated `label:thread` tokens, e.g. `a:1 acq(m):2 •:1`
/// (`*` is accepted for the sync-point). Throws ParseError.
IndexedTrace parse_trace(std::string_view text);

/// Events of thread i, in order.
std::vector<Action> project(const IndexedTrace& t, std::uint32_t thread);

/// Sorted thread indices occurring in t.
std::vector<std::uint32_t> threads_of(const IndexedTrace& t);

/// Only plain events (block symbols are kept; sync actions dropped).
IndexedTrace erase_synchronization(const IndexedTrace& t);

struct Bounds {
  std::uint32_t max_threads = 2;
  std::uint32_t max_local_len = 8;
  std::optional<std::uint64_t> max_swap_depth;
};

std::string to_string(const Bounds& b);

}  // namespace nred
