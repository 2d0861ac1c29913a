#include "nred/trace.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nred/error.hpp"
#include "nred/verdict.hpp"

namespace nred {

std::string to_string(const IndexedTrace& t) {
  if (t.empty()) return "ε";
  std::string s;
  for (const auto& e : t)
    s += "⟨" + e.action.label() + ":" + std::to_string(e.thread) + "⟩";
  return s;
}

namespace {

Action parse_label(const std::string& s, int col) {
  if (s == kSyncLabel || s == "*") return Action::syncpoint();
  auto wrapped = [&](const char* head) {
    auto h = std::string(head) + "(";
    return s.size() > h.size() + 1 && s.compare(0, h.size(), h) == 0 && s.back() == ')';
  };
  if (wrapped("acq")) return Action::acquire(s.substr(4, s.size() - 5));
  if (wrapped("rel")) return Action::release(s.substr(4, s.size() - 5));
  if (s.empty()) throw ParseError("empty action label", 1, col);
  return Action::plain(s);
}

}  // namespace

IndexedTrace parse_trace(std::string_view text) {
  IndexedTrace out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    auto start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string tok(text.substr(start, pos - start));
    auto colon = tok.rfind(':');
    const int col = static_cast<int>(start) + 1;
    if (colon == std::string::npos || colon + 1 == tok.size())
      throw ParseError("expected label:thread, got '" + tok + "'", 1, col);
    std::uint32_t th = 0;
    try {
      std::size_t used = 0;
      auto v = std::stoul(tok.substr(colon + 1), &used);
      if (used != tok.size() - colon - 1 || v == 0) throw std::invalid_argument("index");
      th = static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      throw ParseError("bad thread index in '" + tok + "'", 1, col);
    }
    out.push_back({parse_label(tok.substr(0, colon), col), th});
  }
  return out;
}

std::vector<Action> project(const IndexedTrace& t, std::uint32_t thread) {
  std::vector<Action> out;
  for (const auto& e : t)
    if (e.thread == thread) out.push_back(e.action);
  return out;
}

std::vector<std::uint32_t> threads_of(const IndexedTrace& t) {
  std::set<std::uint32_t> s;
  for (const auto& e : t) s.insert(e.thread);
  return {s.begin(), s.end()};
}

IndexedTrace erase_synchronization(const IndexedTrace& t) {
  IndexedTrace out;
  for (const auto& e : t)
    if (e.action.is_named()) out.push_back(e);
  return out;
}

std::string to_string(const Bounds& b) {
  std::ostringstream os;
  os << "threads<=" << b.max_threads << " local-len<=" << b.max_local_len;
  if (b.max_swap_depth) os << " swap-depth<=" << *b.max_swap_depth;
  return os.str();
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::sound: return "sound";
    case Outcome::unsound: return "unsound";
    case Outcome::inconclusive: return "inconclusive";
    case Outcome::not_applicable: return "not-applicable";
  }
  return "?";
}

}  // namespace nred
