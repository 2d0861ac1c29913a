#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nred/template.hpp"

namespace nred {

/// Interned transition labels shared between automata that are compared.
class SymbolTable {
 public:
  int intern(const std::string& s);
  const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

inline constexpr int kEpsilon = -1;

/// Nondeterministic automaton with ε-moves (label kEpsilon).
struct Nfa {
  struct Arc {
    int label;
    std::uint32_t target;
  };
  std::uint32_t init = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<Arc>> arcs;

  std::uint32_t add_state(bool accept = false);
  void add_arc(std::uint32_t from, int label, std::uint32_t to) {
    arcs[from].push_back({label, to});
  }
  std::size_t size() const { return arcs.size(); }
};

/// Maps an edge label to a symbol, or nullopt to read it as ε.
using LabelMap = std::function<std::optional<std::string>(const Action&)>;

/// Every action read by its printable label.
std::optional<std::string> label_all(const Action& a);
/// Sync-points read as ε, everything else by label.
std::optional<std::string> label_erase_syncpoints(const Action& a);

/// Automaton accepting T(t): labels of init→exit paths.
Nfa template_nfa(const ThreadTemplate& t, SymbolTable& symbols, const LabelMap& map);

/// L(a) ⊆ L(b); on failure the counterexample receives a word of L(a)∖L(b).
bool nfa_included(const Nfa& a, const Nfa& b, const SymbolTable& symbols,
                  std::vector<std::string>* counterexample = nullptr);

/// L(a) = L(b); the counterexample lies in the symmetric difference.
bool nfa_equivalent(const Nfa& a, const Nfa& b, const SymbolTable& symbols,
                    std::vector<std::string>* counterexample = nullptr);

}  // namespace nred
