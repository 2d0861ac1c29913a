#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nred/bit_matrix.hpp"

namespace nred {

using ActionPair = std::pair<std::string, std::string>;

/// Ordered set of action pairs I over a declared alphabet of plain actions
/// (and, after lifting, block symbols). (a,b) ∈ I means that `a b` executed by
/// different threads may be reordered to `b a`. Not necessarily symmetric.
class CommutativityRelation {
 public:
  CommutativityRelation() = default;

  /// Throws ValidationError when a pair mentions an undeclared action.
  static CommutativityRelation from_pairs(std::vector<std::string> alphabet,
                                          const std::vector<ActionPair>& pairs);
  /// I = alphabet² ∖ conflicts.
  static CommutativityRelation from_conflicts(std::vector<std::string> alphabet,
                                              const std::vector<ActionPair>& conflicts);
  static CommutativityRelation full(std::vector<std::string> alphabet);
  static CommutativityRelation empty(std::vector<std::string> alphabet);
  /// `m` is indexed by `alphabet`, which must be sorted and duplicate-free.
  static CommutativityRelation from_matrix(std::vector<std::string> alphabet, BitMatrix m);

  /// Sorted, duplicate-free.
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::optional<std::size_t> index(std::string_view a) const;
  bool declared(std::string_view a) const { return index(a).has_value(); }

  /// False when either action is undeclared.
  bool contains(std::string_view a, std::string_view b) const;

  std::vector<ActionPair> pairs() const;
  /// alphabet² ∖ I.
  std::vector<ActionPair> conflicts() const;
  std::size_t size() const { return m_.count(); }

  bool is_symmetric() const;
  /// I ∩ I⁻¹
  CommutativityRelation symmetric_core() const;
  /// I ∪ I⁻¹
  CommutativityRelation symmetric_closure() const;

  CommutativityRelation with(const std::vector<ActionPair>& extra) const;
  CommutativityRelation without(const std::vector<ActionPair>& removed) const;

  /// Membership matrix over `order` (undeclared actions commute with nothing).
  BitMatrix matrix(const std::vector<std::string>& order) const;

  friend bool operator==(const CommutativityRelation& x, const CommutativityRelation& y) {
    return x.alphabet_ == y.alphabet_ && x.m_ == y.m_;
  }

 private:
  explicit CommutativityRelation(std::vector<std::string> alphabet);
  std::size_t require(std::string_view a) const;

  std::vector<std::string> alphabet_;
  std::unordered_map<std::string, std::size_t> idx_;
  BitMatrix m_;
};

}  // namespace nred
