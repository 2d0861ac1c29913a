#include "nred/relation.hpp"

#include <algorithm>

#include "nred/error.hpp"

namespace nred {

CommutativityRelation::CommutativityRelation(std::vector<std::string> alphabet)
    : alphabet_(std::move(alphabet)) {
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  for (std::size_t i = 0; i < alphabet_.size(); ++i) idx_.emplace(alphabet_[i], i);
  m_ = BitMatrix(alphabet_.size(), alphabet_.size());
}

std::size_t CommutativityRelation::require(std::string_view a) const {
  auto i = index(a);
  if (!i)
    throw Error(ErrorCode::validation_error,
                "commutativity pair names undeclared action '" + std::string(a) + "'");
  return *i;
}

CommutativityRelation CommutativityRelation::from_pairs(std::vector<std::string> alphabet,
                                                        const std::vector<ActionPair>& pairs) {
  CommutativityRelation r(std::move(alphabet));
  for (const auto& [a, b] : pairs) r.m_.set(r.require(a), r.require(b));
  return r;
}

CommutativityRelation CommutativityRelation::from_conflicts(
    std::vector<std::string> alphabet, const std::vector<ActionPair>& conflicts) {
  auto r = full(std::move(alphabet));
  for (const auto& [a, b] : conflicts) r.m_.reset(r.require(a), r.require(b));
  return r;
}

CommutativityRelation CommutativityRelation::full(std::vector<std::string> alphabet) {
  CommutativityRelation r(std::move(alphabet));
  for (std::size_t i = 0; i < r.alphabet_.size(); ++i)
    for (std::size_t j = 0; j < r.alphabet_.size(); ++j) r.m_.set(i, j);
  return r;
}

CommutativityRelation CommutativityRelation::empty(std::vector<std::string> alphabet) {
  return CommutativityRelation(std::move(alphabet));
}

CommutativityRelation CommutativityRelation::from_matrix(std::vector<std::string> alphabet,
                                                         BitMatrix m) {
  CommutativityRelation r(std::move(alphabet));
  if (m.rows() != r.alphabet_.size() || m.cols() != r.alphabet_.size())
    throw Error(ErrorCode::validation_error, "relation matrix does not match its alphabet");
  r.m_ = std::move(m);
  return r;
}

std::optional<std::size_t> CommutativityRelation::index(std::string_view a) const {
  auto it = idx_.find(std::string(a));
  if (it == idx_.end()) return std::nullopt;
  return it->second;
}

bool CommutativityRelation::contains(std::string_view a, std::string_view b) const {
  auto i = index(a);
  auto j = index(b);
  return i && j && m_.test(*i, *j);
}

std::vector<ActionPair> CommutativityRelation::pairs() const {
  std::vector<ActionPair> out;
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    m_.for_each_in_row(i, [&](std::size_t j) { out.emplace_back(alphabet_[i], alphabet_[j]); });
  return out;
}

std::vector<ActionPair> CommutativityRelation::conflicts() const {
  std::vector<ActionPair> out;
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    for (std::size_t j = 0; j < alphabet_.size(); ++j)
      if (!m_.test(i, j)) out.emplace_back(alphabet_[i], alphabet_[j]);
  return out;
}

bool CommutativityRelation::is_symmetric() const { return m_ == m_.transposed(); }

CommutativityRelation CommutativityRelation::symmetric_core() const {
  auto r = *this;
  r.m_ = m_.minus(m_.minus(m_.transposed()));
  return r;
}

CommutativityRelation CommutativityRelation::symmetric_closure() const {
  auto r = *this;
  r.m_ |= m_.transposed();
  return r;
}

CommutativityRelation CommutativityRelation::with(const std::vector<ActionPair>& extra) const {
  auto r = *this;
  for (const auto& [a, b] : extra) r.m_.set(require(a), require(b));
  return r;
}

CommutativityRelation CommutativityRelation::without(
    const std::vector<ActionPair>& removed) const {
  auto r = *this;
  for (const auto& [a, b] : removed) r.m_.reset(require(a), require(b));
  return r;
}

BitMatrix CommutativityRelation::matrix(const std::vector<std::string>& order) const {
  BitMatrix out(order.size(), order.size());
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> back(alphabet_.size(), kNone);
  std::vector<std::size_t> fwd(order.size(), kNone);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (auto k = index(order[i])) {
      back[*k] = i;
      fwd[i] = *k;
    }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (fwd[i] == kNone) continue;
    m_.for_each_in_row(fwd[i], [&](std::size_t k) {
      if (back[k] != kNone) out.set(i, back[k]);
    });
  }
  return out;
}

}  // namespace nred
