#include "nred/bit_matrix.hpp"

#include <algorithm>

#include "nred/graph.hpp"

namespace nred {

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BitMatrix::or_row(std::size_t dst, std::span<const std::uint64_t> src) {
  std::uint64_t* w = bits_.data() + dst * stride_;
  for (std::size_t k = 0; k < stride_; ++k) w[k] |= src[k];
}

bool BitMatrix::row_any(std::size_t r) const {
  auto w = row(r);
  return std::any_of(w.begin(), w.end(), [](std::uint64_t x) { return x != 0; });
}

std::size_t BitMatrix::row_count(std::size_t r) const {
  std::size_t n = 0;
  for (auto x : row(r)) n += static_cast<std::size_t>(std::popcount(x));
  return n;
}

std::size_t BitMatrix::count() const {
  std::size_t n = 0;
  for (auto x : bits_) n += static_cast<std::size_t>(std::popcount(x));
  return n;
}

std::size_t BitMatrix::next_in_row(std::size_t r, std::size_t from) const {
  if (from >= cols_) return cols_;
  const std::uint64_t* w = bits_.data() + r * stride_;
  std::size_t k = from / 64;
  std::uint64_t word = w[k] & (~std::uint64_t{0} << (from % 64));
  while (true) {
    if (word) {
      auto c = k * 64 + static_cast<std::size_t>(std::countr_zero(word));
      return c < cols_ ? c : cols_;
    }
    if (++k >= stride_) return cols_;
    word = w[k];
  }
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for_each_in_row(r, [&](std::size_t c) { t.set(c, r); });
  return t;
}

BitMatrix& BitMatrix::operator|=(const BitMatrix& o) {
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= o.bits_[k];
  return *this;
}

BitMatrix BitMatrix::minus(const BitMatrix& o) const {
  BitMatrix r = *this;
  for (std::size_t k = 0; k < bits_.size(); ++k) r.bits_[k] &= ~o.bits_[k];
  return r;
}

bool BitMatrix::subset_of(const BitMatrix& o) const {
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] & ~o.bits_[k]) return false;
  return true;
}

BitMatrix compose(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows(), b.cols());
  const std::size_t sparse_limit = std::max<std::size_t>(1, b.cols() / 64);
  std::vector<std::size_t> counts(b.rows());
  for (std::size_t z = 0; z < b.rows(); ++z) counts[z] = b.row_count(z);
  for (std::size_t x = 0; x < a.rows(); ++x) {
    a.for_each_in_row(x, [&](std::size_t z) {
      if (counts[z] == 0) return;
      if (counts[z] <= sparse_limit)
        b.for_each_in_row(z, [&](std::size_t y) { out.set(x, y); });
      else
        out.or_row(x, b.row(z));
    });
  }
  return out;
}

BitMatrix transitive_closure(const BitMatrix& r) {
  const std::size_t n = r.rows();
  auto sccs = scc(r);
  const std::size_t k = sccs.size();

  // Successor components, deduplicated. Component ids are reverse-topological,
  // so successors have smaller ids and are finished first.
  std::vector<std::vector<std::uint32_t>> succ(k);
  std::vector<std::uint32_t> mark(k, std::uint32_t(-1));
  for (std::uint32_t c = 0; c < k; ++c) {
    for (auto v : sccs.members[c]) {
      r.for_each_in_row(v, [&](std::size_t w) {
        auto d = sccs.component[w];
        if (d != c && mark[d] != c) {
          mark[d] = c;
          succ[c].push_back(d);
        }
      });
    }
    // Nearest first: a larger id is closer to c in topological order.
    std::sort(succ[c].begin(), succ[c].end(), std::greater<>());
  }

  // full[c] = members(c) ∪ reach⁺(c); stored on the component's first member.
  BitMatrix closure(n, n);
  BitMatrix full(k, n);
  for (std::uint32_t c = 0; c < k; ++c) {
    auto acc = full.row(c);
    for (auto d : succ[c]) {
      auto rep = sccs.members[d].front();
      if ((acc[rep / 64] >> (rep % 64)) & 1u) continue;
      full.or_row(c, full.row(d));
    }
    const auto& mem = sccs.members[c];
    if (sccs.nontrivial[c])
      for (auto v : mem) full.set(c, v);
    for (auto v : mem) closure.or_row(v, full.row(c));
    for (auto v : mem) full.set(c, v);
  }
  return closure;
}

}  // namespace nred
