#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nred {

/// Dense boolean matrix, row-major, 64 columns per word. Used for relations
/// over action alphabets and for location reachability.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), bits_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool test(std::size_t r, std::size_t c) const {
    return (bits_[r * stride_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c) { bits_[r * stride_ + c / 64] |= bit(c); }
  void reset(std::size_t r, std::size_t c) { bits_[r * stride_ + c / 64] &= ~bit(c); }

  std::span<const std::uint64_t> row(std::size_t r) const {
    return {bits_.data() + r * stride_, stride_};
  }
  std::span<std::uint64_t> row(std::size_t r) { return {bits_.data() + r * stride_, stride_}; }

  /// row(dst) |= other.row(src); both matrices must have the same width.
  void or_row(std::size_t dst, std::span<const std::uint64_t> src);

  bool row_any(std::size_t r) const;
  std::size_t row_count(std::size_t r) const;
  std::size_t count() const;

  /// First set column >= from in row r, or cols() when none.
  std::size_t next_in_row(std::size_t r, std::size_t from) const;

  template <class F>
  void for_each_in_row(std::size_t r, F&& f) const {
    const std::uint64_t* w = bits_.data() + r * stride_;
    for (std::size_t k = 0; k < stride_; ++k) {
      std::uint64_t word = w[k];
      while (word) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

  BitMatrix transposed() const;
  BitMatrix& operator|=(const BitMatrix& o);
  /// Set difference: this ∖ o.
  BitMatrix minus(const BitMatrix& o) const;
  bool subset_of(const BitMatrix& o) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  static std::uint64_t bit(std::size_t c) { return std::uint64_t{1} << (c % 64); }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Relational composition, left to right: (x,y) ∈ a∘b iff a(x,z) and b(z,y)
/// for some z.
BitMatrix compose(const BitMatrix& a, const BitMatrix& b);

/// Transitive (non-reflexive) closure r⁺ of a square relation.
BitMatrix transitive_closure(const BitMatrix& r);

}  // namespace nred
