#pragma once

// Dense matrices over F_2, stored one byte per bit in row-major order.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace xstpir {

using BitVector = std::vector<std::uint8_t>;

class BinMatrix {
 public:
  BinMatrix(std::size_t rows, std::size_t cols);
  // Each string is one row of '0'/'1' characters.
  BinMatrix(std::initializer_list<std::string> rows);

  static BinMatrix identity(std::size_t n);
  static BinMatrix zeros(std::size_t n) { return BinMatrix(n, n); }
  // Ones on the anti-diagonal.
  static BinMatrix anti_identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint8_t get(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint8_t b) { bits_[r * cols_ + c] = b & 1; }
  void flip(std::size_t r, std::size_t c) { bits_[r * cols_ + c] ^= 1; }

  // Copies `block` into this matrix with its top-left corner at (r, c).
  void place(std::size_t r, std::size_t c, const BinMatrix& block);

  BinMatrix operator+(const BinMatrix& o) const;
  BinMatrix operator*(const BinMatrix& o) const;
  // Matrix times column vector.
  BitVector operator*(const BitVector& x) const;

  std::string to_string() const;

  friend bool operator==(const BinMatrix&, const BinMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> bits_;
};

// Row vector times matrix.
BitVector operator*(const BitVector& x, const BinMatrix& m);

std::uint8_t bin_dot(const BitVector& a, const BitVector& b);
BitVector bin_add(const BitVector& a, const BitVector& b);

std::uint8_t bin_det(const BinMatrix& m);
// Throws SingularMatrix when det(m) = 0.
BinMatrix bin_inv(const BinMatrix& m);

}  // namespace xstpir
