#include "xstpir/binmatrix.hpp"

#include <utility>

#include "xstpir/error.hpp"

namespace xstpir {

BinMatrix::BinMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

BinMatrix::BinMatrix(std::initializer_list<std::string> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  bits_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw UsageError("BinMatrix: ragged rows");
    for (char ch : row) {
      if (ch != '0' && ch != '1') throw UsageError("BinMatrix: rows must contain only 0/1");
      bits_.push_back(ch == '1');
    }
  }
}

BinMatrix BinMatrix::identity(std::size_t n) {
  BinMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

BinMatrix BinMatrix::anti_identity(std::size_t n) {
  BinMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, n - 1 - i, 1);
  return m;
}

void BinMatrix::place(std::size_t r, std::size_t c, const BinMatrix& block) {
  if (r + block.rows_ > rows_ || c + block.cols_ > cols_) {
    throw UsageError("BinMatrix::place: block does not fit");
  }
  for (std::size_t i = 0; i < block.rows_; ++i) {
    for (std::size_t j = 0; j < block.cols_; ++j) set(r + i, c + j, block.get(i, j));
  }
}

BinMatrix BinMatrix::operator+(const BinMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("BinMatrix: dimension mismatch in +");
  BinMatrix out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= o.bits_[i];
  return out;
}

BinMatrix BinMatrix::operator*(const BinMatrix& o) const {
  if (cols_ != o.rows_) throw UsageError("BinMatrix: dimension mismatch in *");
  BinMatrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out.bits_[r * o.cols_ + c] ^= o.get(k, c);
    }
  }
  return out;
}

BitVector BinMatrix::operator*(const BitVector& x) const {
  if (x.size() != cols_) throw UsageError("BinMatrix: dimension mismatch in matrix-vector");
  BitVector y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint8_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc ^= get(r, c) & x[c];
    y[r] = acc;
  }
  return y;
}

std::string BinMatrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

BitVector operator*(const BitVector& x, const BinMatrix& m) {
  if (x.size() != m.rows()) throw UsageError("BinMatrix: dimension mismatch in vector-matrix");
  BitVector y(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!x[r]) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) y[c] ^= m.get(r, c);
  }
  return y;
}

std::uint8_t bin_dot(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw UsageError("bin_dot: length mismatch");
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
  return acc;
}

BitVector bin_add(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw UsageError("bin_add: length mismatch");
  BitVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] ^ b[i]) & 1;
  return out;
}

namespace {

// Gauss-Jordan over F_2 on `m`, mirroring row operations on `aug`.
// Returns false if m is singular.
bool reduce(BinMatrix& m, BinMatrix& aug) {
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && !m.get(sel, col)) ++sel;
    if (sel == n) return false;
    if (sel != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::uint8_t t = m.get(sel, c);
        m.set(sel, c, m.get(col, c));
        m.set(col, c, t);
      }
      for (std::size_t c = 0; c < aug.cols(); ++c) {
        std::uint8_t t = aug.get(sel, c);
        aug.set(sel, c, aug.get(col, c));
        aug.set(col, c, t);
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || !m.get(r, col)) continue;
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, m.get(r, c) ^ m.get(col, c));
      for (std::size_t c = 0; c < aug.cols(); ++c) aug.set(r, c, aug.get(r, c) ^ aug.get(col, c));
    }
  }
  return true;
}

}  // namespace

std::uint8_t bin_det(const BinMatrix& m) {
  if (m.rows() != m.cols()) throw UsageError("bin_det: matrix is not square");
  BinMatrix a = m;
  BinMatrix none(m.rows(), 0);
  return reduce(a, none) ? 1 : 0;
}

BinMatrix bin_inv(const BinMatrix& m) {
  if (m.rows() != m.cols()) throw UsageError("bin_inv: matrix is not square");
  BinMatrix a = m;
  BinMatrix b = BinMatrix::identity(m.rows());
  if (!reduce(a, b)) throw SingularMatrix("bin_inv: singular matrix over F_2");
  return b;
}

}  // namespace xstpir
