#include "xstpir/field.hpp"

#include <ostream>
#include <string>
#include <utility>

#include "xstpir/error.hpp"

namespace xstpir {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

void require_same(std::uint64_t p, std::uint64_t q) {
  if (p != q) {
    throw UsageError("field mismatch: F_" + std::to_string(p) + " vs F_" + std::to_string(q));
  }
}

__extension__ using Wide = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<Wide>(a) * b % p);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t smallest_valid_prime(std::size_t servers, std::size_t length) {
  std::uint64_t p = static_cast<std::uint64_t>(servers) + length;
  while (!is_prime(p)) ++p;
  return p;
}

PrimeField::PrimeField(std::uint64_t modulus) : p_(modulus) {
  if (modulus >= kMaxModulus || !is_prime(modulus)) {
    throw UsageError("field modulus must be a prime below 2^62, got " + std::to_string(modulus));
  }
}

Fe PrimeField::operator()(std::uint64_t v) const { return Fe(v % p_, p_); }

Fe PrimeField::from_signed(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return Fe(static_cast<std::uint64_t>(r), p_);
}

Fe PrimeField::zero() const { return Fe(0, p_); }
Fe PrimeField::one() const { return Fe(1 % p_, p_); }

Fe& Fe::operator+=(const Fe& o) {
  require_same(p_, o.p_);
  v_ += o.v_;
  if (v_ >= p_) v_ -= p_;
  return *this;
}

Fe& Fe::operator-=(const Fe& o) {
  require_same(p_, o.p_);
  v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
  return *this;
}

Fe& Fe::operator*=(const Fe& o) {
  require_same(p_, o.p_);
  v_ = mulmod(v_, o.v_, p_);
  return *this;
}

Fe& Fe::operator/=(const Fe& o) { return *this *= o.inv(); }

Fe Fe::operator-() const { return Fe(v_ == 0 ? 0 : p_ - v_, p_); }

Fe Fe::pow(std::uint64_t e) const {
  std::uint64_t base = v_;
  std::uint64_t acc = 1 % p_;
  while (e != 0) {
    if (e & 1) acc = mulmod(acc, base, p_);
    base = mulmod(base, base, p_);
    e >>= 1;
  }
  return Fe(acc, p_);
}

Fe Fe::inv() const {
  if (v_ == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(p_));
  return pow(p_ - 2);
}

std::ostream& operator<<(std::ostream& os, const Fe& a) { return os << a.value(); }

Fe dot(std::span<const Fe> a, std::span<const Fe> b) {
  if (a.size() != b.size()) {
    throw UsageError("dot: length " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  if (a.empty()) throw UsageError("dot: empty vectors carry no field");
  Fe acc = a[0].field().zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::vector<Fe> to_elements(const PrimeField& f, std::span<const std::uint64_t> values) {
  std::vector<Fe> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(f(v));
  return out;
}

std::vector<std::uint64_t> to_values(std::span<const Fe> elems) {
  std::vector<std::uint64_t> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.push_back(e.value());
  return out;
}

FeMatrix::FeMatrix(const PrimeField& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

FeMatrix FeMatrix::identity(const PrimeField& f, std::size_t n) {
  FeMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

std::vector<Fe> FeMatrix::operator*(std::span<const Fe> x) const {
  if (x.size() != cols_) throw UsageError("matrix-vector dimension mismatch");
  std::vector<Fe> y(rows_, field_.zero());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  }
  return y;
}

FeMatrix FeMatrix::operator*(const FeMatrix& o) const {
  if (cols_ != o.rows_) throw UsageError("matrix-matrix dimension mismatch");
  require_same(field_.modulus(), o.field_.modulus());
  FeMatrix out(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Fe a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out(r, c) += a * o(k, c);
    }
  }
  return out;
}

namespace {

// Reduces `m` to row echelon form in place, applying the same row operations
// to `rhs` (which may have zero columns). Returns the pivot column of each
// pivot row.
std::vector<std::size_t> eliminate(FeMatrix& m, FeMatrix& rhs) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
      for (std::size_t c = 0; c < rhs.cols(); ++c) std::swap(rhs(sel, c), rhs(row, c));
    }
    const Fe scale = m(row, col).inv();
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) *= scale;
    for (std::size_t c = 0; c < rhs.cols(); ++c) rhs(row, c) *= scale;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Fe factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
      for (std::size_t c = 0; c < rhs.cols(); ++c) rhs(r, c) -= factor * rhs(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<Fe> solve_linear(const FeMatrix& m, std::span<const Fe> y) {
  if (m.rows() != m.cols()) throw UsageError("solve_linear: matrix is not square");
  if (y.size() != m.rows()) throw UsageError("solve_linear: right-hand side has wrong length");
  FeMatrix a = m;
  FeMatrix b(m.field(), m.rows(), 1);
  for (std::size_t r = 0; r < m.rows(); ++r) b(r, 0) = y[r];
  if (eliminate(a, b).size() != m.rows()) throw SingularMatrix("solve_linear: singular matrix");
  std::vector<Fe> x;
  x.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) x.push_back(b(r, 0));
  return x;
}

std::size_t rank(FeMatrix m) {
  FeMatrix none(m.field(), m.rows(), 0);
  return eliminate(m, none).size();
}

FeMatrix inverse(const FeMatrix& m) {
  if (m.rows() != m.cols()) throw UsageError("inverse: matrix is not square");
  FeMatrix a = m;
  FeMatrix b = FeMatrix::identity(m.field(), m.rows());
  if (eliminate(a, b).size() != m.rows()) throw SingularMatrix("inverse: singular matrix");
  return b;
}

}  // namespace xstpir
