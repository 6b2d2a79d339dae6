#pragma once

// Exact arithmetic over prime fields F_p plus small dense linear algebra.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace xstpir {

bool is_prime(std::uint64_t n);

// Smallest prime p with p >= servers + length. Such a field has at least
// `servers` elements alpha with alpha + i != 0 for every i in [1, length].
std::uint64_t smallest_valid_prime(std::size_t servers, std::size_t length);

class Fe;

class PrimeField {
 public:
  // Throws UsageError unless modulus is a prime below 2^62.
  explicit PrimeField(std::uint64_t modulus);

  std::uint64_t modulus() const noexcept { return p_; }

  // Reduces v modulo p.
  Fe operator()(std::uint64_t v) const;
  Fe from_signed(std::int64_t v) const;
  Fe zero() const;
  Fe one() const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

// An element of F_p. The element remembers its modulus; combining elements
// of different fields throws UsageError.
class Fe {
 public:
  std::uint64_t value() const noexcept { return v_; }
  std::uint64_t modulus() const noexcept { return p_; }
  PrimeField field() const { return PrimeField(p_); }
  bool is_zero() const noexcept { return v_ == 0; }

  Fe& operator+=(const Fe& o);
  Fe& operator-=(const Fe& o);
  Fe& operator*=(const Fe& o);
  Fe& operator/=(const Fe& o);

  friend Fe operator+(Fe a, const Fe& b) { return a += b; }
  friend Fe operator-(Fe a, const Fe& b) { return a -= b; }
  friend Fe operator*(Fe a, const Fe& b) { return a *= b; }
  friend Fe operator/(Fe a, const Fe& b) { return a /= b; }
  Fe operator-() const;

  // Throws DivisionByZero for the zero element.
  Fe inv() const;
  Fe pow(std::uint64_t e) const;

  friend bool operator==(const Fe& a, const Fe& b) {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }

 private:
  friend class PrimeField;
  Fe(std::uint64_t v, std::uint64_t p) : v_(v), p_(p) {}

  std::uint64_t v_;
  std::uint64_t p_;
};

std::ostream& operator<<(std::ostream& os, const Fe& a);

// Named forms of the operators.
inline Fe add(const Fe& a, const Fe& b) { return a + b; }
inline Fe mul(const Fe& a, const Fe& b) { return a * b; }
inline Fe neg(const Fe& a) { return -a; }
inline Fe inv(const Fe& a) { return a.inv(); }

Fe dot(std::span<const Fe> a, std::span<const Fe> b);

std::vector<Fe> to_elements(const PrimeField& f, std::span<const std::uint64_t> values);
std::vector<std::uint64_t> to_values(std::span<const Fe> elems);

// Dense row-major matrix over one prime field.
class FeMatrix {
 public:
  FeMatrix(const PrimeField& f, std::size_t rows, std::size_t cols);
  static FeMatrix identity(const PrimeField& f, std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeField& field() const noexcept { return field_; }

  Fe& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Fe& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Fe> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<Fe> operator*(std::span<const Fe> x) const;
  FeMatrix operator*(const FeMatrix& o) const;

  friend bool operator==(const FeMatrix&, const FeMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Fe> data_;
};

// Solves m * x = y by Gaussian elimination with first-nonzero pivoting.
// Throws UsageError if m is not square or y has the wrong length, and
// SingularMatrix if m is singular.
std::vector<Fe> solve_linear(const FeMatrix& m, std::span<const Fe> y);

std::size_t rank(FeMatrix m);

// Throws SingularMatrix if m is singular.
FeMatrix inverse(const FeMatrix& m);

}  // namespace xstpir
