#pragma once

// Closed-form capacity, bound and rate expressions, evaluated exactly.

#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace xstpir {

using BigInt = boost::multiprecision::cpp_int;
using Fraction = boost::rational<BigInt>;

std::string to_string(const Fraction& f);
double to_double(const Fraction& f);

// A rate (desired symbols per downloaded symbol): an exact rational in
// [0, 1], kept in lowest terms.
class Rate {
 public:
  Rate() : value_(0) {}
  Rate(BigInt num, BigInt den);
  explicit Rate(const Fraction& f);

  const BigInt& numerator() const { return value_.numerator(); }
  const BigInt& denominator() const { return value_.denominator(); }
  const Fraction& value() const noexcept { return value_; }
  double to_double() const { return xstpir::to_double(value_); }
  std::string to_string() const { return xstpir::to_string(value_); }

  friend bool operator==(const Rate&, const Rate&) = default;
  friend bool operator<(const Rate& a, const Rate& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rate& a, const Rate& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rate& a, const Rate& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rate& a, const Rate& b) { return a.value_ >= b.value_; }

 private:
  Fraction value_;
};

// Capacity of replicated PIR with N servers and K messages.
Rate c_pir(std::uint64_t n, std::uint64_t k);

// Capacity of T-private PIR; 1/K once T >= N.
Rate c_tpir(std::uint64_t n, std::uint64_t k, std::uint64_t t);

// ((N-X)/N) * C_TPIR(N-X, K, T). Requires X < N.
Rate xstpir_upper_bound(std::uint64_t n, std::uint64_t k, std::uint64_t x, std::uint64_t t);

// Limit of the capacity as K grows: 1 - (X+T)/N when N > X+T, else 0.
Rate xstpir_asymptotic(std::uint64_t n, std::uint64_t x, std::uint64_t t);

// Exact capacity for N = 3, X = T = 1.
Rate c_n3(std::uint64_t k);

// Rate of the cross-subspace-alignment scheme at finite K once all-zero
// queries are skipped: (1 - q^{-KL})^{-1} (1 - (X+T)/N).
Rate finite_k_rate(std::uint64_t n, std::uint64_t x, std::uint64_t t, std::uint64_t k,
                   std::uint64_t q, std::uint64_t l);

// Rate of the X = 1 secure MDS-PIR alternative that stores one noise symbol
// per message in an (N, M) MDS code. Requires 2 <= M < N.
Rate mds_pir_rate(std::uint64_t n, std::uint64_t k, std::uint64_t m);
Rate mds_pir_asym(std::uint64_t n, std::uint64_t m);

// Largest mds_pir_asym(N, M) over integer M in [2, N-1]; returns (M, rate).
std::pair<std::uint64_t, Rate> best_mds_pir_asym(std::uint64_t n);

// (1 - 1/sqrt(N))^2 as a double, for display only.
double sqrt_bound(std::uint64_t n);
// a <= (1 - 1/sqrt(N))^2, decided exactly.
bool at_most_sqrt_bound(const Fraction& a, std::uint64_t n);
// (1 - 1/sqrt(N))^2 < b, decided exactly.
bool sqrt_bound_below(const Fraction& b, std::uint64_t n);

}  // namespace xstpir
