#pragma once

// Three-server scheme over F_2 with X = T = 1 and one-bit messages.
//
//   server  storage    query
//   1       W + Z      Z'
//   2       W + Z B    Q + Z'
//   3       Z          (I + B) Z' + B Q
//
// W, Z are row vectors in F_2^K, Z' and Q are columns. The three answers
// sum to W Q. B and I + B must both be invertible.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "xstpir/binmatrix.hpp"
#include "xstpir/capacity.hpp"

namespace xstpir::binary {

// The K x K matrix with det(B) = det(I + B) = 1. K >= 2.
BinMatrix build_B(std::size_t k);

// Throws UsageError unless B is K x K with B and I + B invertible.
void check_matrix(const BinMatrix& b);

struct BinarySchemeState {
  BitVector w;   // W_1..W_K, one bit each
  BitVector z;   // storage noise
  BitVector zp;  // query noise
  BinMatrix b;

  // Uses build_B(K). Throws UsageError for K < 2 or mismatched lengths.
  static BinarySchemeState make(BitVector w, BitVector z, BitVector zp);
  static BinarySchemeState with_matrix(BitVector w, BitVector z, BitVector zp, BinMatrix b);
  // No check on B; for negative controls.
  static BinarySchemeState unchecked(BitVector w, BitVector z, BitVector zp, BinMatrix b);

  std::size_t k() const noexcept { return w.size(); }
};

using Triple = std::array<BitVector, 3>;

BitVector unit_vector(std::size_t k, std::size_t theta);

Triple binary_storage(const BitVector& w, const BitVector& z, const BinMatrix& b);
Triple binary_queries(const BitVector& zp, const BinMatrix& b, std::size_t theta);
// nullopt when the query is all zero: nothing is downloaded.
std::optional<std::uint8_t> binary_answer(const BitVector& storage, const BitVector& query);
std::uint8_t binary_decode(const std::array<std::optional<std::uint8_t>, 3>& answers);

struct BinaryRound {
  Triple storage;
  Triple queries;
  std::array<std::optional<std::uint8_t>, 3> answers;
  std::size_t downloaded = 0;
  std::uint8_t decoded = 0;
};

BinaryRound binary_round(const BinarySchemeState& state, std::size_t theta);

// (1/3)(1 - 2^-K)^-1
Rate binary_rate(std::size_t k);

}  // namespace xstpir::binary
