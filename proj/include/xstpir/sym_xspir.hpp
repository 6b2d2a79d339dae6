#pragma once

// Symmetrically secure retrieval on N = X + 1 servers with T = 1, using
// K^2 symbols of storage per server and single-symbol messages.
//
// Servers 1..X store noise Z_{n,k,m}; server N stores W_k + sum_x Z_{x,k,m},
// for k, m in [0, K). The user draws m_o uniformly, asks servers 1..X for
// column m_o and server N for the shifted diagonal m = m_o - theta + k.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "xstpir/capacity.hpp"
#include "xstpir/field.hpp"
#include "xstpir/messages.hpp"

namespace xstpir::sym_xspir {

// Noise grid Z_{x,k,m}; the m index is taken modulo K.
class SymNoise {
 public:
  SymNoise(const PrimeField& field, std::size_t x, std::size_t k);
  // `values` laid out as [x][k][m].
  static SymNoise from_values(const PrimeField& field, std::size_t x, std::size_t k,
                              const std::vector<std::uint64_t>& values);

  std::size_t x() const noexcept { return x_; }
  std::size_t k() const noexcept { return k_; }
  // server x in [1, X]; k, m 0-based; m wraps.
  const Fe& at(std::size_t x, std::size_t k, std::int64_t m) const;
  Fe& at(std::size_t x, std::size_t k, std::int64_t m);

 private:
  std::size_t index(std::size_t x, std::size_t k, std::int64_t m) const;

  std::size_t x_, k_;
  std::vector<Fe> data_;
};

struct SymXspirState {
  MessageSet messages;  // K messages of one symbol
  SymNoise noise;
  std::size_t m_o;  // 0-based, in [0, K)

  static SymXspirState make(MessageSet messages, SymNoise noise, std::size_t m_o);

  std::size_t x() const noexcept { return noise.x(); }
  std::size_t n() const noexcept { return noise.x() + 1; }
  std::size_t k() const noexcept { return messages.k(); }
};

// share[k][m] for each of the N servers.
using SymShare = std::vector<std::vector<Fe>>;

std::vector<SymShare> sym_storage(const MessageSet& messages, const SymNoise& noise);

// The index sent to each server: m_o to servers 1..X, (m_o - theta + 1) mod K
// to server N, so that server N's entry k sits at m = m_o - theta + k.
std::vector<std::size_t> sym_queries(std::size_t n, std::size_t k, std::size_t m_o, std::size_t theta);

// K symbols: share[k][index] from servers 1..X, share[k][index + k] from N.
std::vector<Fe> sym_answer(std::size_t server, std::size_t n, const SymShare& share, std::size_t index);

// W_theta = (entry theta of server N) - sum over x of (entry theta of server x).
Fe sym_decode(const std::vector<std::vector<Fe>>& answers, std::size_t theta);

struct SymRound {
  std::vector<SymShare> storage;
  std::vector<std::size_t> queries;
  std::vector<std::vector<Fe>> answers;
  std::size_t downloaded = 0;
  Fe decoded;
};

SymRound sym_xspir_round(const SymXspirState& state, std::size_t theta);

// 1 / (K N)
Rate sym_rate(std::size_t n, std::size_t k);

}  // namespace xstpir::sym_xspir
