#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "xstpir/field.hpp"

namespace xstpir {

// Messages W_1..W_K, L symbols each.
class MessageSet {
 public:
  MessageSet(const PrimeField& field, std::size_t k, std::size_t l);  // all zero
  static MessageSet from_values(const PrimeField& field, std::size_t k, std::size_t l,
                                std::span<const std::uint64_t> values);

  std::size_t k() const noexcept { return k_; }
  std::size_t l() const noexcept { return l_; }
  const PrimeField& field() const noexcept { return field_; }

  Fe& at(std::size_t msg, std::size_t sym) { return symbols_[msg * l_ + sym]; }
  const Fe& at(std::size_t msg, std::size_t sym) const { return symbols_[msg * l_ + sym]; }
  // W_k, 0-based message index.
  std::span<const Fe> message(std::size_t msg) const { return {symbols_.data() + msg * l_, l_}; }
  // The K-vector of symbol `sym` across all messages.
  std::vector<Fe> column(std::size_t sym) const;

  friend bool operator==(const MessageSet&, const MessageSet&) = default;

 private:
  PrimeField field_;
  std::size_t k_, l_;
  std::vector<Fe> symbols_;
};

}  // namespace xstpir
