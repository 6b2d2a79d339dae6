#pragma once

// Mixed-radix counters for walking finite randomness spaces exhaustively.

#include <cstdint>
#include <optional>
#include <vector>

#include "xstpir/rng.hpp"

namespace xstpir {

// Product of the radices, or nullopt once it passes 2^62. An empty radix
// list describes a single (empty) realization.
std::optional<std::uint64_t> space_size(const std::vector<std::uint64_t>& radix);

// Multiplies sizes, saturating to nullopt past 2^62.
std::optional<std::uint64_t> space_product(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b);

inline std::vector<std::uint64_t> uniform_radix(std::size_t n, std::uint64_t base) {
  return std::vector<std::uint64_t>(n, base);
}

// Steps `digits` to the next value, least significant digit first. Returns
// false (with digits back at zero) after the last value.
bool next_digits(Symbols& digits, const std::vector<std::uint64_t>& radix);

// Calls f(digits) for every point of the space.
template <class F>
void for_each_point(const std::vector<std::uint64_t>& radix, F&& f) {
  Symbols digits(radix.size(), 0);
  do {
    f(static_cast<const Symbols&>(digits));
  } while (next_digits(digits, radix));
}

}  // namespace xstpir
