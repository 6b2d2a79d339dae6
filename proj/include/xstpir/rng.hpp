#pragma once

// Seeded randomness for noise, messages and query material. Not meant to be
// cryptographically strong; runs are reproducible from (seed, stream).

#include <cstdint>
#include <random>
#include <vector>

namespace xstpir {

using Symbols = std::vector<std::uint64_t>;

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Uniform in [0, bound). bound >= 1.
  std::uint64_t uniform(std::uint64_t bound);
  Symbols uniform_vector(std::size_t n, std::uint64_t bound);
  // One uniform digit per radix entry.
  Symbols mixed(const std::vector<std::uint64_t>& radix);

 private:
  std::mt19937_64 engine_;
};

}  // namespace xstpir
