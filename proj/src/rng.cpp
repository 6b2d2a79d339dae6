#include "xstpir/rng.hpp"

#include "xstpir/error.hpp"

namespace xstpir {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw UsageError("Rng::uniform: bound must be positive");
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
}

Symbols Rng::uniform_vector(std::size_t n, std::uint64_t bound) {
  Symbols out(n);
  for (auto& v : out) v = uniform(bound);
  return out;
}

Symbols Rng::mixed(const std::vector<std::uint64_t>& radix) {
  Symbols out;
  out.reserve(radix.size());
  for (auto r : radix) out.push_back(uniform(r));
  return out;
}

}  // namespace xstpir
