#include "xstpir/enumerate.hpp"

#include "xstpir/error.hpp"

namespace xstpir {

namespace {
constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
}

std::optional<std::uint64_t> space_product(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b) {
  if (!a || !b) return std::nullopt;
  if (*a == 0 || *b == 0) return 0;
  if (*a > kLimit / *b) return std::nullopt;
  return *a * *b;
}

std::optional<std::uint64_t> space_size(const std::vector<std::uint64_t>& radix) {
  std::optional<std::uint64_t> n = 1;
  for (auto r : radix) n = space_product(n, r);
  return n;
}

bool next_digits(Symbols& digits, const std::vector<std::uint64_t>& radix) {
  if (digits.size() != radix.size()) throw UsageError("next_digits: digit count does not match radix");
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace xstpir
