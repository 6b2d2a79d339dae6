#include "xstpir/messages.hpp"

#include "xstpir/error.hpp"

namespace xstpir {

MessageSet::MessageSet(const PrimeField& field, std::size_t k, std::size_t l)
    : field_(field), k_(k), l_(l), symbols_(k * l, field.zero()) {
  if (k == 0 || l == 0) throw UsageError("message set needs K >= 1 and L >= 1");
}

MessageSet MessageSet::from_values(const PrimeField& field, std::size_t k, std::size_t l,
                                   std::span<const std::uint64_t> values) {
  MessageSet m(field, k, l);
  if (values.size() != k * l) throw UsageError("message set: expected K x L values");
  for (std::size_t i = 0; i < values.size(); ++i) m.symbols_[i] = field(values[i]);
  return m;
}

std::vector<Fe> MessageSet::column(std::size_t sym) const {
  std::vector<Fe> col;
  col.reserve(k_);
  for (std::size_t m = 0; m < k_; ++m) col.push_back(at(m, sym));
  return col;
}

}  // namespace xstpir
