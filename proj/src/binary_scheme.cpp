#include "xstpir/binary_scheme.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "xstpir/error.hpp"

namespace xstpir::binary {

BinMatrix build_B(std::size_t k) {
  if (k < 2) throw UsageError("build_B requires K >= 2 (no suitable matrix exists for K = 1)");
  BinMatrix b(k, k);
  const std::size_t h = k / 2;
  if (k % 2 == 0) {
    b.place(0, 0, BinMatrix::identity(h));
    b.place(0, h, BinMatrix::anti_identity(h));
    b.place(h, 0, BinMatrix::anti_identity(h));
  } else {
    BinMatrix corner = BinMatrix::anti_identity(h + 1);
    corner.flip(h, h);
    b.place(0, 0, corner);
    b.place(0, h + 1, BinMatrix::anti_identity(h));
    b.place(h + 1, 0, BinMatrix::anti_identity(h));
  }
  return b;
}

void check_matrix(const BinMatrix& b) {
  if (b.rows() != b.cols()) throw UsageError("binary scheme: B must be square");
  if (bin_det(b) != 1) throw UsageError("binary scheme: B must be invertible");
  if (bin_det(b + BinMatrix::identity(b.rows())) != 1) {
    throw UsageError("binary scheme: I + B must be invertible");
  }
}

namespace {

void check_lengths(const BitVector& w, const BitVector& z, const BitVector& zp, const BinMatrix& b) {
  if (w.size() < 2) throw UsageError("binary scheme requires K >= 2, got K=" + std::to_string(w.size()));
  if (z.size() != w.size() || zp.size() != w.size() || b.rows() != w.size() || b.cols() != w.size()) {
    throw UsageError("binary scheme: W, Z, Z' and B must all have dimension K");
  }
}

}  // namespace

BinarySchemeState BinarySchemeState::make(BitVector w, BitVector z, BitVector zp) {
  if (w.size() < 2) throw UsageError("binary scheme requires K >= 2, got K=" + std::to_string(w.size()));
  BinMatrix b = build_B(w.size());
  return with_matrix(std::move(w), std::move(z), std::move(zp), std::move(b));
}

BinarySchemeState BinarySchemeState::with_matrix(BitVector w, BitVector z, BitVector zp, BinMatrix b) {
  check_lengths(w, z, zp, b);
  check_matrix(b);
  return {std::move(w), std::move(z), std::move(zp), std::move(b)};
}

BinarySchemeState BinarySchemeState::unchecked(BitVector w, BitVector z, BitVector zp, BinMatrix b) {
  check_lengths(w, z, zp, b);
  return {std::move(w), std::move(z), std::move(zp), std::move(b)};
}

BitVector unit_vector(std::size_t k, std::size_t theta) {
  if (theta < 1 || theta > k) throw UsageError("theta out of range");
  BitVector e(k, 0);
  e[theta - 1] = 1;
  return e;
}

Triple binary_storage(const BitVector& w, const BitVector& z, const BinMatrix& b) {
  return {bin_add(w, z), bin_add(w, z * b), z};
}

Triple binary_queries(const BitVector& zp, const BinMatrix& b, std::size_t theta) {
  const BitVector q = unit_vector(b.rows(), theta);
  const BinMatrix i_plus_b = BinMatrix::identity(b.rows()) + b;
  return {zp, bin_add(q, zp), bin_add(i_plus_b * zp, b * q)};
}

std::optional<std::uint8_t> binary_answer(const BitVector& storage, const BitVector& query) {
  if (std::all_of(query.begin(), query.end(), [](std::uint8_t v) { return v == 0; })) return std::nullopt;
  return bin_dot(storage, query);
}

std::uint8_t binary_decode(const std::array<std::optional<std::uint8_t>, 3>& answers) {
  std::uint8_t bit = 0;
  for (const auto& a : answers) bit ^= a.value_or(0);
  return bit;
}

BinaryRound binary_round(const BinarySchemeState& state, std::size_t theta) {
  BinaryRound r;
  r.storage = binary_storage(state.w, state.z, state.b);
  r.queries = binary_queries(state.zp, state.b, theta);
  for (std::size_t n = 0; n < 3; ++n) {
    r.answers[n] = binary_answer(r.storage[n], r.queries[n]);
    if (r.answers[n]) ++r.downloaded;
  }
  r.decoded = binary_decode(r.answers);
  return r;
}

Rate binary_rate(std::size_t k) { return finite_k_rate(3, 1, 1, k, 2, 1); }

}  // namespace xstpir::binary
