#pragma once

// Cross-subspace-alignment retrieval for N > X + T servers.
//
// Every message has L = N - X - T symbols. Server n holds, for each symbol
// position l, the K-vector W_l + sum_x (l + a_n)^x Z_lx, and is asked to
// multiply it with (D_n / (l + a_n)) (Q + sum_t (l + a_n)^t Z'_lt), where
// D_n = prod_{i=1..L} (i + a_n). Each answer is a single field symbol; the
// N answers are M * (W_theta, interference) for an invertible N x N matrix M.
//
// Server indices and theta are 1-based throughout. Symbol, noise and
// message coordinates inside containers are 0-based.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "xstpir/error.hpp"
#include "xstpir/field.hpp"
#include "xstpir/messages.hpp"

namespace xstpir::csa {

class CsaParams {
 public:
  // Validated construction with alpha_n = n - 1. `prime` defaults to the
  // smallest prime >= N + L.
  static CsaParams make(std::size_t n, std::size_t k, std::size_t x, std::size_t t,
                        std::optional<std::uint64_t> prime = std::nullopt);

  // Validated construction with caller-chosen evaluation points.
  static CsaParams with_alphas(std::size_t n, std::size_t k, std::size_t x, std::size_t t,
                               const PrimeField& field, std::vector<Fe> alphas);

  // Skips the checks on the evaluation points (distinctness, membership in
  // the admissible set). For building deliberately broken instances only.
  static CsaParams unchecked(std::size_t n, std::size_t k, std::size_t x, std::size_t t,
                             const PrimeField& field, std::vector<Fe> alphas);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t x() const noexcept { return x_; }
  std::size_t t() const noexcept { return t_; }
  std::size_t l() const noexcept { return n_ - x_ - t_; }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<Fe>& alphas() const noexcept { return alphas_; }
  // alpha of server n (1-based).
  const Fe& alpha(std::size_t server) const { return alphas_.at(server - 1); }

 private:
  CsaParams(std::size_t n, std::size_t k, std::size_t x, std::size_t t, const PrimeField& field,
            std::vector<Fe> alphas);

  std::size_t n_, k_, x_, t_;
  PrimeField field_;
  std::vector<Fe> alphas_;
};

// L x depth grid of K-vectors. depth is X for storage noise, T for query noise.
template <class Tag>
class NoiseGrid {
 public:
  NoiseGrid(const PrimeField& field, std::size_t l, std::size_t depth, std::size_t k)
      : field_(field), l_(l), depth_(depth), k_(k), data_(l * depth * k, field.zero()) {}

  // `values` is laid out as [l][depth][k].
  static NoiseGrid from_values(const PrimeField& field, std::size_t l, std::size_t depth,
                               std::size_t k, std::span<const std::uint64_t> values) {
    NoiseGrid g(field, l, depth, k);
    if (values.size() != g.data_.size()) {
      throw UsageError("noise grid: value count does not match L x depth x K");
    }
    for (std::size_t i = 0; i < values.size(); ++i) g.data_[i] = field(values[i]);
    return g;
  }

  std::size_t l() const noexcept { return l_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t k() const noexcept { return k_; }
  const PrimeField& field() const noexcept { return field_; }

  std::span<const Fe> vec(std::size_t sym, std::size_t j) const {
    return {data_.data() + (sym * depth_ + j) * k_, k_};
  }
  std::span<Fe> vec(std::size_t sym, std::size_t j) {
    return {data_.data() + (sym * depth_ + j) * k_, k_};
  }

 private:
  PrimeField field_;
  std::size_t l_, depth_, k_;
  std::vector<Fe> data_;
};

using StorageNoise = NoiseGrid<struct StorageNoiseTag>;
using QueryNoise = NoiseGrid<struct QueryNoiseTag>;

struct StorageShare {
  std::size_t server;
  std::vector<std::vector<Fe>> rows;  // L rows, K symbols each

  std::vector<Fe> flatten() const;
};

struct QueryShare {
  std::size_t server;
  std::vector<std::vector<Fe>> cols;  // L columns, K symbols each

  std::vector<Fe> flatten() const;
  bool is_zero() const;
};

struct DecodeOutput {
  std::vector<Fe> desired;       // W_theta, L symbols
  std::vector<Fe> interference;  // X + T aligned interference coordinates
};

// prod_{i=1..L} (i + alpha)
Fe delta(const Fe& alpha, std::size_t l);

// Canonical evaluation points alpha_n = n - 1. Throws InsufficientField if
// p < N + L.
std::vector<Fe> choose_alphas(std::uint64_t p, std::size_t l, std::size_t n);

std::vector<StorageShare> encode_storage(const MessageSet& messages, const StorageNoise& noise,
                                         const CsaParams& params);

// theta is 1-based. Q_theta is the theta-th unit vector.
std::vector<QueryShare> gen_queries(std::size_t theta, const QueryNoise& qnoise,
                                    const CsaParams& params);

// The single answer symbol S_n . Q_n.
Fe answer(const StorageShare& share, const QueryShare& query);

FeMatrix decoding_matrix(const CsaParams& params);

// Solves decoding_matrix * (desired, interference) = answers. A singular
// decoding matrix surfaces as SingularMatrix.
DecodeOutput decode(std::span<const Fe> answers, const CsaParams& params);

// True iff the honest answer vector minus the desired-symbol contributions
// lies in the span of the X + T interference columns of the decoding matrix.
bool interference_aligned(const CsaParams& params, const MessageSet& messages,
                          const StorageNoise& noise, const QueryNoise& qnoise, std::size_t theta);

}  // namespace xstpir::csa
