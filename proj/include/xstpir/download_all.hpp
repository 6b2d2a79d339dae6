#pragma once

// Secure storage with a download-everything retrieval, for X < N <= X + T.
//
// Each message has L = N - X symbols and is padded with X zeros to length N.
// X uniform noise symbols per message are spread over the N servers by a
// Vandermonde (N, X) MDS generator; server n stores symbol n of the padded
// message plus the coded noise. Retrieval downloads all N * K symbols.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "xstpir/capacity.hpp"
#include "xstpir/field.hpp"
#include "xstpir/messages.hpp"

namespace xstpir::download_all {

class DownloadAllParams {
 public:
  // `prime` defaults to the smallest prime above N. Throws UsageError unless
  // X < N <= X + T, and InsufficientField unless p > N.
  static DownloadAllParams make(std::size_t n, std::size_t k, std::size_t x, std::size_t t,
                                std::optional<std::uint64_t> prime = std::nullopt);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t x() const noexcept { return x_; }
  std::size_t t() const noexcept { return t_; }
  std::size_t l() const noexcept { return n_ - x_; }
  const PrimeField& field() const noexcept { return field_; }

 private:
  DownloadAllParams(std::size_t n, std::size_t k, std::size_t x, std::size_t t, const PrimeField& f)
      : n_(n), k_(k), x_(x), t_(t), field_(f) {}

  std::size_t n_, k_, x_, t_;
  PrimeField field_;
};

// noise[k] holds the X noise symbols protecting message k (0-based).
using DownloadAllNoise = std::vector<std::vector<Fe>>;

// shares[n][k]: what server n + 1 stores for message k + 1.
using DownloadAllShares = std::vector<std::vector<Fe>>;

// N x X generator with row n equal to (1, n, n^2, ..., n^{X-1}). Any X rows
// form an invertible Vandermonde matrix.
FeMatrix noise_generator(const DownloadAllParams& params);

DownloadAllShares download_all_encode(const MessageSet& messages, const DownloadAllNoise& noise,
                                      const DownloadAllParams& params);

// Recovers every message from the full download. The last X servers carry
// coded noise only, which pins down the noise of each message.
MessageSet reconstruct_all(const DownloadAllShares& shares, const DownloadAllParams& params);

// Downloads all N * K symbols and returns W_theta (theta is 1-based).
std::vector<Fe> download_all_retrieve(const DownloadAllShares& shares, const DownloadAllParams& params,
                                      std::size_t theta);

inline std::size_t downloaded_symbols(const DownloadAllParams& params) { return params.n() * params.k(); }

// (N - X) / (N K)
Rate achieved_rate(const DownloadAllParams& params);

}  // namespace xstpir::download_all
