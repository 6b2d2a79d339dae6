#include "xstpir/download_all.hpp"

#include <string>

#include "xstpir/error.hpp"

namespace xstpir::download_all {

DownloadAllParams DownloadAllParams::make(std::size_t n, std::size_t k, std::size_t x, std::size_t t,
                                          std::optional<std::uint64_t> prime) {
  if (k < 1 || x < 1 || t < 1) throw UsageError("download_all requires K, X, T >= 1");
  if (x >= n) throw UsageError("download_all requires N > X");
  if (n > x + t) {
    throw UsageError("download_all requires N <= X + T (got N=" + std::to_string(n) + ", X+T=" +
                     std::to_string(x + t) + "); use csa instead");
  }
  std::uint64_t p = prime.value_or(0);
  if (!prime) {
    p = n + 1;
    while (!is_prime(p)) ++p;
  }
  if (p <= n) {
    throw InsufficientField("download_all needs N distinct nonzero evaluation points, so p > N=" +
                            std::to_string(n) + "; got p=" + std::to_string(p));
  }
  return DownloadAllParams(n, k, x, t, PrimeField(p));
}

FeMatrix noise_generator(const DownloadAllParams& params) {
  const PrimeField& f = params.field();
  FeMatrix g(f, params.n(), params.x());
  for (std::size_t n = 0; n < params.n(); ++n) {
    Fe power = f.one();
    for (std::size_t x = 0; x < params.x(); ++x, power *= f(n + 1)) g(n, x) = power;
  }
  return g;
}

DownloadAllShares download_all_encode(const MessageSet& messages, const DownloadAllNoise& noise,
                                      const DownloadAllParams& params) {
  const std::size_t N = params.n(), K = params.k(), L = params.l();
  if (messages.k() != K || messages.l() != L) throw UsageError("download_all_encode: message dimensions");
  if (noise.size() != K) throw UsageError("download_all_encode: need one noise vector per message");
  const FeMatrix g = noise_generator(params);
  DownloadAllShares shares(N, std::vector<Fe>(K, params.field().zero()));
  for (std::size_t k = 0; k < K; ++k) {
    if (noise[k].size() != params.x()) throw UsageError("download_all_encode: noise vector must have X symbols");
    const std::vector<Fe> coded = g * noise[k];
    for (std::size_t n = 0; n < N; ++n) {
      shares[n][k] = coded[n];
      if (n < L) shares[n][k] += messages.at(k, n);
    }
  }
  return shares;
}

MessageSet reconstruct_all(const DownloadAllShares& shares, const DownloadAllParams& params) {
  const std::size_t N = params.n(), K = params.k(), L = params.l(), X = params.x();
  if (shares.size() != N) throw UsageError("reconstruct_all: expected one share per server");
  const FeMatrix g = noise_generator(params);
  FeMatrix tail(params.field(), X, X);
  for (std::size_t r = 0; r < X; ++r) {
    for (std::size_t c = 0; c < X; ++c) tail(r, c) = g(L + r, c);
  }
  const FeMatrix tail_inv = inverse(tail);

  MessageSet out(params.field(), K, L);
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<Fe> observed;
    for (std::size_t r = 0; r < X; ++r) {
      if (shares[L + r].size() != K) throw UsageError("reconstruct_all: share has wrong length");
      observed.push_back(shares[L + r][k]);
    }
    const std::vector<Fe> coded = g * (tail_inv * observed);
    for (std::size_t l = 0; l < L; ++l) out.at(k, l) = shares[l][k] - coded[l];
  }
  return out;
}

std::vector<Fe> download_all_retrieve(const DownloadAllShares& shares, const DownloadAllParams& params,
                                      std::size_t theta) {
  if (theta < 1 || theta > params.k()) throw UsageError("download_all_retrieve: theta out of range");
  const MessageSet all = reconstruct_all(shares, params);
  auto w = all.message(theta - 1);
  return {w.begin(), w.end()};
}

Rate achieved_rate(const DownloadAllParams& params) {
  return Rate(BigInt(params.l()), BigInt(params.n() * params.k()));
}

}  // namespace xstpir::download_all
