#include "xstpir/csa.hpp"

#include <string>

#include "xstpir/error.hpp"

namespace xstpir::csa {

namespace {

// prod_{i=1..L, i != skip} (i + alpha); skip = 0 keeps every factor.
Fe delta_without(const Fe& alpha, std::size_t l, std::size_t skip) {
  const PrimeField f = alpha.field();
  Fe acc = f.one();
  for (std::size_t i = 1; i <= l; ++i) {
    if (i != skip) acc *= f(i) + alpha;
  }
  return acc;
}

void check_shape(std::size_t n, std::size_t k, std::size_t x, std::size_t t) {
  if (x < 1 || t < 1 || k < 1) throw UsageError("csa requires X >= 1, T >= 1 and K >= 1");
  if (n <= x + t) {
    throw UsageError("csa requires N > X + T (got N=" + std::to_string(n) +
                     ", X+T=" + std::to_string(x + t) + ")");
  }
}

}  // namespace

CsaParams::CsaParams(std::size_t n, std::size_t k, std::size_t x, std::size_t t,
                     const PrimeField& field, std::vector<Fe> alphas)
    : n_(n), k_(k), x_(x), t_(t), field_(field), alphas_(std::move(alphas)) {}

CsaParams CsaParams::make(std::size_t n, std::size_t k, std::size_t x, std::size_t t,
                          std::optional<std::uint64_t> prime) {
  check_shape(n, k, x, t);
  const std::size_t l = n - x - t;
  const std::uint64_t p = prime.value_or(smallest_valid_prime(n, l));
  return with_alphas(n, k, x, t, PrimeField(p), choose_alphas(p, l, n));
}

CsaParams CsaParams::with_alphas(std::size_t n, std::size_t k, std::size_t x, std::size_t t,
                                 const PrimeField& field, std::vector<Fe> alphas) {
  check_shape(n, k, x, t);
  const std::size_t l = n - x - t;
  if (field.modulus() < n + l) {
    throw InsufficientField("csa requires p >= N + L = " + std::to_string(n + l) + ", got p=" +
                            std::to_string(field.modulus()));
  }
  if (alphas.size() != n) throw UsageError("csa requires exactly N evaluation points");
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i].modulus() != field.modulus()) throw UsageError("evaluation point from another field");
    for (std::size_t j = 0; j < i; ++j) {
      if (alphas[i] == alphas[j]) throw UsageError("evaluation points must be distinct");
    }
    for (std::size_t s = 1; s <= l; ++s) {
      if ((field(s) + alphas[i]).is_zero()) {
        throw UsageError("evaluation point " + std::to_string(alphas[i].value()) +
                         " makes alpha + " + std::to_string(s) + " vanish");
      }
    }
  }
  return CsaParams(n, k, x, t, field, std::move(alphas));
}

CsaParams CsaParams::unchecked(std::size_t n, std::size_t k, std::size_t x, std::size_t t,
                               const PrimeField& field, std::vector<Fe> alphas) {
  check_shape(n, k, x, t);
  if (alphas.size() != n) throw UsageError("csa requires exactly N evaluation points");
  return CsaParams(n, k, x, t, field, std::move(alphas));
}

std::vector<Fe> StorageShare::flatten() const {
  std::vector<Fe> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::vector<Fe> QueryShare::flatten() const {
  std::vector<Fe> out;
  for (const auto& c : cols) out.insert(out.end(), c.begin(), c.end());
  return out;
}

bool QueryShare::is_zero() const {
  for (const auto& c : cols) {
    for (const auto& e : c) {
      if (!e.is_zero()) return false;
    }
  }
  return true;
}

Fe delta(const Fe& alpha, std::size_t l) {
  if (l < 1) throw UsageError("delta requires L >= 1");
  return delta_without(alpha, l, 0);
}

std::vector<Fe> choose_alphas(std::uint64_t p, std::size_t l, std::size_t n) {
  if (p < n + l) {
    throw InsufficientField("need p >= N + L = " + std::to_string(n + l) + " distinct admissible points, got p=" +
                            std::to_string(p));
  }
  const PrimeField f(p);
  std::vector<Fe> alphas;
  alphas.reserve(n);
  for (std::size_t i = 0; i < n; ++i) alphas.push_back(f(i));
  return alphas;
}

std::vector<StorageShare> encode_storage(const MessageSet& messages, const StorageNoise& noise,
                                         const CsaParams& params) {
  const std::size_t L = params.l(), K = params.k(), X = params.x();
  if (messages.k() != K || messages.l() != L) throw UsageError("encode_storage: message dimensions");
  if (noise.l() != L || noise.depth() != X || noise.k() != K) {
    throw UsageError("encode_storage: storage noise dimensions");
  }
  const PrimeField& f = params.field();
  std::vector<StorageShare> shares;
  shares.reserve(params.n());
  for (std::size_t n = 1; n <= params.n(); ++n) {
    StorageShare share{n, {}};
    for (std::size_t l = 0; l < L; ++l) {
      std::vector<Fe> row = messages.column(l);
      const Fe base = f(l + 1) + params.alpha(n);
      Fe coeff = base;
      for (std::size_t x = 0; x < X; ++x, coeff *= base) {
        auto z = noise.vec(l, x);
        for (std::size_t k = 0; k < K; ++k) row[k] += coeff * z[k];
      }
      share.rows.push_back(std::move(row));
    }
    shares.push_back(std::move(share));
  }
  return shares;
}

std::vector<QueryShare> gen_queries(std::size_t theta, const QueryNoise& qnoise, const CsaParams& params) {
  const std::size_t L = params.l(), K = params.k(), T = params.t();
  if (theta < 1 || theta > K) {
    throw UsageError("gen_queries: theta " + std::to_string(theta) + " outside [1, " + std::to_string(K) + "]");
  }
  if (qnoise.l() != L || qnoise.depth() != T || qnoise.k() != K) {
    throw UsageError("gen_queries: query noise dimensions");
  }
  const PrimeField& f = params.field();
  std::vector<QueryShare> shares;
  shares.reserve(params.n());
  for (std::size_t n = 1; n <= params.n(); ++n) {
    QueryShare share{n, {}};
    for (std::size_t l = 0; l < L; ++l) {
      std::vector<Fe> col(K, f.zero());
      col[theta - 1] = f.one();
      const Fe base = f(l + 1) + params.alpha(n);
      Fe coeff = base;
      for (std::size_t t = 0; t < T; ++t, coeff *= base) {
        auto z = qnoise.vec(l, t);
        for (std::size_t k = 0; k < K; ++k) col[k] += coeff * z[k];
      }
      const Fe scale = delta_without(params.alpha(n), L, l + 1);
      for (auto& e : col) e *= scale;
      share.cols.push_back(std::move(col));
    }
    shares.push_back(std::move(share));
  }
  return shares;
}

Fe answer(const StorageShare& share, const QueryShare& query) {
  if (share.server != query.server) throw UsageError("answer: share and query belong to different servers");
  if (share.rows.size() != query.cols.size()) throw UsageError("answer: symbol count mismatch");
  if (share.rows.empty()) throw UsageError("answer: empty share");
  Fe acc = share.rows.front().front().field().zero();
  for (std::size_t l = 0; l < share.rows.size(); ++l) acc += dot(share.rows[l], query.cols[l]);
  return acc;
}

FeMatrix decoding_matrix(const CsaParams& params) {
  const std::size_t N = params.n(), L = params.l();
  const PrimeField& f = params.field();
  FeMatrix m(f, N, N);
  for (std::size_t n = 1; n <= N; ++n) {
    const Fe& a = params.alpha(n);
    for (std::size_t l = 1; l <= L; ++l) m(n - 1, l - 1) = delta_without(a, L, l);
    Fe entry = delta(a, L);
    for (std::size_t c = L; c < N; ++c, entry *= a) m(n - 1, c) = entry;
  }
  return m;
}

DecodeOutput decode(std::span<const Fe> answers, const CsaParams& params) {
  if (answers.size() != params.n()) {
    throw UsageError("decode: expected " + std::to_string(params.n()) + " answers, got " +
                     std::to_string(answers.size()));
  }
  std::vector<Fe> x = solve_linear(decoding_matrix(params), answers);
  const auto split = x.begin() + static_cast<std::ptrdiff_t>(params.l());
  return DecodeOutput{{x.begin(), split}, {split, x.end()}};
}

bool interference_aligned(const CsaParams& params, const MessageSet& messages, const StorageNoise& noise,
                          const QueryNoise& qnoise, std::size_t theta) {
  const auto storage = encode_storage(messages, noise, params);
  const auto queries = gen_queries(theta, qnoise, params);
  const std::size_t N = params.n(), L = params.l();
  const FeMatrix m = decoding_matrix(params);

  std::vector<Fe> residual;
  residual.reserve(N);
  for (std::size_t n = 0; n < N; ++n) residual.push_back(answer(storage[n], queries[n]));
  for (std::size_t l = 0; l < L; ++l) {
    const Fe w = messages.at(theta - 1, l);
    for (std::size_t n = 0; n < N; ++n) residual[n] -= w * m(n, l);
  }

  const std::size_t width = N - L;
  FeMatrix span_only(params.field(), N, width);
  FeMatrix with_residual(params.field(), N, width + 1);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t c = 0; c < width; ++c) {
      span_only(n, c) = m(n, L + c);
      with_residual(n, c) = m(n, L + c);
    }
    with_residual(n, width) = residual[n];
  }
  return rank(with_residual) == rank(span_only);
}

}  // namespace xstpir::csa
