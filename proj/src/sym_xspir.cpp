#include "xstpir/sym_xspir.hpp"

#include <string>
#include <utility>

#include "xstpir/error.hpp"

namespace xstpir::sym_xspir {

SymNoise::SymNoise(const PrimeField& field, std::size_t x, std::size_t k)
    : x_(x), k_(k), data_(x * k * k, field.zero()) {
  if (x < 1 || k < 1) throw UsageError("sym_xspir noise requires X, K >= 1");
}

SymNoise SymNoise::from_values(const PrimeField& field, std::size_t x, std::size_t k,
                               const std::vector<std::uint64_t>& values) {
  SymNoise z(field, x, k);
  if (values.size() != z.data_.size()) throw UsageError("sym_xspir noise: expected X*K*K values");
  for (std::size_t i = 0; i < values.size(); ++i) z.data_[i] = field(values[i]);
  return z;
}

std::size_t SymNoise::index(std::size_t x, std::size_t k, std::int64_t m) const {
  if (x < 1 || x > x_ || k >= k_) throw UsageError("sym_xspir noise index out of range");
  const auto kk = static_cast<std::int64_t>(k_);
  const auto mm = static_cast<std::size_t>(((m % kk) + kk) % kk);
  return ((x - 1) * k_ + k) * k_ + mm;
}

const Fe& SymNoise::at(std::size_t x, std::size_t k, std::int64_t m) const { return data_[index(x, k, m)]; }
Fe& SymNoise::at(std::size_t x, std::size_t k, std::int64_t m) { return data_[index(x, k, m)]; }

SymXspirState SymXspirState::make(MessageSet messages, SymNoise noise, std::size_t m_o) {
  if (messages.l() != 1) throw UsageError("sym_xspir messages carry exactly one symbol");
  if (messages.k() != noise.k()) throw UsageError("sym_xspir: noise grid does not match K");
  if (m_o >= messages.k()) throw UsageError("sym_xspir: m_o must lie in [0, K)");
  return {std::move(messages), std::move(noise), m_o};
}

std::vector<SymShare> sym_storage(const MessageSet& messages, const SymNoise& noise) {
  const std::size_t X = noise.x(), K = noise.k();
  if (messages.k() != K || messages.l() != 1) throw UsageError("sym_storage: message dimensions");
  std::vector<SymShare> shares(X + 1, SymShare(K, std::vector<Fe>(K, messages.field().zero())));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t m = 0; m < K; ++m) {
      Fe sum = messages.at(k, 0);
      for (std::size_t x = 1; x <= X; ++x) {
        const Fe& z = noise.at(x, k, static_cast<std::int64_t>(m));
        shares[x - 1][k][m] = z;
        sum += z;
      }
      shares[X][k][m] = sum;
    }
  }
  return shares;
}

std::vector<std::size_t> sym_queries(std::size_t n, std::size_t k, std::size_t m_o, std::size_t theta) {
  if (theta < 1 || theta > k) throw UsageError("theta out of range");
  if (m_o >= k) throw UsageError("sym_queries: m_o must lie in [0, K)");
  std::vector<std::size_t> q(n, m_o);
  q[n - 1] = (m_o + k + 1 - theta) % k;
  return q;
}

std::vector<Fe> sym_answer(std::size_t server, std::size_t n, const SymShare& share, std::size_t index) {
  const std::size_t K = share.size();
  if (server < 1 || server > n) throw UsageError("sym_answer: server out of range");
  if (index >= K) throw UsageError("sym_answer: index out of range");
  std::vector<Fe> out;
  out.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t m = server == n ? (index + k) % K : index;
    out.push_back(share[k].at(m));
  }
  return out;
}

Fe sym_decode(const std::vector<std::vector<Fe>>& answers, std::size_t theta) {
  if (answers.size() < 2) throw UsageError("sym_decode: need answers from all N servers");
  Fe w = answers.back().at(theta - 1);
  for (std::size_t x = 0; x + 1 < answers.size(); ++x) w -= answers[x].at(theta - 1);
  return w;
}

SymRound sym_xspir_round(const SymXspirState& state, std::size_t theta) {
  const std::size_t N = state.n(), K = state.k();
  auto storage = sym_storage(state.messages, state.noise);
  auto queries = sym_queries(N, K, state.m_o, theta);
  std::vector<std::vector<Fe>> answers;
  std::size_t downloaded = 0;
  for (std::size_t s = 1; s <= N; ++s) {
    answers.push_back(sym_answer(s, N, storage[s - 1], queries[s - 1]));
    downloaded += answers.back().size();
  }
  const Fe decoded = sym_decode(answers, theta);
  return {std::move(storage), std::move(queries), std::move(answers), downloaded, decoded};
}

Rate sym_rate(std::size_t n, std::size_t k) { return Rate(BigInt(1), BigInt(n * k)); }

}  // namespace xstpir::sym_xspir
