#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "xstpir/binary_scheme.hpp"
#include "xstpir/download_all.hpp"
#include "xstpir/enumerate.hpp"
#include "xstpir/error.hpp"
#include "xstpir/rng.hpp"
#include "xstpir/sym_xspir.hpp"

using namespace xstpir;

namespace {

std::vector<std::string> rows_of(const BinMatrix& m) {
  std::vector<std::string> rows(m.rows(), std::string(m.cols(), '0'));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m.get(r, c) ? '1' : '0';
  }
  return rows;
}

BitVector bits(std::uint64_t v, std::size_t k) {
  BitVector out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = (v >> i) & 1;
  return out;
}

}  // namespace

TEST_CASE("build_B golden matrices") {
  using binary::build_B;
  CHECK(build_B(4) == BinMatrix({"1001", "0110", "0100", "1000"}));
  CHECK(build_B(5) == BinMatrix({"00101", "01010", "10100", "01000", "10000"}));
  CHECK(build_B(2) == BinMatrix({"11", "10"}));
  CHECK_THROWS_AS(build_B(1), UsageError);
  CHECK_THROWS_AS(build_B(0), UsageError);
}

TEST_CASE("B and I + B are invertible for K = 2..64") {
  for (std::size_t k = 2; k <= 64; ++k) {
    const BinMatrix b = binary::build_B(k);
    REQUIRE(oracle::det_f2(rows_of(b)) == 1);
    REQUIRE(oracle::det_f2(rows_of(b + BinMatrix::identity(k))) == 1);
    REQUIRE(bin_det(b) == 1);
    REQUIRE_NOTHROW(binary::check_matrix(b));
  }
  for (std::size_t k = 2; k <= 7; ++k) {
    const BinMatrix b = binary::build_B(k);
    CHECK(oracle::det_f2_leibniz(rows_of(b)) == 1);
    CHECK(oracle::det_f2_leibniz(rows_of(b + BinMatrix::identity(k))) == 1);
  }
  CHECK_THROWS_AS(binary::check_matrix(BinMatrix::identity(3)), UsageError);
  CHECK_THROWS_AS(binary::check_matrix(BinMatrix::zeros(3)), UsageError);
}

TEST_CASE("binary scheme: zero noise and symbolic answer sum") {
  using namespace binary;
  const auto st = BinarySchemeState::make({1, 0}, {0, 0}, {0, 0});
  const auto r = binary_round(st, 1);
  CHECK_FALSE(r.answers[0].has_value());  // Z' = 0: nothing asked of server 1
  CHECK(r.answers[1] == std::optional<std::uint8_t>{1});
  CHECK(r.answers[2] == std::optional<std::uint8_t>{0});
  CHECK(r.decoded == 1);
  CHECK(r.downloaded == 2);

  // The three answers are (W+Z)Z', (W+ZB)(Q+Z'), Z((I+B)Z' + BQ); over F_2 they
  // sum to WQ for every assignment, checked here as polynomials by exhausting
  // all bit patterns for K = 3.
  const BinMatrix b = build_B(3);
  for (std::uint64_t v = 0; v < 512; ++v) {
    const BitVector w = bits(v, 3), z = bits(v >> 3, 3), zp = bits(v >> 6, 3);
    for (std::size_t theta = 1; theta <= 3; ++theta) {
      const BitVector q = unit_vector(3, theta);
      const auto a1 = bin_dot(bin_add(w, z), zp);
      const auto a2 = bin_dot(bin_add(w, z * b), bin_add(q, zp));
      const auto a3 = bin_dot(z, bin_add((b + BinMatrix::identity(3)) * zp, b * q));
      REQUIRE((a1 ^ a2 ^ a3) == w[theta - 1]);
    }
  }
}

TEST_CASE("binary scheme correctness, exhaustive for K <= 4") {
  using namespace binary;
  for (std::size_t k = 2; k <= 4; ++k) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << (3 * k)); ++v) {
      const auto st = BinarySchemeState::make(bits(v, k), bits(v >> k, k), bits(v >> (2 * k), k));
      for (std::size_t theta = 1; theta <= k; ++theta) {
        const auto r = binary_round(st, theta);
        REQUIRE(r.decoded == st.w[theta - 1]);
        std::size_t nonempty = 0;
        for (std::size_t n = 0; n < 3; ++n) {
          if (r.answers[n]) ++nonempty;
          REQUIRE(r.answers[n].has_value() == (r.queries[n] != BitVector(k, 0)));
        }
        REQUIRE(r.downloaded == nonempty);
        for (const auto& s : r.storage) REQUIRE(s.size() == k);
      }
    }
  }
  CHECK_THROWS_AS(BinarySchemeState::make({1}, {0}, {0}), UsageError);
  CHECK_THROWS_AS(BinarySchemeState::make({1, 0}, {0}, {0, 1}), UsageError);
  CHECK_THROWS_AS(binary_round(BinarySchemeState::make({1, 0}, {0, 0}, {0, 0}), 3), UsageError);
}

TEST_CASE("binary scheme privacy and security, exhaustive for K <= 3") {
  using namespace binary;
  for (std::size_t k = 2; k <= 3; ++k) {
    const BinMatrix b = build_B(k);
    const std::uint64_t span = std::uint64_t{1} << k;
    for (std::size_t n = 0; n < 3; ++n) {
      std::map<BitVector, int> reference;
      for (std::size_t theta = 1; theta <= k; ++theta) {
        std::map<BitVector, int> seen;
        for (std::uint64_t v = 0; v < span; ++v) ++seen[binary_queries(bits(v, k), b, theta)[n]];
        if (theta == 1) reference = seen;
        REQUIRE(seen == reference);
        REQUIRE(seen.size() == span);  // uniform: every vector exactly once
      }
      for (std::uint64_t w = 0; w < span; ++w) {
        std::set<BitVector> stored;
        for (std::uint64_t z = 0; z < span; ++z) stored.insert(binary_storage(bits(w, k), bits(z, k), b)[n]);
        REQUIRE(stored.size() == span);
      }
    }
  }
}

TEST_CASE("binary scheme expected download at K = 2") {
  using namespace binary;
  std::size_t total = 0;
  for (std::uint64_t v = 0; v < 16; ++v) {
    total += binary_round(BinarySchemeState::make({1, 1}, bits(v, 2), bits(v >> 2, 2)), 1).downloaded;
  }
  CHECK(oracle::frac(static_cast<long long>(total), 16) == oracle::frac(9, 4));
  CHECK(binary_rate(2) == Rate(oracle::frac(4, 9)));
  CHECK(binary_rate(3) == Rate(oracle::frac(8, 21)));
}

TEST_CASE("download_all examples") {
  using namespace download_all;
  const auto p = DownloadAllParams::make(2, 1, 1, 1);
  CHECK(p.field().modulus() == 3);
  const PrimeField& f = p.field();
  const std::vector<std::uint64_t> w{2};
  const auto m = MessageSet::from_values(f, 1, 1, w);
  const auto shares = download_all_encode(m, {{f.zero()}}, p);
  CHECK(shares[0][0] == f(2));
  CHECK(shares[1][0] == f.zero());
  CHECK(download_all_retrieve(shares, p, 1) == std::vector<Fe>{f(2)});

  CHECK(achieved_rate(DownloadAllParams::make(2, 3, 1, 1)) == Rate(oracle::frac(1, 6)));
  CHECK(achieved_rate(DownloadAllParams::make(3, 1, 2, 1)) == Rate(oracle::frac(1, 3)));
  CHECK(downloaded_symbols(DownloadAllParams::make(2, 3, 1, 1)) == 6);

  CHECK_THROWS_AS(DownloadAllParams::make(3, 1, 1, 1), UsageError);  // N > X + T
  CHECK_THROWS_AS(DownloadAllParams::make(2, 1, 2, 1), UsageError);  // N <= X
  CHECK_THROWS_AS(DownloadAllParams::make(3, 1, 2, 1, 3), InsufficientField);
  CHECK_THROWS_AS(DownloadAllParams::make(2, 1, 1, 1, 2), InsufficientField);
}

TEST_CASE("download_all recovers every message") {
  using namespace download_all;
  Rng rng(8);
  for (const auto& [n, x, t, k] : std::vector<std::array<std::size_t, 4>>{
           {2, 1, 1, 3}, {3, 2, 1, 2}, {3, 1, 2, 2}, {5, 3, 4, 3}, {4, 1, 3, 1}}) {
    const auto p = DownloadAllParams::make(n, k, x, t);
    const PrimeField& f = p.field();
    const auto g = noise_generator(p);
    for (int trial = 0; trial < 200; ++trial) {
      const auto m = MessageSet::from_values(f, k, p.l(), rng.uniform_vector(k * p.l(), f.modulus()));
      DownloadAllNoise noise(k);
      for (auto& z : noise) z = to_elements(f, rng.uniform_vector(x, f.modulus()));
      const auto shares = download_all_encode(m, noise, p);
      REQUIRE(shares.size() == n);
      // Subtracting the coded noise leaves the zero-padded message.
      for (std::size_t kk = 0; kk < k; ++kk) {
        const auto coded = g * noise[kk];
        for (std::size_t s = 0; s < n; ++s) {
          const Fe expect = s < p.l() ? m.at(kk, s) : f.zero();
          REQUIRE(shares[s][kk] - coded[s] == expect);
        }
      }
      REQUIRE(reconstruct_all(shares, p) == m);
      const std::size_t theta = 1 + rng.uniform(k);
      const auto got = download_all_retrieve(shares, p, theta);
      const auto want = m.message(theta - 1);
      REQUIRE(std::equal(got.begin(), got.end(), want.begin(), want.end()));
    }
  }
}

TEST_CASE("download_all: one server's symbol is uniform whatever the message (p=3, X=1, N=2)") {
  using namespace download_all;
  const auto p = DownloadAllParams::make(2, 1, 1, 1, 3);
  const PrimeField& f = p.field();
  for (std::size_t server = 0; server < 2; ++server) {
    for (std::uint64_t w = 0; w < 3; ++w) {
      std::map<std::uint64_t, int> seen;
      const std::vector<std::uint64_t> wv{w};
      for (std::uint64_t z = 0; z < 3; ++z) {
        ++seen[download_all_encode(MessageSet::from_values(f, 1, 1, wv), {{f(z)}}, p)[server][0].value()];
      }
      CHECK(seen.size() == 3);
    }
  }
}

TEST_CASE("sym_xspir round") {
  using namespace sym_xspir;
  const PrimeField f(5);
  CHECK(sym_rate(2, 2) == Rate(oracle::frac(1, 4)));
  CHECK(sym_rate(3, 4) == Rate(oracle::frac(1, 12)));

  SymNoise wrap(f, 1, 3);
  wrap.at(1, 2, 0) = f(4);
  CHECK(wrap.at(1, 2, 3) == f(4));
  CHECK(wrap.at(1, 2, -3) == f(4));

  Rng rng(3);
  for (const auto& [x, k] : std::vector<std::array<std::size_t, 2>>{{1, 2}, {1, 3}, {2, 3}, {3, 4}}) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto msgs = MessageSet::from_values(f, k, 1, rng.uniform_vector(k, 5));
      const auto noise = SymNoise::from_values(f, x, k, rng.uniform_vector(x * k * k, 5));
      const auto st = SymXspirState::make(msgs, noise, rng.uniform(k));
      const std::size_t theta = 1 + rng.uniform(k);
      const auto r = sym_xspir_round(st, theta);
      REQUIRE(r.decoded == msgs.at(theta - 1, 0));
      REQUIRE(r.downloaded == k * (x + 1));
      REQUIRE(r.storage.size() == x + 1);
      for (const auto& s : r.storage) {
        std::size_t symbols = 0;
        for (const auto& row : s) symbols += row.size();
        REQUIRE(symbols == k * k);
      }
      // Server N's entry k carries the noise diagonal m_o - theta + k.
      const auto& last = r.answers[x];
      for (std::size_t kk = 0; kk < k; ++kk) {
        Fe expect = msgs.at(kk, 0);
        const auto m = static_cast<std::int64_t>(st.m_o) - static_cast<std::int64_t>(theta - 1) +
                       static_cast<std::int64_t>(kk);
        for (std::size_t s = 1; s <= x; ++s) expect += noise.at(s, kk, m);
        REQUIRE(last[kk] == expect);
      }
    }
  }
}

TEST_CASE("sym_xspir: answers are independent of the other messages (K=2, X=1, p=2)") {
  using namespace sym_xspir;
  const PrimeField f(2);
  for (std::size_t theta = 1; theta <= 2; ++theta) {
    for (std::size_t m_o = 0; m_o < 2; ++m_o) {
      for (std::uint64_t wt = 0; wt < 2; ++wt) {
        std::map<std::vector<std::uint64_t>, int> reference;
        for (std::uint64_t other = 0; other < 2; ++other) {
          std::vector<std::uint64_t> w(2);
          w[theta - 1] = wt;
          w[2 - theta] = other;
          std::map<std::vector<std::uint64_t>, int> seen;
          for (std::uint64_t z = 0; z < 16; ++z) {
            const std::vector<std::uint64_t> zv{z & 1, (z >> 1) & 1, (z >> 2) & 1, (z >> 3) & 1};
            const auto st = SymXspirState::make(MessageSet::from_values(f, 2, 1, w), SymNoise::from_values(f, 1, 2, zv), m_o);
            std::vector<std::uint64_t> view;
            for (const auto& a : sym_xspir_round(st, theta).answers) {
              for (const auto& e : a) view.push_back(e.value());
            }
            ++seen[view];
          }
          if (other == 0) reference = seen;
          REQUIRE(seen == reference);
        }
      }
    }
  }
}
