#include "xstpir/scheme.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "xstpir/binary_scheme.hpp"
#include "xstpir/error.hpp"
#include "xstpir/sym_xspir.hpp"

namespace xstpir::sim {

namespace {

bool all_zero(const Symbols& s) {
  return std::all_of(s.begin(), s.end(), [](std::uint64_t v) { return v == 0; });
}

void check_server(const SchemeShape& shape, std::size_t server) {
  if (server < 1 || server > shape.n) throw UsageError("server id out of range");
}

void check_theta(const SchemeShape& shape, std::size_t theta) {
  if (theta < 1 || theta > shape.k) {
    throw UsageError("theta " + std::to_string(theta) + " outside [1, " + std::to_string(shape.k) + "]");
  }
}

void check_answers(const SchemeShape& shape, const std::vector<Symbols>& answers) {
  if (answers.size() != shape.n) throw UsageError("decode: expected one answer per server");
}

class CsaScheme final : public Scheme {
 public:
  explicit CsaScheme(const csa::CsaParams& params)
      : Scheme({"csa", params.n(), params.k(), params.x(), params.t(), params.l(), params.field().modulus()},
               params.field()),
        params_(params) {}

  std::size_t storage_noise_len() const override { return params_.l() * params_.x() * params_.k(); }

  std::vector<std::uint64_t> query_radix() const override {
    return std::vector<std::uint64_t>(params_.l() * params_.t() * params_.k(), field().modulus());
  }

  std::vector<Symbols> store(const MessageSet& messages, const Symbols& noise) const override {
    const auto z = csa::StorageNoise::from_values(field(), params_.l(), params_.x(), params_.k(), noise);
    std::vector<Symbols> out;
    for (const auto& share : csa::encode_storage(messages, z, params_)) out.push_back(to_values(share.flatten()));
    return out;
  }

  std::vector<Symbols> query(std::size_t theta, const Symbols& randomness) const override {
    const auto zp = csa::QueryNoise::from_values(field(), params_.l(), params_.t(), params_.k(), randomness);
    std::vector<Symbols> out;
    for (const auto& share : csa::gen_queries(theta, zp, params_)) out.push_back(to_values(share.flatten()));
    return out;
  }

  std::size_t answer_length(std::size_t server, const Symbols& query) const override {
    check_server(shape(), server);
    return all_zero(query) ? 0 : 1;
  }

  Symbols respond(std::size_t server, const Symbols& stored, const Symbols& query) const override {
    if (answer_length(server, query) == 0) return {};
    return {csa::answer(unflatten_storage(server, stored), unflatten_query(server, query)).value()};
  }

  Symbols decode(std::size_t theta, const std::vector<Symbols>& answers) const override {
    check_theta(shape(), theta);
    check_answers(shape(), answers);
    std::vector<Fe> a;
    for (const auto& ans : answers) {
      if (ans.size() > 1) throw UsageError("csa answers carry at most one symbol");
      a.push_back(field()(ans.empty() ? 0 : ans[0]));
    }
    return to_values(csa::decode(a, params_).desired);
  }

  Rate closed_form_rate() const override {
    return finite_k_rate(params_.n(), params_.x(), params_.t(), params_.k(), field().modulus(), params_.l());
  }

 private:
  std::vector<std::vector<Fe>> split(const Symbols& flat) const {
    const std::size_t L = params_.l(), K = params_.k();
    if (flat.size() != L * K) throw UsageError("csa payload must hold L*K symbols");
    std::vector<std::vector<Fe>> rows(L);
    for (std::size_t l = 0; l < L; ++l) {
      for (std::size_t k = 0; k < K; ++k) rows[l].push_back(field()(flat[l * K + k]));
    }
    return rows;
  }
  csa::StorageShare unflatten_storage(std::size_t server, const Symbols& flat) const {
    return {server, split(flat)};
  }
  csa::QueryShare unflatten_query(std::size_t server, const Symbols& flat) const { return {server, split(flat)}; }

  csa::CsaParams params_;
};

class DownloadAllScheme final : public Scheme {
 public:
  explicit DownloadAllScheme(const download_all::DownloadAllParams& params)
      : Scheme({"download_all", params.n(), params.k(), params.x(), params.t(), params.l(),
                params.field().modulus()},
               params.field()),
        params_(params) {}

  std::size_t storage_noise_len() const override { return params_.k() * params_.x(); }
  std::vector<std::uint64_t> query_radix() const override { return {}; }

  std::vector<Symbols> store(const MessageSet& messages, const Symbols& noise) const override {
    if (noise.size() != storage_noise_len()) throw UsageError("download_all: expected K*X noise symbols");
    download_all::DownloadAllNoise z(params_.k());
    for (std::size_t k = 0; k < params_.k(); ++k) {
      for (std::size_t x = 0; x < params_.x(); ++x) z[k].push_back(field()(noise[k * params_.x() + x]));
    }
    std::vector<Symbols> out;
    for (const auto& share : download_all::download_all_encode(messages, z, params_)) {
      out.push_back(to_values(share));
    }
    return out;
  }

  std::vector<Symbols> query(std::size_t theta, const Symbols&) const override {
    check_theta(shape(), theta);
    return std::vector<Symbols>(params_.n());
  }

  std::size_t answer_length(std::size_t server, const Symbols&) const override {
    check_server(shape(), server);
    return params_.k();
  }

  Symbols respond(std::size_t server, const Symbols& stored, const Symbols&) const override {
    check_server(shape(), server);
    if (stored.size() != params_.k()) throw UsageError("download_all: stored share must hold K symbols");
    return stored;
  }

  Symbols decode(std::size_t theta, const std::vector<Symbols>& answers) const override {
    check_theta(shape(), theta);
    check_answers(shape(), answers);
    download_all::DownloadAllShares shares;
    for (const auto& a : answers) {
      if (a.size() != params_.k()) throw UsageError("download_all answers carry K symbols");
      shares.push_back(to_elements(field(), a));
    }
    return to_values(download_all::download_all_retrieve(shares, params_, theta));
  }

  Rate closed_form_rate() const override { return download_all::achieved_rate(params_); }

 private:
  download_all::DownloadAllParams params_;
};

BitVector bits(const Symbols& s) { return BitVector(s.begin(), s.end()); }
Symbols symbols(const BitVector& b) { return Symbols(b.begin(), b.end()); }

class BinaryScheme final : public Scheme {
 public:
  BinaryScheme(std::size_t k, BinMatrix b) : Scheme({"binary_n3", 3, k, 1, 1, 1, 2}, PrimeField(2)), b_(std::move(b)) {}

  std::size_t storage_noise_len() const override { return shape().k; }
  std::vector<std::uint64_t> query_radix() const override { return std::vector<std::uint64_t>(shape().k, 2); }

  std::vector<Symbols> store(const MessageSet& messages, const Symbols& noise) const override {
    if (messages.k() != shape().k || messages.l() != 1) throw UsageError("binary_n3: K one-bit messages expected");
    if (noise.size() != shape().k) throw UsageError("binary_n3: expected K noise bits");
    BitVector w;
    for (std::size_t k = 0; k < shape().k; ++k) w.push_back(static_cast<std::uint8_t>(messages.at(k, 0).value()));
    std::vector<Symbols> out;
    for (const auto& s : binary::binary_storage(w, bits(noise), b_)) out.push_back(symbols(s));
    return out;
  }

  std::vector<Symbols> query(std::size_t theta, const Symbols& randomness) const override {
    check_theta(shape(), theta);
    if (randomness.size() != shape().k) throw UsageError("binary_n3: expected K query noise bits");
    std::vector<Symbols> out;
    for (const auto& q : binary::binary_queries(bits(randomness), b_, theta)) out.push_back(symbols(q));
    return out;
  }

  std::size_t answer_length(std::size_t server, const Symbols& query) const override {
    check_server(shape(), server);
    return all_zero(query) ? 0 : 1;
  }

  Symbols respond(std::size_t server, const Symbols& stored, const Symbols& query) const override {
    check_server(shape(), server);
    if (stored.size() != shape().k || query.size() != shape().k) throw UsageError("binary_n3: payloads hold K bits");
    const auto a = binary::binary_answer(bits(stored), bits(query));
    if (!a) return {};
    return {*a};
  }

  Symbols decode(std::size_t theta, const std::vector<Symbols>& answers) const override {
    check_theta(shape(), theta);
    check_answers(shape(), answers);
    std::array<std::optional<std::uint8_t>, 3> a;
    for (std::size_t n = 0; n < 3; ++n) {
      if (answers[n].size() > 1) throw UsageError("binary_n3 answers carry at most one bit");
      if (!answers[n].empty()) a[n] = static_cast<std::uint8_t>(answers[n][0] & 1);
    }
    return {binary::binary_decode(a)};
  }

  Rate closed_form_rate() const override { return binary::binary_rate(shape().k); }

 private:
  BinMatrix b_;
};

class SymXspirScheme final : public Scheme {
 public:
  SymXspirScheme(std::size_t x, std::size_t k, const PrimeField& f)
      : Scheme({"sym_xspir", x + 1, k, x, 1, 1, f.modulus()}, f) {}

  std::size_t storage_noise_len() const override { return shape().x * shape().k * shape().k; }
  std::vector<std::uint64_t> query_radix() const override { return {shape().k}; }

  std::vector<Symbols> store(const MessageSet& messages, const Symbols& noise) const override {
    const auto z = sym_xspir::SymNoise::from_values(field(), shape().x, shape().k, noise);
    std::vector<Symbols> out;
    for (const auto& share : sym_xspir::sym_storage(messages, z)) {
      Symbols flat;
      for (const auto& row : share) {
        for (const auto& e : row) flat.push_back(e.value());
      }
      out.push_back(std::move(flat));
    }
    return out;
  }

  std::vector<Symbols> query(std::size_t theta, const Symbols& randomness) const override {
    check_theta(shape(), theta);
    if (randomness.size() != 1) throw UsageError("sym_xspir: query randomness is the single index m_o");
    std::vector<Symbols> out;
    for (auto idx : sym_xspir::sym_queries(shape().n, shape().k, randomness[0], theta)) out.push_back({idx});
    return out;
  }

  std::size_t answer_length(std::size_t server, const Symbols&) const override {
    check_server(shape(), server);
    return shape().k;
  }

  Symbols respond(std::size_t server, const Symbols& stored, const Symbols& query) const override {
    check_server(shape(), server);
    const std::size_t K = shape().k;
    if (stored.size() != K * K) throw UsageError("sym_xspir: stored share must hold K*K symbols");
    if (query.size() != 1) throw UsageError("sym_xspir: query is a single index");
    sym_xspir::SymShare share(K);
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t m = 0; m < K; ++m) share[k].push_back(field()(stored[k * K + m]));
    }
    return to_values(sym_xspir::sym_answer(server, shape().n, share, query[0]));
  }

  Symbols decode(std::size_t theta, const std::vector<Symbols>& answers) const override {
    check_theta(shape(), theta);
    check_answers(shape(), answers);
    std::vector<std::vector<Fe>> a;
    for (const auto& ans : answers) {
      if (ans.size() != shape().k) throw UsageError("sym_xspir answers carry K symbols");
      a.push_back(to_elements(field(), ans));
    }
    return {sym_xspir::sym_decode(a, theta).value()};
  }

  Rate closed_form_rate() const override { return sym_xspir::sym_rate(shape().n, shape().k); }
};

}  // namespace

MessageSet Scheme::messages_from(const Symbols& values) const {
  return MessageSet::from_values(field_, shape_.k, shape_.l, values);
}

std::unique_ptr<Scheme> make_csa(const csa::CsaParams& params) { return std::make_unique<CsaScheme>(params); }

std::unique_ptr<Scheme> make_download_all(const download_all::DownloadAllParams& params) {
  return std::make_unique<DownloadAllScheme>(params);
}

std::unique_ptr<Scheme> make_binary(std::size_t k, std::optional<BinMatrix> b) {
  if (k < 2) throw UsageError("binary_n3 requires K >= 2 (got K=" + std::to_string(k) + ")");
  BinMatrix m = b ? *b : binary::build_B(k);
  if (m.rows() != k || m.cols() != k) throw UsageError("binary_n3: B must be K x K");
  return std::make_unique<BinaryScheme>(k, std::move(m));
}

std::unique_ptr<Scheme> make_sym_xspir(std::size_t x, std::size_t k, std::optional<std::uint64_t> prime) {
  if (x < 1 || k < 1) throw UsageError("sym_xspir requires X >= 1 and K >= 1");
  return std::make_unique<SymXspirScheme>(x, k, PrimeField(prime.value_or(2)));
}

std::unique_ptr<Scheme> make_scheme(const std::string& name, std::size_t n, std::size_t k, std::size_t x,
                                    std::size_t t, std::optional<std::uint64_t> prime) {
  if (name == "csa") return make_csa(csa::CsaParams::make(n, k, x, t, prime));
  if (name == "download_all") return make_download_all(download_all::DownloadAllParams::make(n, k, x, t, prime));
  if (name == "binary_n3") {
    if (n != 3 || x != 1 || t != 1) {
      throw UsageError("binary_n3 requires N=3, X=1, T=1 (got N=" + std::to_string(n) + ", X=" + std::to_string(x) +
                       ", T=" + std::to_string(t) + ")");
    }
    if (prime && *prime != 2) throw UsageError("binary_n3 works over F_2; --prime must be 2 or omitted");
    return make_binary(k);
  }
  if (name == "sym_xspir") {
    if (n != x + 1 || t != 1) {
      throw UsageError("sym_xspir requires N = X + 1 and T = 1 (got N=" + std::to_string(n) +
                       ", X=" + std::to_string(x) + ", T=" + std::to_string(t) + ")");
    }
    return make_sym_xspir(x, k, prime);
  }
  throw UsageError("unknown scheme '" + name + "' (expected csa, download_all, binary_n3 or sym_xspir)");
}

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"csa", "download_all", "binary_n3", "sym_xspir"};
  return names;
}

}  // namespace xstpir::sim
