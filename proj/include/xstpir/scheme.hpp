#pragma once

// A uniform view of every retrieval scheme as four stateless steps
// (store, query, respond, decode) driven by explicit randomness. The
// simulator and the auditors only talk to schemes through this interface.
//
// Payloads are flat lists of field symbol values. Server ids and theta are
// 1-based.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xstpir/binmatrix.hpp"
#include "xstpir/capacity.hpp"
#include "xstpir/csa.hpp"
#include "xstpir/download_all.hpp"
#include "xstpir/messages.hpp"
#include "xstpir/rng.hpp"

namespace xstpir::sim {

struct SchemeShape {
  std::string name;  // csa, download_all, binary_n3 or sym_xspir
  std::size_t n = 0, k = 0, x = 0, t = 0, l = 0;
  std::uint64_t p = 0;
};

class Scheme {
 public:
  virtual ~Scheme() = default;

  const SchemeShape& shape() const noexcept { return shape_; }
  const PrimeField& field() const noexcept { return field_; }

  // Storage randomness is this many uniform symbols of F_p.
  virtual std::size_t storage_noise_len() const = 0;
  // Query randomness is one digit per entry, uniform below the entry.
  virtual std::vector<std::uint64_t> query_radix() const = 0;

  virtual std::vector<Symbols> store(const MessageSet& messages, const Symbols& noise) const = 0;
  virtual std::vector<Symbols> query(std::size_t theta, const Symbols& randomness) const = 0;
  // Symbols server `server` downloads for `query`; 0 means an empty answer.
  virtual std::size_t answer_length(std::size_t server, const Symbols& query) const = 0;
  // Empty exactly when answer_length is 0.
  virtual Symbols respond(std::size_t server, const Symbols& stored, const Symbols& query) const = 0;
  // Empty answers count as zero. Returns the L symbols of W_theta.
  virtual Symbols decode(std::size_t theta, const std::vector<Symbols>& answers) const = 0;

  // Expected-download rate the construction is designed to achieve.
  virtual Rate closed_form_rate() const = 0;

  MessageSet messages_from(const Symbols& values) const;

 protected:
  Scheme(SchemeShape shape, const PrimeField& field) : shape_(std::move(shape)), field_(field) {}

 private:
  SchemeShape shape_;
  PrimeField field_;
};

std::unique_ptr<Scheme> make_csa(const csa::CsaParams& params);
std::unique_ptr<Scheme> make_download_all(const download_all::DownloadAllParams& params);
// B defaults to the standard construction. An explicit B is used as given,
// without the invertibility checks, so broken instances can be audited.
std::unique_ptr<Scheme> make_binary(std::size_t k, std::optional<BinMatrix> b = std::nullopt);
std::unique_ptr<Scheme> make_sym_xspir(std::size_t x, std::size_t k, std::optional<std::uint64_t> prime);

// Validated construction by name. Violating a scheme's parameter regime
// throws UsageError naming the constraint.
std::unique_ptr<Scheme> make_scheme(const std::string& name, std::size_t n, std::size_t k, std::size_t x,
                                    std::size_t t, std::optional<std::uint64_t> prime = std::nullopt);

const std::vector<std::string>& scheme_names();

}  // namespace xstpir::sim
