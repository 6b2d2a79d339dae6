#pragma once

// Simulated deployment: N server threads that only see their own share and
// the query they receive, a client that decodes, and a line-based transcript.
//
// Wire records are "KIND server_id count symbols..." with decimal symbols.
// A transcript is a header of "key value" lines (scheme, N, K, X, T, p, L,
// seed, theta) followed by QUERY, ANSWER / ANSWER_EMPTY, DOWNLOADED and
// DECODED records.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xstpir/capacity.hpp"
#include "xstpir/messages.hpp"
#include "xstpir/rng.hpp"
#include "xstpir/scheme.hpp"

namespace xstpir::sim {

enum class WireKind { Query, Answer, AnswerEmpty };

struct WireMessage {
  WireKind kind = WireKind::Query;
  std::size_t server = 0;
  Symbols payload;

  friend bool operator==(const WireMessage&, const WireMessage&) = default;
};

std::string kind_name(WireKind kind);
std::string encode_wire(const WireMessage& msg);
// Throws UsageError on malformed records.
WireMessage parse_wire(std::string_view line);

struct Transcript {
  SchemeShape shape;
  std::uint64_t seed = 0;
  std::size_t theta = 0;
  std::vector<WireMessage> queries;     // ordered by server
  std::vector<WireMessage> answers;     // ordered by server
  std::vector<std::size_t> downloaded;  // D_n
  Symbols decoded;

  std::size_t total_downloaded() const;
  std::size_t total_uploaded() const;
};

std::string write_transcript(const Transcript& t);
// Checks that the DOWNLOADED counts agree with the answer payloads.
Transcript parse_transcript(std::string_view text);

// Rebuilds the scheme from the header and decodes the recorded answers.
Symbols replay(const Transcript& t);
Symbols replay(const Transcript& t, const Scheme& scheme);

// What each server holds once storage has been distributed.
struct Deployment {
  std::vector<Symbols> storage;
};

struct Retrieval {
  Deployment deployment;
  Transcript transcript;
};

// Messages with uniform symbols drawn from `seed`.
MessageSet random_messages(const Scheme& scheme, std::uint64_t seed);

// Samples storage noise and query randomness from `seed`, distributes
// storage to server threads, exchanges wire messages and decodes. Throws
// InvariantViolation if the decoded message differs from W_theta.
Retrieval run_retrieval(const Scheme& scheme, const MessageSet& messages, std::size_t theta, std::uint64_t seed);

// The shares and queries seen by a coalition of servers.
struct AdversaryView {
  std::vector<std::size_t> servers;
  std::vector<Symbols> storage;
  std::vector<Symbols> queries;
};

AdversaryView collude(const Deployment& deployment, const Transcript& transcript,
                      const std::vector<std::size_t>& subset);

struct RateEstimate {
  Rate rate;
  Fraction mean_download;
  bool exhaustive = true;
  std::uint64_t samples = 0;  // (theta, query randomness) pairs averaged over
};

// L / E[D]. Exhaustive mode averages over every theta and every query
// randomness realization; otherwise over `trials` seeded samples. Exhaustive
// mode throws EnumerationCapExceeded if the space is larger than `cap`.
RateEstimate empirical_rate(const Scheme& scheme, bool exhaustive, std::uint64_t trials = 10000,
                            std::uint64_t seed = 1, std::uint64_t cap = std::uint64_t{1} << 24);

}  // namespace xstpir::sim
