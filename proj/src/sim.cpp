#include "xstpir/sim.hpp"

#include <algorithm>
#include <charconv>
#include <condition_variable>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "xstpir/enumerate.hpp"
#include "xstpir/error.hpp"

namespace xstpir::sim {

namespace {

constexpr std::uint64_t kMessageStream = 1;
constexpr std::uint64_t kStorageStream = 2;
constexpr std::uint64_t kQueryStream = 3;

template <class T>
class Channel {
 public:
  void push(T v) {
    {
      std::lock_guard lock(mu_);
      items_.push_back(std::move(v));
    }
    cv_.notify_one();
  }

  T pop() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return !items_.empty(); });
    T v = std::move(items_.front());
    items_.pop_front();
    return v;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<T> items_;
};

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError(std::string("bad ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

// Parses "count v1 .. vcount" starting at words[first].
Symbols parse_counted(const std::vector<std::string_view>& words, std::size_t first, const char* what) {
  if (words.size() <= first) throw UsageError(std::string(what) + ": missing count");
  const std::uint64_t count = parse_u64(words[first], "count");
  if (words.size() != first + 1 + count) throw UsageError(std::string(what) + ": count does not match symbols");
  Symbols out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(parse_u64(words[first + 1 + i], "symbol"));
  return out;
}

void append_counted(std::ostringstream& os, const Symbols& s) {
  os << s.size();
  for (auto v : s) os << ' ' << v;
}

}  // namespace

std::string kind_name(WireKind kind) {
  switch (kind) {
    case WireKind::Query: return "QUERY";
    case WireKind::Answer: return "ANSWER";
    case WireKind::AnswerEmpty: return "ANSWER_EMPTY";
  }
  return "?";
}

std::string encode_wire(const WireMessage& msg) {
  std::ostringstream os;
  os << kind_name(msg.kind) << ' ' << msg.server << ' ';
  append_counted(os, msg.payload);
  return os.str();
}

WireMessage parse_wire(std::string_view line) {
  const auto words = split_words(line);
  if (words.size() < 3) throw UsageError("wire record too short: '" + std::string(line) + "'");
  WireMessage msg;
  if (words[0] == "QUERY") {
    msg.kind = WireKind::Query;
  } else if (words[0] == "ANSWER") {
    msg.kind = WireKind::Answer;
  } else if (words[0] == "ANSWER_EMPTY") {
    msg.kind = WireKind::AnswerEmpty;
  } else {
    throw UsageError("unknown wire record kind '" + std::string(words[0]) + "'");
  }
  msg.server = parse_u64(words[1], "server id");
  msg.payload = parse_counted(words, 2, "wire record");
  if (msg.kind == WireKind::AnswerEmpty && !msg.payload.empty()) {
    throw UsageError("ANSWER_EMPTY must not carry symbols");
  }
  if (msg.kind == WireKind::Answer && msg.payload.empty()) throw UsageError("ANSWER must carry symbols");
  return msg;
}

std::size_t Transcript::total_downloaded() const {
  std::size_t d = 0;
  for (auto v : downloaded) d += v;
  return d;
}

std::size_t Transcript::total_uploaded() const {
  std::size_t u = 0;
  for (const auto& q : queries) u += q.payload.size();
  return u;
}

std::string write_transcript(const Transcript& t) {
  std::ostringstream os;
  os << "scheme " << t.shape.name << '\n'
     << "N " << t.shape.n << '\n'
     << "K " << t.shape.k << '\n'
     << "X " << t.shape.x << '\n'
     << "T " << t.shape.t << '\n'
     << "p " << t.shape.p << '\n'
     << "L " << t.shape.l << '\n'
     << "seed " << t.seed << '\n'
     << "theta " << t.theta << '\n';
  for (const auto& q : t.queries) os << encode_wire(q) << '\n';
  for (const auto& a : t.answers) os << encode_wire(a) << '\n';
  os << "DOWNLOADED ";
  append_counted(os, Symbols(t.downloaded.begin(), t.downloaded.end()));
  os << "\nDECODED ";
  append_counted(os, t.decoded);
  os << '\n';
  return os.str();
}

Transcript parse_transcript(std::string_view text) {
  Transcript t;
  std::map<std::string, std::string, std::less<>> header;
  bool have_downloaded = false, have_decoded = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    const auto words = split_words(line);
    if (words.empty() || words[0].front() == '#') continue;
    const std::string_view key = words[0];
    if (key == "QUERY") {
      t.queries.push_back(parse_wire(line));
    } else if (key == "ANSWER" || key == "ANSWER_EMPTY") {
      t.answers.push_back(parse_wire(line));
    } else if (key == "DOWNLOADED") {
      for (auto v : parse_counted(words, 1, "DOWNLOADED")) t.downloaded.push_back(v);
      have_downloaded = true;
    } else if (key == "DECODED") {
      t.decoded = parse_counted(words, 1, "DECODED");
      have_decoded = true;
    } else {
      if (words.size() != 2) throw UsageError("bad transcript header line: '" + std::string(line) + "'");
      header[std::string(key)] = std::string(words[1]);
    }
  }
  auto need = [&](const char* k) -> const std::string& {
    auto it = header.find(k);
    if (it == header.end()) throw UsageError(std::string("transcript header lacks '") + k + "'");
    return it->second;
  };
  t.shape.name = need("scheme");
  t.shape.n = parse_u64(need("N"), "N");
  t.shape.k = parse_u64(need("K"), "K");
  t.shape.x = parse_u64(need("X"), "X");
  t.shape.t = parse_u64(need("T"), "T");
  t.shape.p = parse_u64(need("p"), "p");
  t.shape.l = parse_u64(need("L"), "L");
  t.seed = parse_u64(need("seed"), "seed");
  t.theta = parse_u64(need("theta"), "theta");
  if (!have_downloaded || !have_decoded) throw UsageError("transcript lacks DOWNLOADED or DECODED record");
  if (t.answers.size() != t.shape.n || t.queries.size() != t.shape.n || t.downloaded.size() != t.shape.n) {
    throw UsageError("transcript must hold one query, one answer and one download count per server");
  }
  for (std::size_t n = 0; n < t.shape.n; ++n) {
    if (t.downloaded[n] != t.answers[n].payload.size()) {
      throw UsageError("DOWNLOADED count of server " + std::to_string(n + 1) + " disagrees with its answer");
    }
  }
  return t;
}

Symbols replay(const Transcript& t, const Scheme& scheme) {
  const auto& s = scheme.shape();
  if (s.name != t.shape.name || s.n != t.shape.n || s.k != t.shape.k || s.p != t.shape.p || s.l != t.shape.l) {
    throw UsageError("transcript does not match the scheme instance");
  }
  std::vector<Symbols> answers;
  for (const auto& a : t.answers) answers.push_back(a.payload);
  return scheme.decode(t.theta, answers);
}

Symbols replay(const Transcript& t) {
  const auto scheme = make_scheme(t.shape.name, t.shape.n, t.shape.k, t.shape.x, t.shape.t, t.shape.p);
  return replay(t, *scheme);
}

MessageSet random_messages(const Scheme& scheme, std::uint64_t seed) {
  Rng rng(seed, kMessageStream);
  const auto& s = scheme.shape();
  return scheme.messages_from(rng.uniform_vector(s.k * s.l, s.p));
}

Retrieval run_retrieval(const Scheme& scheme, const MessageSet& messages, std::size_t theta, std::uint64_t seed) {
  const SchemeShape& shape = scheme.shape();
  if (messages.k() != shape.k || messages.l() != shape.l) throw UsageError("run_retrieval: message dimensions");

  Rng storage_rng(seed, kStorageStream);
  Rng query_rng(seed, kQueryStream);
  Deployment deployment{scheme.store(messages, storage_rng.uniform_vector(scheme.storage_noise_len(), shape.p))};
  const std::vector<Symbols> queries = scheme.query(theta, query_rng.mixed(scheme.query_radix()));

  // Each server thread owns a copy of its share and sees nothing else but
  // the wire messages addressed to it.
  std::vector<Channel<WireMessage>> inboxes(shape.n);
  Channel<WireMessage> client_inbox;
  std::vector<std::exception_ptr> errors(shape.n);
  {
    std::vector<std::jthread> servers;
    for (std::size_t n = 1; n <= shape.n; ++n) {
      servers.emplace_back([&scheme, &client_inbox, inbox = &inboxes[n - 1], error = &errors[n - 1],
                            stored = deployment.storage[n - 1], n] {
        try {
          const WireMessage q = inbox->pop();
          if (q.kind != WireKind::Query || q.server != n) {
            throw InvariantViolation("server received a message not addressed to it");
          }
          WireMessage reply{WireKind::AnswerEmpty, n, {}};
          if (scheme.answer_length(n, q.payload) > 0) {
            reply.kind = WireKind::Answer;
            reply.payload = scheme.respond(n, stored, q.payload);
          }
          client_inbox.push(std::move(reply));
        } catch (...) {
          *error = std::current_exception();
        }
      });
    }
    for (std::size_t n = 1; n <= shape.n; ++n) inboxes[n - 1].push({WireKind::Query, n, queries[n - 1]});
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Transcript t;
  t.shape = shape;
  t.seed = seed;
  t.theta = theta;
  for (std::size_t n = 1; n <= shape.n; ++n) t.queries.push_back({WireKind::Query, n, queries[n - 1]});
  for (std::size_t n = 0; n < shape.n; ++n) t.answers.push_back(client_inbox.pop());
  std::sort(t.answers.begin(), t.answers.end(),
            [](const WireMessage& a, const WireMessage& b) { return a.server < b.server; });
  std::vector<Symbols> payloads;
  for (const auto& a : t.answers) {
    t.downloaded.push_back(a.payload.size());
    payloads.push_back(a.payload);
  }
  try {
    t.decoded = scheme.decode(theta, payloads);
  } catch (const SingularMatrix& e) {
    throw InvariantViolation(std::string("decoding failed: ") + e.what());
  }
  const auto want = messages.message(theta - 1);
  if (t.decoded != to_values(want)) throw InvariantViolation("decoded message differs from W_theta");
  return {std::move(deployment), std::move(t)};
}

AdversaryView collude(const Deployment& deployment, const Transcript& transcript,
                      const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw UsageError("collude: coalition must not be empty");
  AdversaryView view;
  for (auto n : subset) {
    if (n < 1 || n > deployment.storage.size()) throw UsageError("collude: server id out of range");
    if (std::find(view.servers.begin(), view.servers.end(), n) != view.servers.end()) {
      throw UsageError("collude: duplicate server id");
    }
    view.servers.push_back(n);
    view.storage.push_back(deployment.storage[n - 1]);
    view.queries.push_back(transcript.queries.at(n - 1).payload);
  }
  return view;
}

RateEstimate empirical_rate(const Scheme& scheme, bool exhaustive, std::uint64_t trials, std::uint64_t seed,
                            std::uint64_t cap) {
  const auto& s = scheme.shape();
  const auto radix = scheme.query_radix();
  auto download = [&](std::size_t theta, const Symbols& r) {
    std::uint64_t d = 0;
    const auto qs = scheme.query(theta, r);
    for (std::size_t n = 1; n <= s.n; ++n) d += scheme.answer_length(n, qs[n - 1]);
    return d;
  };

  std::uint64_t total = 0, samples = 0;
  if (exhaustive) {
    const auto size = space_product(space_size(radix), s.k);
    if (!size || *size > cap) {
      throw EnumerationCapExceeded("query space has " + (size ? std::to_string(*size) : std::string("> 2^62")) +
                                   " points, above the cap of " + std::to_string(cap));
    }
    for (std::size_t theta = 1; theta <= s.k; ++theta) {
      for_each_point(radix, [&](const Symbols& r) {
        total += download(theta, r);
        ++samples;
      });
    }
  } else {
    if (trials == 0) throw UsageError("empirical_rate: trials must be positive");
    Rng rng(seed, kQueryStream);
    for (std::uint64_t i = 0; i < trials; ++i) {
      const std::size_t theta = 1 + rng.uniform(s.k);
      total += download(theta, rng.mixed(radix));
      ++samples;
    }
  }
  if (total == 0) throw InvariantViolation("empirical_rate: nothing was ever downloaded");
  const Fraction mean{BigInt(total), BigInt(samples)};
  return {Rate(Fraction(BigInt(s.l)) / mean), mean, exhaustive, samples};
}

}  // namespace xstpir::sim
