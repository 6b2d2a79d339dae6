#include "xstpir/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "xstpir/enumerate.hpp"
#include "xstpir/error.hpp"

namespace xstpir::audit {

namespace {

constexpr std::size_t kMaxDistinct = 64;
constexpr std::uint64_t kSampledConditions = 4;

// Remembers the distinct tables seen for one conditioning family and the
// largest distance between any two of them.
class TvTracker {
 public:
  explicit TvTracker(bool exhaustive) : exhaustive_(exhaustive) {}

  void add(Table t) {
    for (const auto& d : distinct_) {
      if (d == t) return;
    }
    for (const auto& d : distinct_) {
      const Fraction tv = tv_distance(d, t);
      max_tv_ = std::max(max_tv_, tv);
      if (!exhaustive_) {
        std::size_t support = d.size();
        for (const auto& [k, c] : t) support += d.count(k) ? 0 : 1;
        const double tol = std::sqrt(static_cast<double>(support) / static_cast<double>(total(t)));
        tolerance_ = std::max(tolerance_, tol);
        if (to_double(tv) > tol) within_ = false;
      }
    }
    if (distinct_.size() < kMaxDistinct) distinct_.push_back(std::move(t));
  }

  const Fraction& max_tv() const { return max_tv_; }
  bool pass() const { return exhaustive_ ? max_tv_.numerator() == 0 : within_; }
  double tolerance() const { return tolerance_; }

 private:
  static std::uint64_t total(const Table& t) {
    std::uint64_t n = 0;
    for (const auto& [k, c] : t) n += c;
    return n;
  }

  bool exhaustive_;
  std::vector<Table> distinct_;
  Fraction max_tv_{0};
  double tolerance_ = 0.0;
  bool within_ = true;
};

void append(Symbols& key, const Symbols& payload) {
  key.push_back(payload.size());
  key.insert(key.end(), payload.begin(), payload.end());
}

struct Spaces {
  std::vector<std::uint64_t> messages, storage, query;
};

Spaces spaces_of(const sim::Scheme& scheme) {
  const auto& s = scheme.shape();
  return {uniform_radix(s.k * s.l, s.p), uniform_radix(scheme.storage_noise_len(), s.p), scheme.query_radix()};
}

std::string size_text(std::optional<std::uint64_t> n) { return n ? std::to_string(*n) : std::string("> 2^62"); }

// Decides between exhaustive and sampled mode.
bool choose_exhaustive(const sim::Scheme& scheme, Property p, const AuditOptions& opts) {
  const auto size = enumeration_size(scheme, p);
  if (size && *size <= opts.cap) return true;
  if (!opts.allow_sampling) {
    throw EnumerationCapExceeded(property_name(p) + " audit needs " + size_text(size) +
                                 " evaluations per coalition, above the cap of " + std::to_string(opts.cap) +
                                 "; rerun with sampling enabled or a larger cap");
  }
  return false;
}

std::size_t coalition_size(const sim::Scheme& scheme, Property p, const AuditOptions& opts) {
  const auto& s = scheme.shape();
  const std::size_t size = opts.subset_size.value_or(p == Property::XSecurity ? s.x : s.t);
  if (size < 1 || size > s.n) throw UsageError("coalition size must lie in [1, N]");
  return size;
}

Symbols view_key(const std::vector<Symbols>& per_server, const std::vector<std::size_t>& subset) {
  Symbols key;
  for (auto n : subset) append(key, per_server[n - 1]);
  return key;
}

std::vector<Symbols> all_answers(const sim::Scheme& scheme, const std::vector<Symbols>& storage,
                                 const std::vector<Symbols>& queries) {
  std::vector<Symbols> out;
  for (std::size_t n = 1; n <= scheme.shape().n; ++n) {
    out.push_back(scheme.respond(n, storage[n - 1], queries[n - 1]));
  }
  return out;
}

Symbols answers_key(const std::vector<Symbols>& answers) {
  Symbols key;
  for (const auto& a : answers) append(key, a);
  return key;
}

Symbols desired(const sim::Scheme& scheme, const Symbols& message_values, std::size_t theta) {
  const std::size_t l = scheme.shape().l;
  return Symbols(message_values.begin() + static_cast<std::ptrdiff_t>((theta - 1) * l),
                 message_values.begin() + static_cast<std::ptrdiff_t>(theta * l));
}

}  // namespace

std::string property_name(Property p) {
  switch (p) {
    case Property::XSecurity: return "X_SECURITY";
    case Property::TPrivacy: return "T_PRIVACY";
    case Property::SymSecurity: return "SYM_SECURITY";
    case Property::Correctness: return "CORRECTNESS";
  }
  return "?";
}

Property parse_property(const std::string& s) {
  if (s == "security" || s == "x-security" || s == "X_SECURITY") return Property::XSecurity;
  if (s == "privacy" || s == "t-privacy" || s == "T_PRIVACY") return Property::TPrivacy;
  if (s == "sym" || s == "sym-security" || s == "SYM_SECURITY") return Property::SymSecurity;
  if (s == "correctness" || s == "CORRECTNESS") return Property::Correctness;
  throw UsageError("unknown audit property '" + s + "' (expected security, privacy, sym or correctness)");
}

Fraction tv_distance(const Table& a, const Table& b) {
  BigInt na = 0, nb = 0;
  for (const auto& [k, c] : a) na += c;
  for (const auto& [k, c] : b) nb += c;
  if (na == 0 || nb == 0) throw UsageError("tv_distance: empty table");
  BigInt sum = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    BigInt ca = 0, cb = 0;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      ca = (ia++)->second;
    } else if (ia == a.end() || ib->first < ia->first) {
      cb = (ib++)->second;
    } else {
      ca = (ia++)->second;
      cb = (ib++)->second;
    }
    BigInt diff = ca * nb - cb * na;
    sum += diff < 0 ? BigInt(-diff) : diff;
  }
  return Fraction(sum, 2 * na * nb);
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t s) {
  std::vector<std::vector<std::size_t>> out;
  if (s > n) return out;
  std::vector<std::size_t> cur(s);
  for (std::size_t i = 0; i < s; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    std::size_t i = s;
    while (i > 0 && cur[i - 1] == n - s + i) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < s; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::optional<std::uint64_t> enumeration_size(const sim::Scheme& scheme, Property property) {
  const Spaces sp = spaces_of(scheme);
  const auto ms = space_product(space_size(sp.messages), space_size(sp.storage));
  if (property == Property::XSecurity) return ms;
  return space_product(space_product(ms, space_size(sp.query)), scheme.shape().k);
}

AuditReport audit_security(const sim::Scheme& scheme, const AuditOptions& opts) {
  const auto& shape = scheme.shape();
  const Spaces sp = spaces_of(scheme);
  AuditReport r;
  r.property = Property::XSecurity;
  r.subset_size = coalition_size(scheme, r.property, opts);
  r.exhaustive = choose_exhaustive(scheme, r.property, opts);
  Fraction max_tv{0};
  bool pass = true;
  double tol = 0.0;
  Rng rng(opts.seed, 11);

  for (const auto& subset : subsets(shape.n, r.subset_size)) {
    TvTracker tracker(r.exhaustive);
    auto table_for = [&](const Symbols& m, auto&& noise_source) {
      const MessageSet messages = scheme.messages_from(m);
      Table t;
      noise_source([&](const Symbols& z) {
        ++t[view_key(scheme.store(messages, z), subset)];
        ++r.outcomes;
      });
      return t;
    };
    if (r.exhaustive) {
      for_each_point(sp.messages, [&](const Symbols& m) {
        tracker.add(table_for(m, [&](auto&& f) { for_each_point(sp.storage, f); }));
      });
    } else {
      for (std::uint64_t c = 0; c < kSampledConditions; ++c) {
        const Symbols m = rng.mixed(sp.messages);
        tracker.add(table_for(m, [&](auto&& f) {
          for (std::uint64_t i = 0; i < opts.trials; ++i) f(rng.mixed(sp.storage));
        }));
      }
    }
    ++r.subsets_checked;
    max_tv = std::max(max_tv, tracker.max_tv());
    pass = pass && tracker.pass();
    tol = std::max(tol, tracker.tolerance());
  }
  r.max_tv = max_tv;
  r.pass = pass;
  r.tolerance = tol;
  return r;
}

AuditReport audit_privacy(const sim::Scheme& scheme, const AuditOptions& opts) {
  const auto& shape = scheme.shape();
  const Spaces sp = spaces_of(scheme);
  AuditReport r;
  r.property = Property::TPrivacy;
  r.subset_size = coalition_size(scheme, r.property, opts);
  r.exhaustive = choose_exhaustive(scheme, r.property, opts);
  Fraction max_tv{0};
  bool pass = true;
  double tol = 0.0;
  Rng rng(opts.seed, 12);

  for (const auto& subset : subsets(shape.n, r.subset_size)) {
    TvTracker tracker(r.exhaustive);
    for (std::size_t theta = 1; theta <= shape.k; ++theta) {
      Table t;
      auto record = [&](const std::vector<Symbols>& storage, const std::vector<Symbols>& queries) {
        Symbols key = view_key(storage, subset);
        const Symbols q = view_key(queries, subset);
        key.insert(key.end(), q.begin(), q.end());
        ++t[key];
        ++r.outcomes;
      };
      if (r.exhaustive) {
        std::vector<std::vector<Symbols>> all_queries;
        for_each_point(sp.query, [&](const Symbols& q) { all_queries.push_back(scheme.query(theta, q)); });
        for_each_point(sp.messages, [&](const Symbols& m) {
          const MessageSet messages = scheme.messages_from(m);
          for_each_point(sp.storage, [&](const Symbols& z) {
            const auto storage = scheme.store(messages, z);
            for (const auto& queries : all_queries) record(storage, queries);
          });
        });
      } else {
        for (std::uint64_t i = 0; i < opts.trials; ++i) {
          const MessageSet messages = scheme.messages_from(rng.mixed(sp.messages));
          record(scheme.store(messages, rng.mixed(sp.storage)), scheme.query(theta, rng.mixed(sp.query)));
        }
      }
      tracker.add(std::move(t));
    }
    ++r.subsets_checked;
    max_tv = std::max(max_tv, tracker.max_tv());
    pass = pass && tracker.pass();
    tol = std::max(tol, tracker.tolerance());
  }
  r.max_tv = max_tv;
  r.pass = pass;
  r.tolerance = tol;
  return r;
}

AuditReport audit_sym_security(const sim::Scheme& scheme, const AuditOptions& opts) {
  const auto& shape = scheme.shape();
  const Spaces sp = spaces_of(scheme);
  AuditReport r;
  r.property = Property::SymSecurity;
  r.subset_size = shape.n;
  r.subsets_checked = 1;
  r.exhaustive = choose_exhaustive(scheme, r.property, opts);

  // One tracker per (theta, query randomness, W_theta); tables range over
  // the realizations of the other messages.
  std::map<std::pair<std::size_t, Symbols>, std::map<Symbols, TvTracker>> groups;
  auto tracker_for = [&](std::size_t theta, const Symbols& q, const Symbols& w) -> TvTracker& {
    auto& inner = groups[{theta, q}];
    return inner.try_emplace(w, r.exhaustive).first->second;
  };

  if (r.exhaustive) {
    for_each_point(sp.messages, [&](const Symbols& m) {
      const MessageSet messages = scheme.messages_from(m);
      std::vector<std::vector<Symbols>> storages;
      for_each_point(sp.storage, [&](const Symbols& z) { storages.push_back(scheme.store(messages, z)); });
      for (std::size_t theta = 1; theta <= shape.k; ++theta) {
        const Symbols w = desired(scheme, m, theta);
        for_each_point(sp.query, [&](const Symbols& q) {
          const auto queries = scheme.query(theta, q);
          Table t;
          for (const auto& storage : storages) {
            ++t[answers_key(all_answers(scheme, storage, queries))];
            ++r.outcomes;
          }
          tracker_for(theta, q, w).add(std::move(t));
        });
      }
    });
  } else {
    Rng rng(opts.seed, 13);
    for (std::uint64_t c = 0; c < kSampledConditions; ++c) {
      const std::size_t theta = 1 + rng.uniform(shape.k);
      const Symbols q = rng.mixed(sp.query);
      const auto queries = scheme.query(theta, q);
      Symbols base = rng.mixed(sp.messages);
      const Symbols w = desired(scheme, base, theta);
      for (std::uint64_t v = 0; v < kSampledConditions; ++v) {
        Symbols m = rng.mixed(sp.messages);
        std::copy(w.begin(), w.end(), m.begin() + static_cast<std::ptrdiff_t>((theta - 1) * shape.l));
        const MessageSet messages = scheme.messages_from(m);
        Table t;
        for (std::uint64_t i = 0; i < opts.trials; ++i) {
          ++t[answers_key(all_answers(scheme, scheme.store(messages, rng.mixed(sp.storage)), queries))];
          ++r.outcomes;
        }
        tracker_for(theta, q, w).add(std::move(t));
      }
    }
  }

  r.pass = true;
  for (const auto& [key, inner] : groups) {
    for (const auto& [w, tracker] : inner) {
      r.max_tv = std::max(r.max_tv, tracker.max_tv());
      r.pass = r.pass && tracker.pass();
      r.tolerance = std::max(r.tolerance, tracker.tolerance());
    }
  }
  return r;
}

AuditReport audit_correctness(const sim::Scheme& scheme, const AuditOptions& opts) {
  const auto& shape = scheme.shape();
  const Spaces sp = spaces_of(scheme);
  AuditReport r;
  r.property = Property::Correctness;
  r.subset_size = shape.n;
  r.subsets_checked = 1;
  r.exhaustive = choose_exhaustive(scheme, r.property, opts);

  auto check = [&](const Symbols& m, const std::vector<Symbols>& storage, std::size_t theta,
                   const std::vector<Symbols>& queries) {
    ++r.outcomes;
    try {
      if (scheme.decode(theta, all_answers(scheme, storage, queries)) == desired(scheme, m, theta)) return;
    } catch (const SingularMatrix& e) {
      if (r.detail.empty()) r.detail = std::string("decode failed: ") + e.what();
    } catch (const DivisionByZero& e) {
      if (r.detail.empty()) r.detail = std::string("decode failed: ") + e.what();
    }
    ++r.failures;
  };

  if (r.exhaustive) {
    std::vector<std::vector<std::vector<Symbols>>> queries(shape.k);
    for (std::size_t theta = 1; theta <= shape.k; ++theta) {
      for_each_point(sp.query, [&](const Symbols& q) { queries[theta - 1].push_back(scheme.query(theta, q)); });
    }
    for_each_point(sp.messages, [&](const Symbols& m) {
      const MessageSet messages = scheme.messages_from(m);
      for_each_point(sp.storage, [&](const Symbols& z) {
        const auto storage = scheme.store(messages, z);
        for (std::size_t theta = 1; theta <= shape.k; ++theta) {
          for (const auto& qs : queries[theta - 1]) check(m, storage, theta, qs);
        }
      });
    });
  } else {
    Rng rng(opts.seed, 14);
    for (std::uint64_t i = 0; i < opts.trials; ++i) {
      const Symbols m = rng.mixed(sp.messages);
      const auto storage = scheme.store(scheme.messages_from(m), rng.mixed(sp.storage));
      const std::size_t theta = 1 + rng.uniform(shape.k);
      check(m, storage, theta, scheme.query(theta, rng.mixed(sp.query)));
    }
  }
  r.pass = r.failures == 0;
  r.max_tv = Fraction(BigInt(r.failures), BigInt(std::max<std::uint64_t>(r.outcomes, 1)));
  return r;
}

AuditReport run_audit(const sim::Scheme& scheme, Property property, const AuditOptions& opts) {
  switch (property) {
    case Property::XSecurity: return audit_security(scheme, opts);
    case Property::TPrivacy: return audit_privacy(scheme, opts);
    case Property::SymSecurity: return audit_sym_security(scheme, opts);
    case Property::Correctness: return audit_correctness(scheme, opts);
  }
  throw UsageError("unknown audit property");
}

std::string format_report(const AuditReport& report, const sim::SchemeShape& shape) {
  std::ostringstream os;
  os << "scheme " << shape.name << '\n'
     << "N " << shape.n << '\n'
     << "K " << shape.k << '\n'
     << "X " << shape.x << '\n'
     << "T " << shape.t << '\n'
     << "p " << shape.p << '\n'
     << "property " << property_name(report.property) << '\n'
     << "subset_size " << report.subset_size << '\n'
     << "subsets_checked " << report.subsets_checked << '\n'
     << "mode " << (report.exhaustive ? "exhaustive" : "sampled") << '\n'
     << "outcomes " << report.outcomes << '\n';
  if (report.property == Property::Correctness) {
    os << "failures " << report.failures << '\n';
  } else {
    os << "max_tv " << to_string(report.max_tv) << '\n';
  }
  if (!report.exhaustive) os << "tolerance " << report.tolerance << '\n';
  if (!report.detail.empty()) os << "detail " << report.detail << '\n';
  os << "result " << (report.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace xstpir::audit
