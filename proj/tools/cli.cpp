#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "xstpir/audit.hpp"
#include "xstpir/capacity.hpp"
#include "xstpir/error.hpp"
#include "xstpir/field.hpp"
#include "xstpir/scheme.hpp"
#include "xstpir/sim.hpp"

namespace xstpir::cli {

namespace {

std::string decimal(const Fraction& f) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed << to_double(f);
  return os.str();
}

std::string join(const Symbols& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
  return os.str();
}

std::size_t parse_k(const std::string& k) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(k, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != k.size() || v == 0) throw UsageError("K must be a positive integer, got '" + k + "'");
  return static_cast<std::size_t>(v);
}

std::unique_ptr<sim::Scheme> build(const ExperimentConfig& c) {
  return sim::make_scheme(c.scheme, c.n, parse_k(c.k), c.x, c.t, c.prime);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int cmd_retrieve(const ExperimentConfig& c, const std::string& out_path, std::ostream& out) {
  const auto scheme = build(c);
  const auto messages = sim::random_messages(*scheme, c.seed);
  const auto run = sim::run_retrieval(*scheme, messages, c.theta, c.seed);
  const auto& t = run.transcript;
  const auto& s = scheme->shape();
  if (!out_path.empty()) write_file(out_path, sim::write_transcript(t));

  out << "scheme " << s.name << " N=" << s.n << " K=" << s.k << " X=" << s.x << " T=" << s.t << " p=" << s.p
      << " L=" << s.l << " seed=" << c.seed << " theta=" << c.theta << '\n';
  out << "decoded " << join(t.decoded) << '\n';
  out << "plaintext " << join(to_values(messages.message(c.theta - 1))) << '\n';
  out << "downloads " << join(Symbols(t.downloaded.begin(), t.downloaded.end())) << " total "
      << t.total_downloaded() << '\n';
  out << "uploaded " << t.total_uploaded() << " (not counted)\n";
  const Fraction rate{BigInt(s.l), BigInt(t.total_downloaded())};
  out << "rate " << to_string(rate) << ' ' << decimal(rate) << '\n';
  if (!out_path.empty()) out << "transcript " << out_path << '\n';
  return kExitOk;
}

int cmd_replay(const std::string& path, std::ostream& out) {
  if (path.empty()) throw UsageError("replay needs --transcript");
  const auto t = sim::parse_transcript(read_file(path));
  const Symbols decoded = sim::replay(t);
  const bool match = decoded == t.decoded;
  out << "replayed " << join(decoded) << '\n' << "recorded " << join(t.decoded) << '\n';
  out << "result " << (match ? "MATCH" : "MISMATCH") << '\n';
  return match ? kExitOk : kExitFailure;
}

int cmd_audit(const ExperimentConfig& c, const std::string& property, std::optional<std::size_t> subset_size,
              const std::string& out_path, std::ostream& out) {
  const auto scheme = build(c);
  std::vector<audit::Property> props;
  if (property == "all") {
    props = {audit::Property::XSecurity, audit::Property::TPrivacy, audit::Property::Correctness};
    if (c.t == 1 && c.scheme != "download_all") props.insert(props.begin() + 2, audit::Property::SymSecurity);
  } else {
    props.push_back(audit::parse_property(property));
  }
  audit::AuditOptions opts;
  opts.subset_size = subset_size;
  opts.cap = c.cap;
  opts.allow_sampling = c.sampled;
  opts.trials = c.trials;
  opts.seed = c.seed;

  std::string text;
  bool pass = true;
  for (auto p : props) {
    const auto report = audit::run_audit(*scheme, p, opts);
    if (!text.empty()) text += '\n';
    text += audit::format_report(report, scheme->shape());
    pass = pass && report.pass;
  }
  out << text;
  if (!out_path.empty()) write_file(out_path, text);
  return pass ? kExitOk : kExitFailure;
}

int cmd_rate(const ExperimentConfig& c, std::ostream& out) {
  const auto scheme = build(c);
  const auto est = sim::empirical_rate(*scheme, !c.sampled, c.trials, c.seed, c.cap);
  const Rate closed = scheme->closed_form_rate();
  out << "scheme " << scheme->shape().name << '\n';
  out << "mode " << (est.exhaustive ? "exhaustive" : "sampled") << " samples " << est.samples << '\n';
  out << "mean_download " << to_string(est.mean_download) << ' ' << decimal(est.mean_download) << '\n';
  out << "empirical_rate " << est.rate.to_string() << ' ' << decimal(est.rate.value()) << '\n';
  out << "closed_form " << closed.to_string() << ' ' << decimal(closed.value()) << '\n';
  if (est.exhaustive) out << "match " << (est.rate == closed ? "yes" : "no") << '\n';
  return kExitOk;
}

void row(std::ostream& out, const std::string& name, const Fraction& v, const std::string& note = "") {
  out << std::left << std::setw(14) << name << std::setw(12) << to_string(v) << std::setw(10) << decimal(v);
  if (!note.empty()) out << ' ' << note;
  out << '\n';
}

int cmd_capacity(const ExperimentConfig& c, std::ostream& out) {
  const std::size_t n = c.n, x = c.x, t = c.t;
  if (n < 1 || t < 1) throw UsageError("capacity needs N >= 1 and T >= 1");
  if (x >= n) throw UsageError("capacity needs X < N (got X=" + std::to_string(x) + ", N=" + std::to_string(n) + ")");
  const bool infinite = c.k == "inf" || c.k == "infinity";
  const Rate asym = xstpir_asymptotic(n, x, t);
  out << "N=" << n << " K=" << (infinite ? std::string("inf") : c.k) << " X=" << x << " T=" << t << '\n';
  out << std::left << std::setw(14) << "quantity" << std::setw(12) << "exact" << std::setw(10) << "decimal"
      << " note\n";
  if (infinite) {
    row(out, "upper_bound", asym.value(), "limit K->inf");
    row(out, "asymptotic", asym.value());
    if (n > x + t) {
      row(out, "achieved", asym.value(), "csa, K->inf");
      row(out, "capacity", asym.value(), "TIGHT");
    }
    return kExitOk;
  }
  const std::size_t k = parse_k(c.k);
  const Rate bound = xstpir_upper_bound(n, k, x, t);
  row(out, "upper_bound", bound.value());
  row(out, "asymptotic", asym.value());
  std::optional<Rate> achieved;
  std::string how;
  if (n <= x + t) {
    achieved = Rate(BigInt(n - x), BigInt(n * k));
    how = "download_all";
  } else if (n == 3 && x == 1 && t == 1 && k >= 2) {
    achieved = c_n3(k);
    how = "binary_n3";
  } else if (x >= 1) {
    const std::size_t l = n - x - t;
    const std::uint64_t p = smallest_valid_prime(n, l);
    achieved = finite_k_rate(n, x, t, k, p, l);
    how = "csa p=" + std::to_string(p);
  }
  if (achieved) {
    row(out, "achieved", achieved->value(), how);
    if (*achieved == bound) row(out, "capacity", bound.value(), "TIGHT");
  }
  return kExitOk;
}

int cmd_bench(std::size_t n_min, std::size_t n_max, std::ostream& out) {
  if (n_min < 3 || n_max < n_min) throw UsageError("bench needs 3 <= n-min <= n-max");
  out << "N,best_M,mds_best,mds_best_float,sqrt_bound,sqrt_bound_float,xstpir_asym,xstpir_asym_float,ordered\n";
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const auto [m, mds] = best_mds_pir_asym(n);
    const Rate xs = xstpir_asymptotic(n, 1, 1);
    const auto root = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    std::string exact_bound;
    if (root * root == n) exact_bound = to_string(Fraction(BigInt(root - 1) * (root - 1), BigInt(n)));
    const bool ordered = at_most_sqrt_bound(mds.value(), n) && sqrt_bound_below(xs.value(), n);
    out << n << ',' << m << ',' << mds.to_string() << ',' << decimal(mds.value()) << ',' << exact_bound << ','
        << std::setprecision(6) << std::fixed << sqrt_bound(n) << ',' << xs.to_string() << ','
        << decimal(xs.value()) << ',' << (ordered ? 1 : 0) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secure and private information retrieval toolkit", "xstpir"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file providing defaults for any option");

  ExperimentConfig c;
  std::uint64_t prime = 0;
  std::string out_path, transcript_path, property = "all";
  std::size_t subset_size = 0, n_min = 3, n_max = 100;

  app.add_option("--scheme", c.scheme, "csa, download_all, binary_n3 or sym_xspir")->capture_default_str();
  app.add_option("--N", c.n, "number of servers")->capture_default_str();
  app.add_option("--K", c.k, "number of messages (capacity also takes 'inf')")->capture_default_str();
  app.add_option("--X", c.x, "security threshold")->capture_default_str();
  app.add_option("--T", c.t, "privacy threshold")->capture_default_str();
  app.add_option("--seed", c.seed, "seed for messages and noise")->envname("XSTPIR_SEED")->capture_default_str();
  auto* prime_opt = app.add_option("--prime", prime, "field modulus override");
  app.add_option("--theta", c.theta, "index of the desired message (1-based)")->capture_default_str();
  app.add_option("--out", out_path, "write the transcript or audit report here");
  app.add_option("--transcript", transcript_path, "transcript to replay");
  app.add_option("--property", property, "security, privacy, sym, correctness or all")->capture_default_str();
  auto* subset_opt = app.add_option("--subset-size", subset_size, "coalition size override for audits");
  app.add_flag("--sampled", c.sampled, "allow sampling when exhaustive enumeration exceeds the cap");
  bool exhaustive_flag = false;
  app.add_flag("--exhaustive", exhaustive_flag, "enumerate exhaustively (the default)");
  app.add_option("--trials", c.trials, "samples in sampled mode")->capture_default_str();
  app.add_option("--cap", c.cap, "largest enumeration attempted exhaustively")->capture_default_str();
  app.add_option("--n-min", n_min, "bench: first N")->capture_default_str();
  app.add_option("--n-max", n_max, "bench: last N")->capture_default_str();

  auto* retrieve = app.add_subcommand("retrieve", "run one retrieval and print or save its transcript");
  auto* replay = app.add_subcommand("replay", "decode a saved transcript again");
  auto* audit_cmd = app.add_subcommand("audit", "check security, privacy, symmetric security or correctness");
  auto* rate = app.add_subcommand("rate", "measure the expected download rate");
  auto* capacity = app.add_subcommand("capacity", "print bounds and achieved rates");
  auto* bench = app.add_subcommand("bench", "emit the MDS-PIR comparison curves as CSV");

  std::vector<std::string> argv_store{"xstpir"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (prime_opt->count() > 0) c.prime = prime;
  if (exhaustive_flag && c.sampled) {
    err << "error: --exhaustive and --sampled are mutually exclusive\n";
    return kExitUsage;
  }

  try {
    if (retrieve->parsed()) return cmd_retrieve(c, out_path, out);
    if (replay->parsed()) return cmd_replay(transcript_path, out);
    if (audit_cmd->parsed()) {
      std::optional<std::size_t> ss;
      if (subset_opt->count() > 0) ss = subset_size;
      return cmd_audit(c, property, ss, out_path, out);
    }
    if (rate->parsed()) return cmd_rate(c, out);
    if (capacity->parsed()) return cmd_capacity(c, out);
    if (bench->parsed()) return cmd_bench(n_min, n_max, out);
  } catch (const EnumerationCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InsufficientField& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    err << "protocol failure: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace xstpir::cli
