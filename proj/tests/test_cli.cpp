#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "oracles.hpp"
#include "xstpir/capacity.hpp"

using namespace xstpir;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "xstpir_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("retrieve prints a summary and decodes the plaintext") {
  const auto r = run({"retrieve", "--scheme", "csa", "--N", "5", "--K", "2", "--X", "1", "--T", "1", "--seed", "3"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(has(r.out, "scheme csa N=5 K=2 X=1 T=1 p=11 L=3 seed=3 theta=1"));
  std::istringstream lines(r.out);
  std::string line, decoded, plaintext;
  while (std::getline(lines, line)) {
    if (line.rfind("decoded ", 0) == 0) decoded = line.substr(8);
    if (line.rfind("plaintext ", 0) == 0) plaintext = line.substr(10);
  }
  CHECK_FALSE(decoded.empty());
  CHECK(decoded == plaintext);
  CHECK(has(r.out, "rate "));
}

TEST_CASE("retrieve rejects parameters outside a scheme's regime") {
  const auto b = run({"retrieve", "--scheme", "binary_n3", "--K", "1"});
  CHECK(b.code == cli::kExitUsage);
  CHECK(has(b.err, "K >= 2"));
  const auto d = run({"retrieve", "--scheme", "download_all", "--N", "5", "--X", "1", "--T", "1"});
  CHECK(d.code == cli::kExitUsage);
  CHECK(has(d.err, "csa"));
  CHECK(run({"retrieve", "--scheme", "csa", "--N", "3", "--X", "1", "--T", "2"}).code == cli::kExitUsage);
  CHECK(run({"retrieve", "--scheme", "sym_xspir", "--N", "3", "--X", "1"}).code == cli::kExitUsage);
  CHECK(run({"retrieve", "--scheme", "csa", "--K", "inf"}).code == cli::kExitUsage);
  CHECK(run({"retrieve", "--theta", "9"}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
}

TEST_CASE("transcripts are byte-identical across runs and replay") {
  const auto a = scratch("a.txt"), b = scratch("b.txt");
  const std::vector<std::string> base{"retrieve", "--scheme", "csa", "--N", "7", "--K", "2", "--X", "2", "--T", "2",
                                      "--seed", "42", "--theta", "2"};
  auto with_out = [&](const fs::path& p) {
    auto args = base;
    args.insert(args.end(), {"--out", p.string()});
    return run(args);
  };
  REQUIRE(with_out(a).code == 0);
  REQUIRE(with_out(b).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());

  const auto r = run({"replay", "--transcript", a.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(has(r.out, "MATCH"));

  // Tampering with an answer changes the decoded message.
  std::string text = slurp(a);
  const auto pos = text.find("ANSWER 1 1 ");
  REQUIRE(pos != std::string::npos);
  const auto start = pos + 11;
  const auto end = text.find('\n', start);
  const auto value = std::stoull(text.substr(start, end - start));
  text.replace(start, end - start, std::to_string((value + 1) % 11));
  const auto c = scratch("c.txt");
  std::ofstream(c) << text;
  const auto bad = run({"replay", "--transcript", c.string()});
  CHECK(bad.code == cli::kExitFailure);
  CHECK(has(bad.out, "MISMATCH"));

  CHECK(run({"replay", "--transcript", scratch("missing.txt").string()}).code == cli::kExitUsage);
}

TEST_CASE("seed comes from the environment when not given") {
  ::setenv("XSTPIR_SEED", "11", 1);
  const auto env = run({"retrieve", "--scheme", "binary_n3", "--K", "3"});
  ::unsetenv("XSTPIR_SEED");
  const auto flag = run({"retrieve", "--scheme", "binary_n3", "--K", "3", "--seed", "11"});
  CHECK(env.code == 0);
  CHECK(env.out == flag.out);
}

TEST_CASE("config file with flag overrides") {
  const auto cfg = scratch("exp.conf");
  std::ofstream(cfg) << "# tiny csa\nscheme=csa\nN=4\nK=2\nX=2\nT=1\nseed=5\n";
  const auto from_file = run({"retrieve", "--config", cfg.string()});
  REQUIRE(from_file.code == 0);
  CHECK(has(from_file.out, "scheme csa N=4 K=2 X=2 T=1"));
  CHECK(has(from_file.out, "seed=5"));
  const auto overridden = run({"retrieve", "--config", cfg.string(), "--seed", "6"});
  CHECK(has(overridden.out, "seed=6"));
}

TEST_CASE("audit command") {
  const auto ok = run({"audit", "--scheme", "binary_n3", "--K", "2", "--property", "privacy"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(has(ok.out, "max_tv 0/1"));
  CHECK(has(ok.out, "result PASS"));

  const auto all = run({"audit", "--scheme", "csa", "--N", "3", "--K", "1", "--prime", "5"});
  CHECK(all.code == cli::kExitOk);
  for (const char* p : {"X_SECURITY", "T_PRIVACY", "SYM_SECURITY", "CORRECTNESS"}) CHECK(has(all.out, p));

  const auto sym = run({"audit", "--scheme", "csa", "--N", "4", "--K", "2", "--X", "1", "--T", "2", "--property", "sym"});
  CHECK(sym.code == cli::kExitFailure);
  CHECK(has(sym.out, "result FAIL"));

  const auto wide = run({"audit", "--scheme", "csa", "--N", "3", "--K", "1", "--prime", "5", "--property", "security",
                         "--subset-size", "2"});
  CHECK(wide.code == cli::kExitFailure);

  const auto capped = run({"audit", "--scheme", "csa", "--N", "5", "--K", "2", "--property", "privacy", "--cap", "1000"});
  CHECK(capped.code == cli::kExitUsage);
  CHECK(has(capped.err, "cap"));
  const auto sampled = run({"audit", "--scheme", "csa", "--N", "5", "--K", "2", "--property", "security", "--cap",
                            "1000", "--sampled", "--trials", "500"});
  CHECK(sampled.code == cli::kExitOk);
  CHECK(has(sampled.out, "sampled"));

  const auto report = scratch("report.txt");
  CHECK(run({"audit", "--scheme", "sym_xspir", "--N", "2", "--K", "2", "--out", report.string()}).code == 0);
  CHECK(has(slurp(report), "result PASS"));
  CHECK(run({"audit", "--property", "speed"}).code == cli::kExitUsage);
}

TEST_CASE("rate command") {
  const auto r = run({"rate", "--scheme", "binary_n3", "--K", "3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "empirical_rate 8/21"));
  CHECK(has(r.out, "match yes"));
  const auto d = run({"rate", "--scheme", "download_all", "--N", "2", "--K", "3", "--X", "1", "--T", "1"});
  CHECK(has(d.out, "empirical_rate 1/6"));
}

TEST_CASE("capacity command") {
  const auto a = run({"capacity", "--N", "3", "--K", "2", "--X", "1", "--T", "1"});
  CHECK(a.code == 0);
  CHECK(has(a.out, "upper_bound   4/9"));
  CHECK(has(a.out, "achieved      4/9"));
  CHECK(has(a.out, "TIGHT"));
  const auto inf = run({"capacity", "--N", "5", "--K", "inf", "--X", "1", "--T", "1"});
  CHECK(inf.code == 0);
  CHECK(has(inf.out, "asymptotic    3/5"));
  const auto two = run({"capacity", "--N", "2", "--K", "3", "--X", "1", "--T", "1"});
  CHECK(has(two.out, "1/6"));
  CHECK(has(two.out, "TIGHT"));
  CHECK(run({"capacity", "--N", "2", "--K", "3", "--X", "2"}).code == cli::kExitUsage);
}

TEST_CASE("bench command emits ordered rows") {
  const auto r = run({"bench", "--n-min", "3", "--n-max", "30"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "N,best_M,mds_best,mds_best_float,sqrt_bound,sqrt_bound_float,xstpir_asym,xstpir_asym_float,ordered");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 9);
    const double mds = std::stod(cells[3]), bound = std::stod(cells[5]), asym = std::stod(cells[7]);
    CHECK(mds <= bound + 1e-12);
    CHECK(bound < asym);
    CHECK(cells[8] == "1");
    if (cells[0] == "4") {
      CHECK(cells[2] == "1/4");
      CHECK(cells[6] == "1/2");
    }
    if (cells[0] == "9") {
      CHECK(cells[4] == "4/9");
      CHECK(cells[6] == "7/9");
    }
  }
  CHECK(rows == 28);
  CHECK(run({"bench", "--n-min", "2"}).code == cli::kExitUsage);
}
