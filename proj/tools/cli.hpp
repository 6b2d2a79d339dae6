#pragma once

// Command-line front end. Kept as a library so the commands can be driven
// from tests without spawning processes.
//
// Exit codes: 0 success, 1 audit or replay failure, 2 usage error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace xstpir::cli {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct ExperimentConfig {
  std::string scheme = "csa";
  std::size_t n = 3;
  std::string k = "2";  // "inf" is accepted by the capacity command
  std::size_t x = 1;
  std::size_t t = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> prime;
  std::size_t theta = 1;
  bool sampled = false;
  std::uint64_t trials = 10000;
  std::uint64_t cap = std::uint64_t{1} << 24;
};

// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xstpir::cli
