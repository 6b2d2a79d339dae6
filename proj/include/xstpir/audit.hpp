#pragma once

// Security, privacy and correctness audits by enumerating every random
// choice of a small scheme instance and comparing the induced outcome
// distributions exactly. Independence is tested as "the distribution is the
// same for every conditioning value", measured by total variation distance.
//
// Past the enumeration cap the audits can fall back to seeded sampling; such
// reports are flagged non-exhaustive and pass when the empirical distance
// stays under sqrt(distinct outcomes / samples).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xstpir/capacity.hpp"
#include "xstpir/rng.hpp"
#include "xstpir/scheme.hpp"

namespace xstpir::audit {

enum class Property { XSecurity, TPrivacy, SymSecurity, Correctness };

std::string property_name(Property p);
// Accepts security, privacy, sym (or sym-security) and correctness.
Property parse_property(const std::string& s);

using Table = std::map<Symbols, std::uint64_t>;

// Half the L1 distance between the normalized tables.
Fraction tv_distance(const Table& a, const Table& b);

// All size-s subsets of {1..n} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t s);

struct AuditOptions {
  // Coalition size; defaults to X for security and T for privacy.
  std::optional<std::size_t> subset_size;
  std::uint64_t cap = std::uint64_t{1} << 24;
  // Without this, exceeding the cap throws EnumerationCapExceeded.
  bool allow_sampling = true;
  std::uint64_t trials = 4096;
  std::uint64_t seed = 1;
};

struct AuditReport {
  Property property = Property::Correctness;
  std::size_t subset_size = 0;
  std::uint64_t subsets_checked = 0;
  Fraction max_tv{0};
  bool pass = false;
  bool exhaustive = true;
  std::uint64_t outcomes = 0;   // evaluations performed
  std::uint64_t failures = 0;   // correctness only
  double tolerance = 0.0;       // sampled mode only
  std::string detail;
};

// Points one subset (or, for sym-security and correctness, the whole audit)
// must enumerate; nullopt past 2^62.
std::optional<std::uint64_t> enumeration_size(const sim::Scheme& scheme, Property property);

AuditReport audit_security(const sim::Scheme& scheme, const AuditOptions& opts = {});
AuditReport audit_privacy(const sim::Scheme& scheme, const AuditOptions& opts = {});
AuditReport audit_sym_security(const sim::Scheme& scheme, const AuditOptions& opts = {});
AuditReport audit_correctness(const sim::Scheme& scheme, const AuditOptions& opts = {});

AuditReport run_audit(const sim::Scheme& scheme, Property property, const AuditOptions& opts = {});

// "key value" lines, one per report field.
std::string format_report(const AuditReport& report, const sim::SchemeShape& shape);

}  // namespace xstpir::audit
