#include <doctest.h>

#include "oracles.hpp"
#include "xstpir/audit.hpp"
#include "xstpir/binary_scheme.hpp"
#include "xstpir/error.hpp"

using namespace xstpir;
using namespace xstpir::audit;
using oracle::frac;
using oracle::ipow;

namespace {

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t upow(std::uint64_t b, std::uint64_t e) { return static_cast<std::uint64_t>(ipow(b, e)); }

void expect_pass(const AuditReport& r) {
  INFO("property " << property_name(r.property) << " max_tv " << to_string(r.max_tv));
  CHECK(r.pass);
  CHECK(r.exhaustive);
  CHECK(r.max_tv == Fraction(0));
}

}  // namespace

TEST_CASE("tv_distance") {
  const Table a{{{0}, 1}, {{1}, 1}};
  const Table b{{{0}, 2}};
  const Table c{{{0}, 3}, {{1}, 3}};
  CHECK(tv_distance(a, b) == frac(1, 2));
  CHECK(tv_distance(a, c) == Fraction(0));
  CHECK(tv_distance(b, Table{{{1}, 5}}) == Fraction(1));
  // |1/4 - 1/2| + |3/4 - 1/6| + |0 - 1/3|, halved.
  const Table d{{{0}, 1}, {{1}, 3}};
  const Table e{{{0}, 3}, {{1}, 1}, {{2}, 2}};
  CHECK(tv_distance(d, e) == (frac(1, 4) + frac(7, 12) + frac(1, 3)) / 2);
  CHECK(tv_distance(d, e) == tv_distance(e, d));
}

TEST_CASE("subsets and property names") {
  CHECK(subsets(4, 2).size() == 6);
  CHECK(subsets(4, 2).front() == std::vector<std::size_t>{1, 2});
  CHECK(subsets(4, 2).back() == std::vector<std::size_t>{3, 4});
  CHECK(subsets(3, 3).size() == 1);
  CHECK(property_name(Property::XSecurity) == "X_SECURITY");
  CHECK(parse_property("privacy") == Property::TPrivacy);
  CHECK(parse_property("sym") == Property::SymSecurity);
  CHECK_THROWS_AS(parse_property("speed"), UsageError);
}

TEST_CASE("CSA N=3 X=T=1 p=5 passes every audit with the expected enumeration counts") {
  for (std::uint64_t k : {1u, 2u}) {
    const auto s = sim::make_scheme("csa", 3, k, 1, 1, 5);
    const std::uint64_t q = 5, l = 1, x = 1, t = 1;
    const auto messages = upow(q, k * l), storage = upow(q, l * k * x), query = upow(q, l * k * t);

    const auto sec = audit_security(*s);
    expect_pass(sec);
    CHECK(sec.subsets_checked == 3);
    CHECK(sec.outcomes == 3 * messages * storage);
    CHECK(enumeration_size(*s, Property::XSecurity) == messages * storage);

    const auto priv = audit_privacy(*s);
    expect_pass(priv);
    CHECK(priv.outcomes == 3 * k * messages * storage * query);

    const auto sym = audit_sym_security(*s);
    expect_pass(sym);
    CHECK(sym.outcomes == k * messages * storage * query);

    const auto cor = audit_correctness(*s);
    expect_pass(cor);
    CHECK(cor.failures == 0);
    CHECK(cor.outcomes == k * messages * storage * query);
  }
}

TEST_CASE("further tiny instances pass") {
  // CSA N=4 X=2 T=1 with X-subsets of size 2.
  for (std::size_t k : {1u, 2u}) {
    const auto s = sim::make_scheme("csa", 4, k, 2, 1);
    const auto sec = audit_security(*s);
    expect_pass(sec);
    CHECK(sec.subsets_checked == choose(4, 2));
    CHECK(sec.outcomes == choose(4, 2) * upow(5, k) * upow(5, 2 * k));
    expect_pass(audit_privacy(*s));
    expect_pass(audit_sym_security(*s));
    expect_pass(audit_correctness(*s));
  }
  for (std::size_t k : {2u, 3u}) {
    const auto s = sim::make_binary(k);
    const auto sec = audit_security(*s);
    expect_pass(sec);
    CHECK(sec.outcomes == 3 * upow(2, k) * upow(2, k));
    expect_pass(audit_privacy(*s));
    expect_pass(audit_sym_security(*s));
    expect_pass(audit_correctness(*s));
  }
  {
    const auto s = sim::make_scheme("sym_xspir", 2, 2, 1, 1);
    for (auto p : {Property::XSecurity, Property::TPrivacy, Property::SymSecurity, Property::Correctness}) {
      expect_pass(run_audit(*s, p));
    }
  }
  for (std::size_t k : {1u, 2u}) {
    const auto s = sim::make_scheme("download_all", 2, k, 1, 1);
    expect_pass(audit_security(*s));
    expect_pass(audit_privacy(*s));
    expect_pass(audit_correctness(*s));
  }
  // With one message there is nothing else to leak.
  expect_pass(audit_sym_security(*sim::make_scheme("download_all", 2, 1, 1, 1)));
}

TEST_CASE("negative controls fail") {
  const auto csa = sim::make_scheme("csa", 3, 1, 1, 1, 5);

  AuditOptions wide;
  wide.subset_size = 2;
  const auto sec = audit_security(*csa, wide);
  CHECK_FALSE(sec.pass);
  CHECK(sec.max_tv > Fraction(0));

  const auto priv = audit_privacy(*sim::make_scheme("csa", 3, 2, 1, 1, 5), wide);
  CHECK_FALSE(priv.pass);
  CHECK(priv.max_tv > Fraction(0));

  const PrimeField f(5);
  const auto dup = sim::make_csa(csa::CsaParams::unchecked(3, 1, 1, 1, f, {f(0), f(0), f(1)}));
  const auto cor = audit_correctness(*dup);
  CHECK_FALSE(cor.pass);
  CHECK(cor.failures > 0);
  CHECK(cor.detail.find("decode failed") != std::string::npos);

  const auto bad_b = sim::make_binary(2, BinMatrix::identity(2));
  const auto bpriv = audit_privacy(*bad_b);
  CHECK_FALSE(bpriv.pass);
  CHECK(bpriv.max_tv > Fraction(0));

  const auto t2 = sim::make_scheme("csa", 4, 2, 1, 2);
  const auto sym = audit_sym_security(*t2);
  CHECK(sym.exhaustive);
  CHECK_FALSE(sym.pass);
  CHECK(sym.max_tv > Fraction(0));
  // The T = 2 instance is still private and secure.
  expect_pass(audit_privacy(*t2));
  expect_pass(audit_security(*t2));
}

TEST_CASE("cap handling and sampled mode") {
  const auto s = sim::make_scheme("csa", 5, 2, 1, 1);
  AuditOptions strict;
  strict.cap = 1000;
  strict.allow_sampling = false;
  CHECK_THROWS_AS(audit_privacy(*s, strict), EnumerationCapExceeded);

  AuditOptions sampled;
  sampled.cap = 1000;
  sampled.trials = 2000;
  const auto r = audit_security(*s, sampled);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.pass);
  CHECK(r.tolerance > 0.0);
  CHECK(to_double(r.max_tv) <= r.tolerance);
  const auto r2 = audit_security(*s, sampled);
  CHECK(r2.max_tv == r.max_tv);  // seeded

  const auto c = audit_correctness(*s, sampled);
  CHECK_FALSE(c.exhaustive);
  CHECK(c.pass);
  CHECK(c.outcomes == 2000);
}

TEST_CASE("report format") {
  const auto s = sim::make_binary(2);
  const auto text = format_report(audit_privacy(*s), s->shape());
  CHECK(text.find("property T_PRIVACY\n") != std::string::npos);
  CHECK(text.find("max_tv 0/1\n") != std::string::npos);
  CHECK(text.size() >= 12);
  CHECK(text.substr(text.size() - 12) == "result PASS\n");
}
