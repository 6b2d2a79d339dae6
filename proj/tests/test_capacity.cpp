#include <doctest.h>

#include "oracles.hpp"
#include "xstpir/capacity.hpp"
#include "xstpir/error.hpp"

using namespace xstpir;
using oracle::frac;

namespace {

Rate r(long long a, long long b) { return Rate(frac(a, b)); }

}  // namespace

TEST_CASE("Rate stays in lowest terms and inside [0, 1]") {
  const Rate a(BigInt(6), BigInt(8));
  CHECK(a.numerator() == 3);
  CHECK(a.denominator() == 4);
  CHECK(a.to_string() == "3/4");
  CHECK_THROWS(Rate(BigInt(5), BigInt(4)));
  CHECK_THROWS(Rate(BigInt(-1), BigInt(4)));
  CHECK_THROWS(Rate(BigInt(1), BigInt(0)));
}

TEST_CASE("golden capacity values") {
  CHECK(c_pir(2, 2) == r(2, 3));
  CHECK(c_pir(9, 1) == r(1, 1));
  CHECK(c_pir(2, 3) == r(4, 7));
  CHECK(c_tpir(2, 2, 2) == r(1, 2));
  CHECK(c_tpir(2, 2, 1) == r(2, 3));
  CHECK(c_tpir(4, 2, 2) == r(2, 3));
  CHECK(xstpir_upper_bound(3, 2, 1, 1) == r(4, 9));
  CHECK(xstpir_upper_bound(2, 3, 1, 1) == r(1, 6));
  CHECK(xstpir_asymptotic(5, 1, 1) == r(3, 5));
  CHECK(xstpir_asymptotic(4, 2, 1) == r(1, 4));
  CHECK(xstpir_asymptotic(5, 1, 2) == r(2, 5));
  CHECK(xstpir_asymptotic(7, 2, 2) == r(3, 7));
  CHECK(xstpir_asymptotic(3, 1, 2) == r(0, 1));
  CHECK(c_n3(1) == r(2, 3));
  CHECK(c_n3(2) == r(4, 9));
  CHECK(finite_k_rate(3, 1, 1, 2, 2, 1) == r(4, 9));
  CHECK(finite_k_rate(3, 1, 1, 1, 4, 1) == r(4, 9));
  CHECK(mds_pir_asym(4, 2) == r(1, 4));
  CHECK(mds_pir_rate(7, 1, 2) == r(1, 2));
  CHECK_THROWS(mds_pir_rate(4, 2, 4));
  CHECK_THROWS(mds_pir_asym(4, 5));
}

TEST_CASE("formulas agree with independent closed forms") {
  for (std::uint64_t n = 1; n <= 10; ++n) {
    for (std::uint64_t k = 1; k <= 10; ++k) {
      REQUIRE(c_pir(n, k).value() == oracle::c_pir(n, k));
      for (std::uint64_t t = 1; t <= 10; ++t) REQUIRE(c_tpir(n, k, t).value() == oracle::c_tpir(n, k, t));
      for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t t = 1; t <= 10; ++t) {
          REQUIRE(xstpir_upper_bound(n, k, x, t).value() == oracle::upper_bound(n, k, x, t));
        }
      }
    }
  }
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
    for (std::uint64_t k = 1; k <= 6; ++k) {
      for (std::uint64_t l = 1; l <= 3; ++l) {
        REQUIRE(finite_k_rate(6, 2, 1, k, q, l).value() == oracle::finite_k(6, 2, 1, k, q, l));
      }
    }
  }
  CHECK(xstpir_upper_bound(5, 3, 0, 2) == c_tpir(5, 3, 2));
}

TEST_CASE("binary three-server rate is tight for K <= 20") {
  for (std::uint64_t k = 1; k <= 20; ++k) {
    REQUIRE(c_n3(k) == xstpir_upper_bound(3, k, 1, 1));
    REQUIRE(finite_k_rate(3, 1, 1, k, 2, 1) == c_n3(k));
    // (1/3)(1 - 2^-K)^-1
    REQUIRE(c_n3(k).value() == Fraction(oracle::ipow(2, k), 3 * (oracle::ipow(2, k) - 1)));
  }
  CHECK(c_n3(60) > xstpir_asymptotic(3, 1, 1));
  CHECK(c_n3(60).to_double() == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("upper bound is monotone and dominates the asymptotic rate") {
  for (std::uint64_t n = 1; n <= 10; ++n) {
    for (std::uint64_t x = 0; x < n; ++x) {
      for (std::uint64_t t = 1; t <= 10; ++t) {
        for (std::uint64_t k = 1; k <= 10; ++k) {
          const Rate u = xstpir_upper_bound(n, k, x, t);
          REQUIRE(u >= xstpir_asymptotic(n, x, t));
          REQUIRE(xstpir_upper_bound(n, k + 1, x, t) <= u);
          REQUIRE(xstpir_upper_bound(n, k, x, t + 1) <= u);
          if (x + 1 < n) REQUIRE(xstpir_upper_bound(n, k, x + 1, t) <= u);
        }
      }
    }
  }
}

TEST_CASE("finite-K rate approaches the asymptotic rate from above") {
  const Rate a = xstpir_asymptotic(7, 2, 2);
  Rate prev = finite_k_rate(7, 2, 2, 1, 2, 3);
  for (std::uint64_t q : {3ull, 5ull, 11ull, 101ull, 65537ull}) {
    const Rate cur = finite_k_rate(7, 2, 2, 1, q, 3);
    CHECK(cur < prev);
    CHECK(cur > a);
    prev = cur;
  }
}

TEST_CASE("MDS-PIR stays below the square-root bound and 1 - 2/N") {
  for (std::uint64_t n = 3; n <= 100; ++n) {
    const auto [m, best] = best_mds_pir_asym(n);
    REQUIRE(m >= 2);
    REQUIRE(m < n);
    for (std::uint64_t mm = 2; mm < n; ++mm) REQUIRE(mds_pir_asym(n, mm) <= best);
    REQUIRE(at_most_sqrt_bound(best.value(), n));
    const Fraction line(BigInt(n - 2), BigInt(n));
    REQUIRE(sqrt_bound_below(line, n));
    REQUIRE(best.value() < line);
    // Independent float check of the middle term.
    REQUIRE(best.to_double() <= sqrt_bound(n) + 1e-12);
    REQUIRE(sqrt_bound(n) < 1.0 - 2.0 / static_cast<double>(n));
  }
  CHECK(sqrt_bound(4) == doctest::Approx(0.25));
  CHECK(at_most_sqrt_bound(frac(1, 4), 4));
  CHECK_FALSE(at_most_sqrt_bound(frac(26, 100), 4));
  CHECK_FALSE(sqrt_bound_below(frac(1, 4), 4));
  CHECK(xstpir_asymptotic(4, 1, 1) == r(1, 2));
  CHECK(xstpir_asymptotic(4, 1, 1) > mds_pir_asym(4, 2));
}
