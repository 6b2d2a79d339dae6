#include "xstpir/capacity.hpp"

#include <cmath>
#include <sstream>

#include "xstpir/error.hpp"

namespace xstpir {

namespace {

Fraction frac(std::uint64_t num, std::uint64_t den = 1) {
  return Fraction(BigInt(num), BigInt(den));
}

// 1 + r + r^2 + ... + r^{terms-1}
Fraction geometric_sum(const Fraction& r, std::uint64_t terms) {
  Fraction sum(0);
  Fraction power(1);
  for (std::uint64_t i = 0; i < terms; ++i) {
    sum += power;
    power *= r;
  }
  return sum;
}

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(what);
}

}  // namespace

std::string to_string(const Fraction& f) {
  std::ostringstream os;
  os << f.numerator() << '/' << f.denominator();
  return os.str();
}

double to_double(const Fraction& f) {
  return f.numerator().convert_to<double>() / f.denominator().convert_to<double>();
}

Rate::Rate(BigInt num, BigInt den) {
  if (den == 0) throw UsageError("rate with zero denominator");
  value_ = Fraction(std::move(num), std::move(den));
  if (value_ < Fraction(0) || value_ > Fraction(1)) throw UsageError("rate outside [0, 1]: " + xstpir::to_string(value_));
}

Rate::Rate(const Fraction& f) : Rate(f.numerator(), f.denominator()) {}

Rate c_pir(std::uint64_t n, std::uint64_t k) {
  require(n >= 1 && k >= 1, "c_pir requires N >= 1 and K >= 1");
  return Rate(1 / geometric_sum(frac(1, n), k));
}

Rate c_tpir(std::uint64_t n, std::uint64_t k, std::uint64_t t) {
  require(n >= 1 && k >= 1 && t >= 1, "c_tpir requires N, K, T >= 1");
  if (t >= n) return Rate(1, k);
  return Rate(1 / geometric_sum(frac(t, n), k));
}

Rate xstpir_upper_bound(std::uint64_t n, std::uint64_t k, std::uint64_t x, std::uint64_t t) {
  require(x < n, "xstpir_upper_bound requires X < N");
  return Rate(frac(n - x, n) * c_tpir(n - x, k, t).value());
}

Rate xstpir_asymptotic(std::uint64_t n, std::uint64_t x, std::uint64_t t) {
  require(x < n && t >= 1, "xstpir_asymptotic requires X < N and T >= 1");
  if (n <= x + t) return Rate(0, 1);
  return Rate(frac(n - x - t, n));
}

Rate c_n3(std::uint64_t k) {
  require(k >= 1, "c_n3 requires K >= 1");
  return Rate(frac(2, 3) / geometric_sum(frac(1, 2), k));
}

Rate finite_k_rate(std::uint64_t n, std::uint64_t x, std::uint64_t t, std::uint64_t k,
                   std::uint64_t q, std::uint64_t l) {
  require(n > x + t, "finite_k_rate requires N > X + T");
  require(q >= 2 && k >= 1 && l >= 1, "finite_k_rate requires q >= 2 and K, L >= 1");
  const BigInt zero_query_odds = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(k * l));
  const Fraction nonzero(zero_query_odds - 1, zero_query_odds);
  return Rate(frac(n - x - t, n) / nonzero);
}

Rate mds_pir_rate(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  require(k >= 1, "mds_pir_rate requires K >= 1");
  require(m >= 2, "mds_pir_rate requires M >= 2");
  require(m < n, "mds_pir_rate requires M < N (geometric ratio M/N must be below 1)");
  return Rate(frac(m - 1, m) / geometric_sum(frac(m, n), k));
}

Rate mds_pir_asym(std::uint64_t n, std::uint64_t m) {
  require(m >= 2, "mds_pir_asym requires M >= 2");
  require(m < n, "mds_pir_asym requires M < N (geometric ratio M/N must be below 1)");
  return Rate(frac(m - 1, m) * (1 - frac(m, n)));
}

std::pair<std::uint64_t, Rate> best_mds_pir_asym(std::uint64_t n) {
  require(n >= 3, "best_mds_pir_asym requires N >= 3");
  std::pair<std::uint64_t, Rate> best{2, mds_pir_asym(n, 2)};
  for (std::uint64_t m = 3; m < n; ++m) {
    Rate r = mds_pir_asym(n, m);
    if (r > best.second) best = {m, r};
  }
  return best;
}

double sqrt_bound(std::uint64_t n) {
  const double s = 1.0 - 1.0 / std::sqrt(static_cast<double>(n));
  return s * s;
}

// (1 - 1/sqrt(N))^2 = 1 + 1/N - 2/sqrt(N). Both comparisons reduce to
// comparing d = 1 + 1/N - v with 2/sqrt(N) >= 0, i.e. d^2 with 4/N.
bool at_most_sqrt_bound(const Fraction& a, std::uint64_t n) {
  require(n >= 1, "sqrt bound requires N >= 1");
  const Fraction d = 1 + frac(1, n) - a;
  return d >= Fraction(0) && d * d >= frac(4, n);
}

bool sqrt_bound_below(const Fraction& b, std::uint64_t n) {
  require(n >= 1, "sqrt bound requires N >= 1");
  const Fraction d = 1 + frac(1, n) - b;
  return d < Fraction(0) || d * d < frac(4, n);
}

}  // namespace xstpir
