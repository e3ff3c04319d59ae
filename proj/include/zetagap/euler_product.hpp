#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/expint.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "zetagap/combinatorics.hpp"
#include "zetagap/numeric.hpp"

namespace zetagap {

struct EulerProductResult {
  long r = 0;
  Real value;
  long prime_cutoff = 0;
  long prime_count = 0;
  Real tail_estimate;  // log-scale size of the omitted primes' contribution
};

inline std::vector<std::uint32_t> primes_upto(long n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (long p = 2; p <= n; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    out.push_back(static_cast<std::uint32_t>(p));
    for (long q = p * p; q <= n; q += p) composite[static_cast<std::size_t>(q)] = true;
  }
  return out;
}

/// log of the local factor (1−x)^{r²} Σ_m C(r+m−1, m)² x^m at x = 1/p, using
/// Σ_m C(r+m−1, m)² x^m = (Σ_{k<r} C(r−1, k)² x^k) / (1−x)^{2r−1}.
inline Real log_local_factor(long r, std::uint32_t p) {
  using boost::multiprecision::log1p;
  const Real x = Real(1) / p;
  Real poly = 0;  // Σ_{k≥1} C(r−1,k)² x^k
  for (long k = r - 1; k >= 1; --k) {
    const Integer b = binomial(r - 1, k);
    poly = (poly + to_real(Integer(b * b))) * x;
  }
  return (r - 1) * (r - 1) * log1p(-x) + log1p(poly);
}

/// a_r = Π_p (1−1/p)^{r²} Σ_m (Γ(r+m)/(Γ(r) m!))² p^{−m} over p ≤ cutoff, with
/// the omitted primes folded in through their leading p^{−2} term:
/// Σ_{p>N} p^{−2} ≈ E1(log N).
inline EulerProductResult a_const(long r, long cutoff, unsigned precision = 50) {
  if (r < 1) throw std::invalid_argument("a_const requires r >= 1");
  if (cutoff < 100) throw std::invalid_argument("a_const requires cutoff >= 100");
  if (cutoff > 1'000'000'000) throw std::invalid_argument("a_const cutoff too large for the sieve");
  PrecisionScope scope(precision);

  EulerProductResult out;
  out.r = r;
  out.prime_cutoff = cutoff;
  Real log_sum = 0;
  if (r > 1) {
    const auto primes = primes_upto(cutoff);
    out.prime_count = static_cast<long>(primes.size());
    for (auto p : primes) log_sum += log_local_factor(r, p);
    const long double e1 = boost::math::expint(1, std::log(static_cast<long double>(cutoff)));
    const Real tail = Real(r * r * (r - 1) * (r - 1)) / 4 * Real(e1);
    log_sum -= tail;
    out.tail_estimate = tail;
  } else {
    out.prime_count = static_cast<long>(primes_upto(cutoff).size());
    out.tail_estimate = 0;
  }
  out.value = boost::multiprecision::exp(log_sum);
  return out;
}

}  // namespace zetagap
