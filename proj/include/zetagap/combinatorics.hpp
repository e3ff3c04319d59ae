#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "zetagap/numeric.hpp"

namespace zetagap {

/// Memoized n! table. Grows under a lock; entries are stable once created, so
/// references stay valid while other threads extend the table.
class FactorialTable {
 public:
  const Integer& operator()(long n) const {
    if (n < 0) throw std::invalid_argument("factorial of negative number");
    const auto idx = static_cast<std::size_t>(n);
    {
      std::shared_lock lock(mutex_);
      if (idx < table_.size()) return table_[idx];
    }
    std::unique_lock lock(mutex_);
    while (table_.size() <= idx) table_.push_back(table_.back() * static_cast<unsigned long>(table_.size()));
    return table_[idx];
  }

  /// Builds the table up to n! ahead of parallel phases.
  void reserve(long n) const { (void)(*this)(n); }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  mutable std::deque<Integer> table_{Integer(1)};
};

inline const FactorialTable& factorials() {
  static const FactorialTable table;
  return table;
}

inline const Integer& factorial(long n) { return factorials()(n); }

/// C(n, k); zero outside 0 ≤ k ≤ n.
inline Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

/// B(m, n) = (m−1)!(n−1)!/(m+n−1)! for positive integers.
inline Rational beta_int(long m, long n) {
  if (m < 1 || n < 1)
    throw std::domain_error("beta_int requires positive arguments, got (" + std::to_string(m) + ", " +
                            std::to_string(n) + ")");
  return make_rational(factorial(m - 1) * factorial(n - 1), factorial(m + n - 1));
}

/// ∫_0^1 ∫_0^{1−x} x^a y^b dy dx = a! b!/(a+b+2)!.
inline Rational simplex_monomial(long a, long b) {
  if (a < 0 || b < 0) throw std::invalid_argument("simplex_monomial requires nonnegative exponents");
  return make_rational(factorial(a) * factorial(b), factorial(a + b + 2));
}

inline int delta(long j) {
  if (j < 0) throw std::invalid_argument("delta requires j >= 0");
  return j == 0 ? 1 : -1;
}

/// Ω_r(i″, n) for n ≥ −2. Vanishes for n > r − 2.
inline Integer omega(long r, int i2pp, long n) {
  if (r < 1) throw std::invalid_argument("omega requires r >= 1");
  if (n < -2) throw std::invalid_argument("omega requires n >= -2");
  auto sign = [](long e) { return (e % 2 == 0) ? 1 : -1; };
  switch (i2pp) {
    case 0:
      return sign(n + 1) * binomial(r, n + 2);
    case 1: {
      Integer s = 0;
      for (long jp = -2; jp <= std::min(r - 2, n); ++jp) s += sign(jp + 1) * binomial(r, jp + 2) * delta(n - jp);
      return s;
    }
    case 2: {
      Integer s = 0;
      for (long jp = -2; jp <= std::min(r - 2, n); ++jp) {
        const long m = n - jp;
        long conv = 0;
        for (long j1 = 0; j1 <= m; ++j1) conv += delta(j1) * delta(m - j1);
        s += sign(jp + 1) * binomial(r, jp + 2) * conv;
      }
      return s;
    }
    default:
      throw std::invalid_argument("omega requires i2pp in {0,1,2}");
  }
}

/// b_r(i′₁, i′₂) = Σ_τ C(i′₁,τ) C(i′₂,τ) τ! r^{i′₁+i′₂−2τ}.
inline Integer b_const(long r, long i1p, long i2p) {
  if (r < 1) throw std::invalid_argument("b_const requires r >= 1");
  if (i1p < 0 || i2p < 0) throw std::invalid_argument("b_const requires nonnegative indices");
  Integer s = 0;
  for (long tau = 0; tau <= std::min(i1p, i2p); ++tau) {
    Integer rp;
    mpz_ui_pow_ui(rp.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(i1p + i2p - 2 * tau));
    s += binomial(i1p, tau) * binomial(i2p, tau) * factorial(tau) * rp;
  }
  return s;
}

/// Split i = i′ + i″ of a polynomial index; only totals 0 and 2 occur.
struct IndexPair {
  int prime = 0;
  int dprime = 0;

  constexpr int total() const { return prime + dprime; }
  constexpr bool valid() const { return prime >= 0 && dprime >= 0 && (total() == 0 || total() == 2); }
  friend constexpr bool operator==(IndexPair, IndexPair) = default;
};

/// The four splits (0,0), (2,0), (1,1), (0,2).
inline constexpr std::array<IndexPair, 4> kIndexSplits{{{0, 0}, {2, 0}, {1, 1}, {0, 2}}};

/// c_r(i′₁, i′₂, i″₁, i″₂) with i₁ = i′₁ + i″₁ and i₂ = i′₂ + i″₂.
inline Rational c_const(long r, int i1p, int i2p, int i1pp, int i2pp) {
  const IndexPair s1{i1p, i1pp}, s2{i2p, i2pp};
  if (r < 1) throw std::invalid_argument("c_const requires r >= 1");
  if (!s1.valid() || !s2.valid()) throw std::invalid_argument("c_const: index split must sum to 0 or 2");
  const Integer num = binomial(s1.total(), i1p) * binomial(s2.total(), i2p) * b_const(r, i1p, i2p);
  const Integer den = factorial(r * r + i1p + i2p - 1) * factorial(r + i1pp - 1) * factorial(r + i2pp - 1);
  return make_rational(num, den);
}

inline Rational c_const(long r, IndexPair s1, IndexPair s2) { return c_const(r, s1.prime, s2.prime, s1.dprime, s2.dprime); }

}  // namespace zetagap
