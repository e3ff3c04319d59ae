#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "zetagap/combinatorics.hpp"
#include "zetagap/numeric.hpp"
#include "zetagap/polynomial.hpp"

namespace zetagap {

/// Parameters of one gap-ratio evaluation: a(n) = d_r(n) P0(·) + d_r*(n) P2(·).
struct GapConfig {
  long r = 2;
  Rational eta{1, 2};
  Polynomial p0;
  Polynomial p2;
  long truncation = 30;    // J: terms j = 0..J of the series are summed exactly
  unsigned precision = 50; // decimal digits for the floating phase

  /// P_i for i ∈ {0, 2}. P_1 is read as P_0.
  const Polynomial& poly(int i) const {
    switch (i) {
      case 0:
      case 1:
        return p0;
      case 2:
        return p2;
      default:
        throw std::invalid_argument("polynomial index must be 0 or 2");
    }
  }

  void validate() const {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (sgn(eta) <= 0 || eta > Rational(1, 2)) throw std::invalid_argument("eta must lie in (0, 1/2]");
    if (truncation < 1) throw std::invalid_argument("truncation J must be >= 1");
    if (precision < 10) throw std::invalid_argument("precision must be >= 10 digits");
  }

  friend bool operator==(const GapConfig&, const GapConfig&) = default;
};

using IndexTuple4 = std::array<long, 4>;
using IndexTuple5 = std::array<long, 5>;

/// (i1, i2) selecting the polynomial pair P_{i1}, P_{i2}.
using PolyPair = std::pair<int, int>;
inline constexpr std::array<PolyPair, 4> kPolyPairs{{{0, 0}, {0, 2}, {2, 0}, {2, 2}}};

namespace detail {

template <class Key, class Value>
class MemoCache {
 public:
  template <class Fn>
  const Value& get_or_compute(const Key& key, Fn&& fn) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    Value v = fn();
    std::lock_guard lock(mutex_);
    return map_.try_emplace(key, std::move(v)).first->second;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return map_.size();
  }

 private:
  mutable std::mutex mutex_;
  mutable std::map<Key, Value> map_;
};

/// Polynomial with integer numerators over one common denominator.
struct ScaledPoly {
  std::vector<Integer> num;  // num[k] / den is the coefficient of x^k
  Integer den{1};
};

inline ScaledPoly scale(const Polynomial& p) {
  ScaledPoly s;
  for (const auto& c : p.coeffs()) mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), c.get_den_mpz_t());
  s.num.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    Integer k;
    mpz_divexact(k.get_mpz_t(), s.den.get_mpz_t(), c.get_den_mpz_t());
    s.num.push_back(c.get_num() * k);
  }
  return s;
}

inline std::vector<Integer> convolve(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Integer> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return out;
}

/// Correlation table for the k-family: V(a) = Σ_b B_b b! Π(a+b+1) / (a+b+1)!
/// with Π(s) = ∫_0^1 P(w) w^s dw. Covers a ∈ [lo, lo + size).
struct CorrelationTable {
  long lo = 0;
  std::vector<Integer> num;
  Integer den{1};
};

}  // namespace detail

/// Exact evaluator of the l, k, h integral families and their aggregates for a
/// fixed configuration. Results are memoized; every method is safe to call
/// concurrently.
class MomentEngine {
 public:
  explicit MomentEngine(GapConfig cfg) : cfg_(std::move(cfg)), inv_eta_(1 / cfg_.eta) {
    cfg_.validate();
    for (int i : {0, 2}) scaled_p_[i == 0 ? 0 : 1] = detail::scale(cfg_.poly(i));
  }

  const GapConfig& config() const { return cfg_; }

  /// Q_{i,u}.
  const Polynomial& q_poly(int i, long u) const {
    if (u < 0) throw std::invalid_argument("theta_average exponent must be >= 0");
    return q_cache_.get_or_compute({i, u}, [&] { return theta_average(cfg_.poly(i), static_cast<unsigned>(u)); });
  }

  /// l_{i1,i2}(n) = ∫_0^1 x^{r²+n1+n2−1} (1−x)^{2r+n3+n4} Q_{i1,r+n3−1} Q_{i2,r+n4−1} dx.
  Rational l_int(int i1, int i2, const IndexTuple4& n) const {
    const long r = cfg_.r;
    const long a = r * r + n[0] + n[1] - 1, b = 2 * r + n[2] + n[3];
    const long u1 = r + n[2] - 1, u2 = r + n[3] - 1;
    if (a < 0 || b < 0 || u1 < 0 || u2 < 0) throw std::invalid_argument("l_int: index tuple out of range");
    check_pair(i1, i2);
    if (cfg_.poly(i1).is_zero() || cfg_.poly(i2).is_zero()) return 0;
    return l_cache_.get_or_compute({i1, i2, n[0], n[1], n[2], n[3]}, [&]() -> Rational {
      const auto& q1 = q_scaled(i1, u1);
      const auto& q2 = q_scaled(i2, u2);
      const std::vector<Integer> prod = detail::convolve(q1.num, q2.num);
      const long top = static_cast<long>(prod.size()) - 1;
      // ∫ x^{a+m}(1−x)^b = (a+m)! b! / (a+b+m+1)!, over the common denominator (a+b+top+1)!
      Integer total = 0, tail = 1, term;
      for (long m = top; m >= 0; --m) {
        if (sgn(prod[static_cast<std::size_t>(m)]) != 0) {
          term = prod[static_cast<std::size_t>(m)] * factorial(a + m);
          mpz_addmul(total.get_mpz_t(), term.get_mpz_t(), tail.get_mpz_t());
        }
        tail *= static_cast<unsigned long>(a + b + m + 1);
      }
      return make_rational(total * factorial(b), factorial(a + b + top + 1) * q1.den * q2.den);
    });
  }

  /// k_{i1,i2}(n) = ∬_{x,y≥0, x+y≤1} x^{r+n1−1} (η⁻¹−x)^{n2} y^{r²+n3−1} (1−y)^{r+n4}
  ///                 P_{i1}(x+y) Q_{i2,r+n4−1}(y) dy dx.
  /// Integrated along w = x + y: ∫_0^w x^a (w−x)^b dx = a! b! w^{a+b+1}/(a+b+1)!,
  /// then ∫_0^1 P(w) w^s dw.
  Rational k_int(int i1, int i2, const IndexTuple4& n) const {
    const long r = cfg_.r;
    const long a0 = r + n[0] - 1, n2 = n[1], b0 = r * r + n[2] - 1, m4 = r + n[3], u = r + n[3] - 1;
    if (a0 < 0 || n2 < 0 || b0 < 0 || m4 < 0 || u < 0) throw std::invalid_argument("k_int: index tuple out of range");
    check_pair(i1, i2);
    if (cfg_.poly(i1).is_zero() || cfg_.poly(i2).is_zero()) return 0;
    return k_cache_.get_or_compute({i1, i2, n[0], n[1], n[2], n[3]}, [&]() -> Rational {
      const Integer& eta_num = inv_eta_.get_num();
      const Integer& eta_den = inv_eta_.get_den();
      Rational result = 0;
      Integer block_sum = 0, coef, num_pow, den_pow = 1;
      const detail::CorrelationTable* table = nullptr;
      auto flush = [&] {
        if (table != nullptr) result += make_rational(block_sum, table->den);
        block_sum = 0;
      };
      for (long t = 0; t <= n2; ++t) {
        const long a = a0 + t;
        if (table == nullptr || a >= table->lo + static_cast<long>(table->num.size())) {
          flush();
          table = &correlation(i1, i2, n[2], n[3], a);
        }
        mpz_pow_ui(num_pow.get_mpz_t(), eta_num.get_mpz_t(), static_cast<unsigned long>(n2 - t));
        coef = binomial(n2, t) * num_pow * den_pow * factorial(a);
        if (t % 2) coef = -coef;
        mpz_addmul(block_sum.get_mpz_t(), coef.get_mpz_t(), table->num[static_cast<std::size_t>(a - table->lo)].get_mpz_t());
        den_pow *= eta_den;
      }
      flush();
      Integer eta_den_pow;
      mpz_pow_ui(eta_den_pow.get_mpz_t(), eta_den.get_mpz_t(), static_cast<unsigned long>(n2));
      return result / eta_den_pow;
    });
  }

  /// h_{i1,i2}(n1..n5): three Beta-weighted l values. Requires n3 ≥ 1.
  Rational h_int(int i1, int i2, const IndexTuple5& n) const {
    const long r = cfg_.r;
    if (n[2] < 1) throw std::invalid_argument("h_int requires n3 >= 1");
    if (n[4] < 0) throw std::invalid_argument("h_int requires n5 >= 0");
    check_pair(i1, i2);
    if (cfg_.poly(i1).is_zero() || cfg_.poly(i2).is_zero()) return 0;
    const Rational b_lo = beta_int(n[4] + 1, r + n[3] - 1);
    const Rational b_hi = beta_int(n[4] + 1, r + n[3]);
    const long shifted = n[3] + n[4];
    return -inv_eta_ * b_lo * l_int(i1, i2, {n[0], n[1], n[2] - 1, shifted}) +
           b_lo * l_int(i1, i2, {n[0], n[1], n[2], shifted}) +
           b_hi * l_int(i1, i2, {n[0], n[1], n[2] - 1, shifted + 1});
  }

  Rational hat_l(IndexPair s1, IndexPair s2) const {
    if (!s1.valid() || !s2.valid()) throw std::invalid_argument("hat_l: invalid index split");
    const int i1 = s1.total(), i2 = s2.total();
    return inv_eta_ * l_int(i1, i2, {s1.prime, s2.prime, s1.dprime, s2.dprime}) -
           l_int(i1, i2, {s1.prime, s2.prime, s1.dprime + 1, s2.dprime}) -
           l_int(i1, i2, {s1.prime, s2.prime, s1.dprime, s2.dprime + 1});
  }

  /// ĥ(r, j, η). With `only`, restricted to the splits whose totals are that pair.
  Rational hat_h(long j, std::optional<PolyPair> only = std::nullopt) const {
    if (j < 0) throw std::invalid_argument("hat_h requires j >= 0");
    const long r = cfg_.r;
    Rational sum = 0;
    for_each_split(only, [&](IndexPair s1, IndexPair s2) {
      const int i1 = s1.total(), i2 = s2.total();
      Rational t = r * h_int(i1, i2, {s1.prime, s2.prime, s1.dprime + 1, s2.dprime + 1, j});
      // zero multiplier when i2'' = 0; that h would need B(·, r−1)
      if (s2.dprime != 0)
        t += s2.dprime * (r + s2.dprime - 1) * h_int(i1, i2, {s1.prime, s2.prime, s1.dprime + 1, s2.dprime, j + 1});
      sum += c_const(r, s1, s2) * t;
    });
    return sum;
  }

  /// k̂(r, j, η).
  Rational hat_k(long j, std::optional<PolyPair> only = std::nullopt) const {
    if (j < 0) throw std::invalid_argument("hat_k requires j >= 0");
    const long r = cfg_.r;
    Rational sum = 0;
    for_each_split(only, [&](IndexPair s1, IndexPair s2) {
      const int i1 = s1.total(), i2 = s2.total();
      Rational t = 0;
      for (long n = -2; n <= std::min(r - 2, j); ++n) {
        const Integer w = omega(r, s2.dprime, n);
        if (sgn(w) == 0) continue;
        const Rational weight =
            make_rational(w * factorial(r + s2.dprime - 1), factorial(j - n) * factorial(r + s2.dprime + n + 1));
        t += weight * k_int(i1, i2, {s1.dprime, j - n, s1.prime + s2.prime, s2.dprime + n + 2});
      }
      sum += c_const(r, s1, s2) * t;
    });
    return sum;
  }

  /// D/π = Σ c_r · l̂. π is attached only when converting to floating point.
  Rational d_const(std::optional<PolyPair> only = std::nullopt) const {
    Rational sum = 0;
    for_each_split(only, [&](IndexPair s1, IndexPair s2) { sum += c_const(cfg_.r, s1, s2) * hat_l(s1, s2); });
    return sum;
  }

 private:
  static void check_pair(int i1, int i2) {
    auto ok = [](int i) { return i == 0 || i == 2; };
    if (!ok(i1) || !ok(i2)) throw std::invalid_argument("polynomial indices must be 0 or 2");
  }

  template <class Fn>
  void for_each_split(std::optional<PolyPair> only, Fn&& fn) const {
    for (const auto& s1 : kIndexSplits)
      for (const auto& s2 : kIndexSplits) {
        const PolyPair pair{s1.total(), s2.total()};
        if (only && *only != pair) continue;
        if (cfg_.poly(pair.first).is_zero() || cfg_.poly(pair.second).is_zero()) continue;
        fn(s1, s2);
      }
  }

  const detail::ScaledPoly& q_scaled(int i, long u) const {
    return q_scaled_cache_.get_or_compute({i, u}, [&] { return detail::scale(q_poly(i, u)); });
  }

  /// Correlation table block containing `a`.
  const detail::CorrelationTable& correlation(int i1, int i2, long n3, long n4, long a) const {
    constexpr long kBlock = 64;
    const long block = a / kBlock;
    return corr_cache_.get_or_compute({i1, i2, n3, n4, block}, [&] {
      const long r = cfg_.r;
      const long b0 = r * r + n3 - 1, m4 = r + n4;
      // B(y) = y^{b0} (1−y)^{m4} Q_{i2, r+n4−1}(y), scaled
      const auto& q = q_scaled(i2, r + n4 - 1);
      std::vector<Integer> one_minus(static_cast<std::size_t>(m4) + 1);
      for (long t = 0; t <= m4; ++t) one_minus[static_cast<std::size_t>(t)] = (t % 2 ? -1 : 1) * binomial(m4, t);
      const std::vector<Integer> core = detail::convolve(q.num, one_minus);
      const long b_top = b0 + static_cast<long>(core.size()) - 1;

      const auto& p = scaled_p_[i1 == 0 ? 0 : 1];
      const long p_top = static_cast<long>(p.num.size()) - 1;

      detail::CorrelationTable out;
      out.lo = block * kBlock;
      const long s_lo = out.lo + b0 + 1, s_hi = out.lo + kBlock - 1 + b_top + 1;
      const Integer& s_fact = factorial(s_hi);
      const Integer& lcm = lcm_upto(s_hi + p_top + 1);
      // Z(s) = Π(s)/s! scaled by den_p · lcm · s_hi!
      std::vector<Integer> z(static_cast<std::size_t>(s_hi - s_lo + 1));
      Integer ratio, lq;
      for (long s = s_lo; s <= s_hi; ++s) {
        mpz_divexact(ratio.get_mpz_t(), s_fact.get_mpz_t(), factorial(s).get_mpz_t());
        Integer acc = 0;
        for (long d = 0; d <= p_top; ++d) {
          const Integer& pd = p.num[static_cast<std::size_t>(d)];
          if (sgn(pd) == 0) continue;
          mpz_divexact_ui(lq.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(d + s + 1));
          mpz_addmul(acc.get_mpz_t(), pd.get_mpz_t(), lq.get_mpz_t());
        }
        z[static_cast<std::size_t>(s - s_lo)] = acc * ratio;
      }
      std::vector<Integer> bf(core.size());
      for (std::size_t k = 0; k < core.size(); ++k) bf[k] = core[k] * factorial(b0 + static_cast<long>(k));

      out.num.resize(static_cast<std::size_t>(kBlock));
      for (long i = 0; i < kBlock; ++i) {
        Integer& acc = out.num[static_cast<std::size_t>(i)];
        const long a = out.lo + i;
        for (std::size_t k = 0; k < bf.size(); ++k) {
          if (sgn(bf[k]) == 0) continue;
          const long s = a + b0 + static_cast<long>(k) + 1;
          mpz_addmul(acc.get_mpz_t(), bf[k].get_mpz_t(), z[static_cast<std::size_t>(s - s_lo)].get_mpz_t());
        }
      }
      out.den = q.den * p.den * lcm * s_fact;
      return out;
    });
  }

  const Integer& lcm_upto(long n) const {
    return lcm_cache_.get_or_compute(n, [&] {
      Integer l = 1;
      for (long k = 2; k <= n; ++k) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(k));
      return l;
    });
  }

  GapConfig cfg_;
  Rational inv_eta_;
  std::array<detail::ScaledPoly, 2> scaled_p_;
  detail::MemoCache<std::pair<int, long>, Polynomial> q_cache_;
  detail::MemoCache<std::pair<int, long>, detail::ScaledPoly> q_scaled_cache_;
  detail::MemoCache<std::array<long, 6>, Rational> l_cache_;
  detail::MemoCache<std::array<long, 6>, Rational> k_cache_;
  detail::MemoCache<std::array<long, 5>, detail::CorrelationTable> corr_cache_;
  detail::MemoCache<long, Integer> lcm_cache_;
};

/// Reference route for k: full bivariate monomial expansion (P(x+y) via
/// compose_sum) reduced term by term with the simplex formula. Quadratic in the
/// term count; meant for cross-checking small instances.
inline Rational k_int_bivariate(const GapConfig& cfg, int i1, int i2, const IndexTuple4& n) {
  const long r = cfg.r;
  const long a0 = r + n[0] - 1, n2 = n[1], b0 = r * r + n[2] - 1, m4 = r + n[3], u = r + n[3] - 1;
  if (a0 < 0 || n2 < 0 || b0 < 0 || m4 < 0 || u < 0) throw std::invalid_argument("k_int: index tuple out of range");
  const Rational inv_eta = 1 / cfg.eta;

  std::vector<Rational> xs(static_cast<std::size_t>(a0 + n2) + 1);
  for (long t = 0; t <= n2; ++t) {
    Rational c = binomial(n2, t) * power(inv_eta, n2 - t);
    xs[static_cast<std::size_t>(a0 + t)] = (t % 2) ? Rational(-c) : c;
  }
  std::vector<Rational> ys(static_cast<std::size_t>(b0 + m4) + 1);
  for (long t = 0; t <= m4; ++t) ys[static_cast<std::size_t>(b0 + t)] = (t % 2 ? -1 : 1) * binomial(m4, t);
  const Polynomial y_part = Polynomial(std::move(ys)) * theta_average(cfg.poly(i2), static_cast<unsigned>(u));

  const BivariatePoly integrand = BivariatePoly::lift(Polynomial(std::move(xs)), false) *
                                  BivariatePoly::lift(y_part, true) * compose_sum(cfg.poly(i1));
  Rational total = 0;
  for (const auto& [deg, c] : integrand.terms()) total += c * simplex_monomial(deg.first, deg.second);
  return total;
}

}  // namespace zetagap
