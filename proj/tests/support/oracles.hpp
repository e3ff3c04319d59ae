#pragma once

// Independent numerical oracles for the exact routines: nested adaptive
// Gauss–Kronrod quadrature in long double, and the truncated inner series of
// the Euler local factor.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "zetagap/zetagap.hpp"

namespace oracle {

using zetagap::GapConfig;
using zetagap::Polynomial;

inline long double to_ld(const zetagap::Rational& q) { return static_cast<long double>(q.get_d()) ; }

/// Coefficients to long double with an extra correction term for accuracy.
inline std::vector<long double> ld_coeffs(const Polynomial& p) {
  std::vector<long double> out;
  for (const auto& c : p.coeffs()) {
    const long double hi = static_cast<long double>(c.get_d());
    const zetagap::Rational rest = c - zetagap::Rational(c.get_d());
    out.push_back(hi + static_cast<long double>(rest.get_d()));
  }
  return out;
}

inline long double horner(const std::vector<long double>& c, long double x) {
  long double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class F>
long double integrate(F f, long double a, long double b) {
  using Q = boost::math::quadrature::gauss_kronrod<long double, 61>;
  return Q::integrate(f, a, b, 10, 1e-14L);
}

/// ∫_0^1 θ^u P(x + θ(1−x)) dθ.
inline long double theta_average(const std::vector<long double>& p, unsigned u, long double x) {
  return integrate([&](long double t) { return std::pow(t, static_cast<long double>(u)) * horner(p, x + t * (1 - x)); },
                   0.0L, 1.0L);
}

inline long double l_int(const GapConfig& cfg, int i1, int i2, const zetagap::IndexTuple4& n) {
  const long r = cfg.r;
  const auto p1 = ld_coeffs(cfg.poly(i1));
  const auto p2 = ld_coeffs(cfg.poly(i2));
  const long a = r * r + n[0] + n[1] - 1, b = 2 * r + n[2] + n[3];
  const auto u1 = static_cast<unsigned>(r + n[2] - 1), u2 = static_cast<unsigned>(r + n[3] - 1);
  return integrate(
      [&](long double x) {
        return std::pow(x, static_cast<long double>(a)) * std::pow(1 - x, static_cast<long double>(b)) *
               theta_average(p1, u1, x) * theta_average(p2, u2, x);
      },
      0.0L, 1.0L);
}

inline long double k_int(const GapConfig& cfg, int i1, int i2, const zetagap::IndexTuple4& n) {
  const long r = cfg.r;
  const auto p1 = ld_coeffs(cfg.poly(i1));
  const auto p2 = ld_coeffs(cfg.poly(i2));
  const long double E = to_ld(1 / cfg.eta);
  const long a = r + n[0] - 1, b = r * r + n[2] - 1, m = r + n[3];
  const auto u = static_cast<unsigned>(r + n[3] - 1);
  return integrate(
      [&](long double x) {
        const long double outer = std::pow(x, static_cast<long double>(a)) * std::pow(E - x, static_cast<long double>(n[1]));
        return outer * integrate(
                           [&](long double y) {
                             return std::pow(y, static_cast<long double>(b)) *
                                    std::pow(1 - y, static_cast<long double>(m)) * horner(p1, x + y) *
                                    theta_average(p2, u, y);
                           },
                           0.0L, 1 - x);
      },
      0.0L, 1.0L);
}

/// (1−1/p)^{r²} Σ_m C(r+m−1, m)² p^{−m}, summed until terms drop below 10^{−(digits+10)}.
inline zetagap::Real local_factor_series(long r, long p) {
  using zetagap::Real;
  const Real x = Real(1) / p;
  const Real eps = boost::multiprecision::pow(Real(10), -static_cast<long>(Real::default_precision()) - 10);
  Real sum = 0, xm = 1;
  for (long m = 0;; ++m) {
    const zetagap::Integer b = zetagap::binomial(r + m - 1, m);
    const Real term = zetagap::to_real(zetagap::Integer(b * b)) * xm;
    sum += term;
    if (m > 0 && term < eps) break;
    xm *= x;
  }
  return boost::multiprecision::pow(1 - x, r * r) * sum;
}

}  // namespace oracle
