#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "zetagap/moments.hpp"
#include "zetagap/numeric.hpp"
#include "zetagap/parallel.hpp"
#include "zetagap/polynomial.hpp"

namespace zetagap {

/// Exact inputs of the series: D/π and ĥ(r, 2j, η), k̂(r, 2j, η) for j = 0..J.
struct SeriesCoefficients {
  Rational d_over_pi;
  std::vector<Rational> hat_h;
  std::vector<Rational> hat_k;

  long truncation() const { return static_cast<long>(hat_h.size()) - 1; }

  friend bool operator==(const SeriesCoefficients&, const SeriesCoefficients&) = default;
};

inline SeriesCoefficients series_coefficients(const MomentEngine& engine, unsigned jobs,
                                              std::optional<PolyPair> only = std::nullopt) {
  const GapConfig& cfg = engine.config();
  const long J = cfg.truncation;
  const long top_degree = std::max(cfg.p0.degree(), cfg.p2.degree());
  factorials().reserve(cfg.r * cfg.r + 4 * cfg.r + 4 * std::max(0L, top_degree) + 4 * J + 64);

  SeriesCoefficients out;
  out.hat_h.resize(static_cast<std::size_t>(J) + 1);
  out.hat_k.resize(static_cast<std::size_t>(J) + 1);
  // heaviest tasks (large j, k-family) first
  const std::size_t tasks = 2 * static_cast<std::size_t>(J + 1) + 1;
  parallel_for(tasks, jobs, [&](std::size_t t) {
    if (t == tasks - 1) {
      out.d_over_pi = engine.d_const(only);
      return;
    }
    const long j = J - static_cast<long>(t / 2);
    const auto idx = static_cast<std::size_t>(j);
    if (t % 2 == 0)
      out.hat_k[idx] = engine.hat_k(2 * j, only);
    else
      out.hat_h[idx] = engine.hat_h(2 * j, only);
  });
  return out;
}

inline SeriesCoefficients series_coefficients(const GapConfig& cfg, unsigned jobs) {
  return series_coefficients(MomentEngine(cfg), jobs);
}

/// Coefficients split by polynomial pair. With P2 = s·B the coefficients for
/// the pair (P0, s·B) are parts[00] + s·(parts[02] + parts[20]) + s²·parts[22].
struct PairedCoefficients {
  std::array<SeriesCoefficients, 4> parts;  // indexed like kPolyPairs

  SeriesCoefficients combine(const Rational& s) const {
    const std::array<Rational, 4> weight{Rational(1), s, s, s * s};
    SeriesCoefficients out = parts[0];
    for (std::size_t p = 1; p < parts.size(); ++p) {
      out.d_over_pi += weight[p] * parts[p].d_over_pi;
      for (std::size_t j = 0; j < out.hat_h.size(); ++j) {
        out.hat_h[j] += weight[p] * parts[p].hat_h[j];
        out.hat_k[j] += weight[p] * parts[p].hat_k[j];
      }
    }
    return out;
  }
};

inline PairedCoefficients paired_coefficients(const MomentEngine& engine, unsigned jobs) {
  PairedCoefficients out;
  for (std::size_t p = 0; p < kPolyPairs.size(); ++p) out.parts[p] = series_coefficients(engine, jobs, kPolyPairs[p]);
  return out;
}

/// Certified bounds on the omitted ĥ- and k̂-parts of the series beyond J.
struct TailBound {
  Real h_tail;
  Real k_tail;

  Real total() const { return h_tail + k_tail; }
};

namespace detail {

/// Σ_{j>J} x^{2j}/(2j+1)! from (2j+1)! > ((2j+1)/e)^{2j+1} when e·x < 2J+3,
/// otherwise by explicit terms until the term ratio drops below 1/2.
inline Real odd_factorial_tail(const Real& x, long J) {
  using boost::multiprecision::pow;
  const Real e = boost::multiprecision::exp(Real(1));
  const Real q = e * x / (2 * J + 3);
  if (q < 1) return e / (2 * J + 3) * pow(q, 2 * (J + 1)) / (1 - q * q);
  Real sum = 0;
  Real t = pow(x, 2 * (J + 1)) / to_real(factorial(2 * J + 3));
  for (long j = J + 1;; ++j) {
    const Real rho = x * x / ((2 * j + 2) * (2 * j + 3));
    if (rho < Real(1) / 2) return sum + t / (1 - rho);
    sum += t;
    t *= rho;
  }
}

/// ∫_0^1 x^a (1 − x/E)^{n2} dx ≤ min(1/(a+1), a!·(E/n2)^{a+1}).
inline Real x_weight_bound(long a, long n2, const Real& E) {
  const Real plain = Real(1) / (a + 1);
  if (n2 == 0) return plain;
  const Real decayed = to_real(factorial(a)) * boost::multiprecision::pow(E / n2, a + 1);
  return decayed < plain ? decayed : plain;
}

}  // namespace detail

/// Tail bounds given D/π. |ĥ| is dominated by (η⁻¹+2)·M_{i1}·M_{i2} per h
/// value, M_i = sup_bound(P_i); |k| by M_{i1}·M_{i2}·B(b+1, m+1)·∫x^a(η⁻¹−x)^{n2}.
inline TailBound tail_bound(const GapConfig& cfg, const Rational& d_over_pi, const Rational& c_over_pi, long J) {
  using boost::multiprecision::pow;
  if (J < 1) throw std::invalid_argument("tail_bound requires J >= 1");
  if (sgn(c_over_pi) <= 0) throw std::invalid_argument("tail_bound requires c > 0");
  if (sgn(d_over_pi) == 0) throw ComputationError("D = 0: degenerate polynomial configuration");
  PrecisionScope scope(cfg.precision);

  const long r = cfg.r;
  const Rational inv_eta = 1 / cfg.eta;
  const Real E = to_real(inv_eta);
  const Real c = to_real(c_over_pi) * pi_real();
  // c/(π·|D/π|) multiplies every term of the series
  const Real prefactor = to_real(c_over_pi / abs(d_over_pi));
  auto bound_of = [&](int i) { return sup_bound(cfg.poly(i)); };

  Rational m_h = 0;
  Real k_sum = 0;
  const Real y = c * E / 2;
  for (const auto& s1 : kIndexSplits)
    for (const auto& s2 : kIndexSplits) {
      const Rational mm = bound_of(s1.total()) * bound_of(s2.total());
      if (sgn(mm) == 0) continue;
      const Rational cr = abs(c_const(r, s1, s2));
      m_h += cr * mm * (inv_eta + 2) * (r + s2.dprime * (r + s2.dprime - 1));

      const long a = r + s1.dprime - 1;
      const long b = r * r + s1.prime + s2.prime - 1;
      for (long n = -2; n <= r - 2; ++n) {
        const Integer w = omega(r, s2.dprime, n);
        if (sgn(w) == 0) continue;
        const long m = r + s2.dprime + n + 2;
        const Rational coef = cr * mm * abs(Rational(w)) *
                              make_rational(factorial(r + s2.dprime - 1), factorial(r + s2.dprime + n + 1)) *
                              beta_int(b + 1, m + 1);
        Real sum = 0;
        for (long j = std::max(J + 1, (n + 1) / 2);; ++j) {
          const long n2 = 2 * j - n;
          const Real g = pow(c / 2, 2 * j) * pow(E, n2) * detail::x_weight_bound(a, n2, E) /
                         (to_real(factorial(n2)) * (2 * j + 1));
          const Real rho = y * y / ((n2 + 1) * (n2 + 2));
          if (rho < Real(1) / 2) {
            sum += g / (1 - rho);
            break;
          }
          sum += g;
        }
        k_sum += to_real(coef) * sum;
      }
    }
  return TailBound{prefactor * to_real(m_h) * detail::odd_factorial_tail(c / 2, J), prefactor * k_sum};
}

inline TailBound tail_bound(const GapConfig& cfg, const Rational& c_over_pi, long J) {
  return tail_bound(cfg, MomentEngine(cfg).d_const(), c_over_pi, J);
}

/// Result of evaluating the gap ratio at one c.
struct RatioReport {
  Rational c_over_pi;
  Real f_value;
  long truncation = 0;
  Real tail_bound;  // h_tail + k_tail
  Real h_tail;
  Real k_tail;
  Real rounding_bound;  // allowance for floating evaluation of the truncated sum
  bool admissible = false;
  std::optional<Rational> lambda_bound;  // c/π when admissible
  bool h_part_bracketed = false;         // alternating, decreasing ĥ-terms once 2j+1 > c·e
  std::vector<Real> h_terms;             // signed contributions to f, j = 0..J
  std::vector<Real> k_terms;
};

/// f at c = c_over_pi·π from precomputed coefficients.
inline RatioReport evaluate_ratio(const GapConfig& cfg, const SeriesCoefficients& coeffs, const Rational& c_over_pi) {
  using boost::multiprecision::abs;
  using boost::multiprecision::pow;
  if (sgn(c_over_pi) <= 0) throw std::invalid_argument("c must be positive");
  if (sgn(coeffs.d_over_pi) == 0) throw ComputationError("D = 0: degenerate polynomial configuration");
  PrecisionScope scope(cfg.precision);

  const long J = coeffs.truncation();
  const Real pi = pi_real();
  const Real c = to_real(c_over_pi) * pi;
  const Real scale = 1 / (pi * to_real(coeffs.d_over_pi));

  RatioReport rep;
  rep.c_over_pi = c_over_pi;
  rep.truncation = J;
  rep.h_terms.reserve(static_cast<std::size_t>(J) + 1);
  rep.k_terms.reserve(static_cast<std::size_t>(J) + 1);
  Real sum = 0, magnitude = 0;
  for (long j = 0; j <= J; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    Real weight = scale * pow(c, 2 * j + 1) / pow(Real(4), j);
    if (j % 2) weight = -weight;
    Real h = weight * to_real(coeffs.hat_h[idx]) / to_real(factorial(2 * j + 1));
    Real k = weight * to_real(coeffs.hat_k[idx]) / (2 * j + 1);
    sum += h + k;
    magnitude += abs(h) + abs(k);
    rep.h_terms.push_back(std::move(h));
    rep.k_terms.push_back(std::move(k));
  }
  rep.f_value = sum + to_real(c_over_pi);

  const TailBound tail = tail_bound(cfg, coeffs.d_over_pi, c_over_pi, J);
  rep.h_tail = tail.h_tail;
  rep.k_tail = tail.k_tail;
  rep.tail_bound = tail.total();
  rep.rounding_bound = (magnitude + to_real(c_over_pi)) * pow(Real(10), -static_cast<long>(cfg.precision) + 5);
  rep.admissible = rep.f_value + rep.tail_bound + rep.rounding_bound < 1;
  if (rep.admissible) rep.lambda_bound = c_over_pi;

  const Real regime = c * boost::multiprecision::exp(Real(1));
  long checked = 0;
  bool ok = true;
  for (long j = 1; j <= J; ++j) {
    if (2 * j - 1 <= regime) continue;
    const auto& prev = rep.h_terms[static_cast<std::size_t>(j - 1)];
    const auto& cur = rep.h_terms[static_cast<std::size_t>(j)];
    ok = ok && (prev.sign() * cur.sign() < 0) && abs(cur) < abs(prev);
    ++checked;
  }
  rep.h_part_bracketed = ok && checked > 0;
  return rep;
}

inline RatioReport f_series(const GapConfig& cfg, const Rational& c_over_pi, unsigned jobs = default_jobs()) {
  cfg.validate();
  if (sgn(c_over_pi) <= 0) throw std::invalid_argument("c must be positive");
  return evaluate_ratio(cfg, series_coefficients(cfg, jobs), c_over_pi);
}

inline constexpr long kScanGridPoints = 256;

/// Largest certified admissible c/π in [c_lo, c_hi]: scan a 256-point grid,
/// then bisect from the rightmost admissible grid point to width tol.
inline RatioReport max_admissible_c(const GapConfig& cfg, const SeriesCoefficients& coeffs, const Rational& c_lo,
                                    const Rational& c_hi, const Rational& tol) {
  if (!(c_lo < c_hi)) throw std::invalid_argument("c_lo must be below c_hi");
  if (sgn(c_lo) <= 0) throw std::invalid_argument("c_lo must be positive");
  if (sgn(tol) <= 0) throw std::invalid_argument("tol must be positive");
  const Rational step = (c_hi - c_lo) / (kScanGridPoints - 1);
  std::optional<RatioReport> best;
  long best_index = -1;
  for (long k = kScanGridPoints - 1; k >= 0; --k) {
    RatioReport rep = evaluate_ratio(cfg, coeffs, k == kScanGridPoints - 1 ? c_hi : c_lo + k * step);
    if (rep.admissible) {
      best = std::move(rep);
      best_index = k;
      break;
    }
  }
  if (!best) throw ComputationError("no admissible c on the scan interval");
  if (best_index == kScanGridPoints - 1) return *best;

  Rational lo = best->c_over_pi, hi = c_lo + (best_index + 1) * step;
  while (hi - lo > tol) {
    const Rational mid = (lo + hi) / 2;
    RatioReport rep = evaluate_ratio(cfg, coeffs, mid);
    if (rep.admissible) {
      lo = mid;
      best = std::move(rep);
    } else {
      hi = mid;
    }
  }
  return *best;
}

inline RatioReport max_admissible_c(const GapConfig& cfg, const Rational& c_lo, const Rational& c_hi,
                                    const Rational& tol, unsigned jobs = default_jobs()) {
  cfg.validate();
  return max_admissible_c(cfg, series_coefficients(cfg, jobs), c_lo, c_hi, tol);
}

}  // namespace zetagap
