#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetagap/gap_ratio.hpp"
#include "zetagap/moments.hpp"
#include "zetagap/numeric.hpp"
#include "zetagap/polynomial.hpp"

namespace zetagap {

/// Monomial search family: P0 = x^{d0}, P2 = s·x^{d2}, s ∈ [p2_coeff_lo, p2_coeff_hi].
/// An empty p2_degrees list or the range [0, 0] means P2 = 0.
struct FamilySpec {
  std::vector<int> p0_degrees;
  std::vector<int> p2_degrees;
  Rational p2_coeff_lo{0};
  Rational p2_coeff_hi{0};
  std::vector<long> r_values{2};
  long budget = 64;  // max_admissible_c evaluations

  Rational eta{1, 2};
  long truncation = 30;
  unsigned precision = 50;
  Rational c_lo{2};  // scan interval, in units of π
  Rational c_hi{4};
  Rational tol{1, 1000000};
  long coeff_iterations = 16;  // golden-section steps per (r, d0, d2)

  bool p2_fixed_zero() const {
    return p2_degrees.empty() || (sgn(p2_coeff_lo) == 0 && sgn(p2_coeff_hi) == 0);
  }

  void validate() const {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (p0_degrees.empty()) throw std::invalid_argument("p0_degrees must be nonempty");
    if (r_values.empty()) throw std::invalid_argument("r_values must be nonempty");
    for (int d : p0_degrees)
      if (d < 0) throw std::invalid_argument("degrees must be nonnegative");
    for (int d : p2_degrees)
      if (d < 0) throw std::invalid_argument("degrees must be nonnegative");
    if (p2_coeff_hi < p2_coeff_lo) throw std::invalid_argument("p2 coefficient range is empty");
    if (coeff_iterations < 0) throw std::invalid_argument("coeff_iterations must be >= 0");
    if (!(c_lo < c_hi) || sgn(c_lo) <= 0) throw std::invalid_argument("need 0 < c_lo < c_hi");
    if (sgn(tol) <= 0) throw std::invalid_argument("tol must be positive");
  }
};

struct TraceEntry {
  long r = 0;
  int p0_degree = 0;
  std::optional<int> p2_degree;  // absent when P2 = 0
  Rational p2_coeff;
  std::optional<Rational> c_star;     // largest certified c/π, absent if none
  std::optional<Rational> best_so_far;

  std::string summary() const {
    std::string s = "r=" + std::to_string(r) + " p0=x^" + std::to_string(p0_degree);
    if (p2_degree)
      s += " p2=" + format_rational(p2_coeff) + "*x^" + std::to_string(*p2_degree);
    else
      s += " p2=0";
    return s;
  }
};

struct SearchResult {
  GapConfig best_config;
  RatioReport best_report;
  long evaluations = 0;
  std::vector<TraceEntry> trace;
};

namespace detail {

/// Probe points snap to a grid of 10⁶ cells across the coefficient range.
inline Rational snap(const Rational& x, const Rational& lo, const Rational& hi) {
  if (lo == hi) return lo;
  const Rational cells = (x - lo) / (hi - lo) * 1000000;
  Integer k;
  mpz_fdiv_q(k.get_mpz_t(), Rational(cells + Rational(1, 2)).get_num_mpz_t(),
             Rational(cells + Rational(1, 2)).get_den_mpz_t());
  return lo + Rational(k) * (hi - lo) / 1000000;
}

}  // namespace detail

/// Exhaustive over (r, d0, d2) in listed order; golden-section over the P2
/// coefficient. Ties in c/π go to the lower d0 + d2, then to the earlier candidate.
inline SearchResult optimize(const FamilySpec& spec, unsigned jobs = default_jobs()) {
  spec.validate();
  SearchResult result;
  std::optional<Rational> best_c;
  long best_degree = 0;

  auto record = [&](const GapConfig& cfg, const SeriesCoefficients& coeffs, TraceEntry entry, long degree) {
    std::optional<RatioReport> rep;
    try {
      rep = max_admissible_c(cfg, coeffs, spec.c_lo, spec.c_hi, spec.tol);
    } catch (const ComputationError&) {
    }
    ++result.evaluations;
    if (rep) {
      entry.c_star = rep->c_over_pi;
      const bool better = !best_c || rep->c_over_pi > *best_c || (rep->c_over_pi == *best_c && degree < best_degree);
      if (better) {
        best_c = rep->c_over_pi;
        best_degree = degree;
        result.best_config = cfg;
        result.best_report = std::move(*rep);
      }
    }
    entry.best_so_far = best_c;
    std::optional<Rational> c_star = entry.c_star;
    result.trace.push_back(std::move(entry));
    return c_star;
  };
  auto exhausted = [&] { return result.evaluations >= spec.budget; };

  const std::vector<std::optional<int>> p2_choices = [&] {
    std::vector<std::optional<int>> v;
    if (spec.p2_fixed_zero()) {
      v.emplace_back();
    } else {
      for (int d : spec.p2_degrees) v.emplace_back(d);
    }
    return v;
  }();

  for (long r : spec.r_values) {
    for (int d0 : spec.p0_degrees) {
      for (const auto& d2 : p2_choices) {
        if (exhausted()) break;
        GapConfig base;
        base.r = r;
        base.eta = spec.eta;
        base.truncation = spec.truncation;
        base.precision = spec.precision;
        base.p0 = Polynomial::monomial(d0, 1);
        const long degree = d0 + (d2 ? *d2 : 0);

        if (!d2) {
          base.validate();
          const SeriesCoefficients coeffs = series_coefficients(base, jobs);
          record(base, coeffs, TraceEntry{r, d0, std::nullopt, 0, {}, {}}, degree);
          continue;
        }

        base.p2 = Polynomial::monomial(*d2, 1);
        base.validate();
        const PairedCoefficients paired = paired_coefficients(MomentEngine(base), jobs);
        auto probe = [&](const Rational& s) -> std::optional<Rational> {
          GapConfig cfg = base;
          cfg.p2 = Polynomial::monomial(*d2, s);
          return record(cfg, paired.combine(s), TraceEntry{r, d0, *d2, s, {}, {}}, degree);
        };
        const Rational& lo = spec.p2_coeff_lo;
        const Rational& hi = spec.p2_coeff_hi;
        if (lo == hi) {
          probe(lo);
          continue;
        }
        // 1/φ to ten digits; the snap keeps probes on a fixed grid
        const Rational inv_phi(6180339887, 10000000000);
        auto score = [](const std::optional<Rational>& c) { return c ? *c : Rational(-1); };
        Rational a = lo, b = hi;
        Rational x1 = detail::snap(b - inv_phi * (b - a), lo, hi);
        Rational x2 = detail::snap(a + inv_phi * (b - a), lo, hi);
        if (exhausted()) break;
        Rational f1 = score(probe(x1));
        if (exhausted()) break;
        Rational f2 = score(probe(x2));
        for (long it = 0; it < spec.coeff_iterations && !exhausted(); ++it) {
          if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = detail::snap(b - inv_phi * (b - a), lo, hi);
            if (x1 == x2) break;
            f1 = score(probe(x1));
          } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = detail::snap(a + inv_phi * (b - a), lo, hi);
            if (x1 == x2) break;
            f2 = score(probe(x2));
          }
        }
      }
    }
  }
  if (!best_c) throw ComputationError("no candidate in the family is admissible on the scan interval");
  return result;
}

}  // namespace zetagap
