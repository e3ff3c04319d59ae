#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>
#include <mpfr.h>

namespace zetagap {

using Integer = mpz_class;
using Rational = mpq_class;

/// A well-formed request whose evaluation cannot produce a result (for example
/// a vanishing normalizer or an empty admissible set).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// num/den in canonical form (gmpxx does not canonicalize the two-argument constructor).
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// q^e for e ≥ 0.
inline Rational power(const Rational& q, long e) {
  if (e < 0) throw std::invalid_argument("power requires a nonnegative exponent");
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

/// Arbitrary precision real. Precision is the process-wide default set through
/// PrecisionScope; floating work happens on the calling thread only.
using Real = boost::multiprecision::mpfr_float;

/// Sets the default Real precision (decimal digits) for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline Real to_real(const Rational& q) {
  Real x;
  mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return x;
}

inline Real to_real(const Integer& z) {
  Real x;
  mpfr_set_z(x.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return x;
}

inline Real pi_real() {
  Real x;
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

/// Parses an exact rational from "p/q", an integer, or a finite decimal such as
/// "-31.4" or "2.5e-3". Decimals are converted exactly (−31.4 → −157/5).
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const std::string num(trim(s.substr(0, slash)));
    const std::string den(trim(s.substr(slash + 1)));
    auto is_int = [](const std::string& t) {
      std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      return true;
    };
    if (!is_int(num) || !is_int(den)) throw std::invalid_argument("malformed rational: " + std::string(s));
    Integer n(num[0] == '+' ? num.substr(1) : num, 10);
    Integer d(den[0] == '+' ? den.substr(1) : den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    Rational q(n, d);
    q.canonicalize();
    return q;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = (s[i++] == '-');
  std::string digits;
  long scale = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_dot) ++scale;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a finite decimal: " + std::string(s));
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("not a finite decimal: " + std::string(s));
    ++i;
    const std::string exp_text(s.substr(i));
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in decimal: " + std::string(s));
    }
    if (used != exp_text.size() || exponent > 100000 || exponent < -100000)
      throw std::invalid_argument("bad exponent in decimal: " + std::string(s));
  }
  Integer mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  const long shift = exponent - scale;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift < 0 ? Rational(mantissa, ten_pow) : Rational(mantissa * ten_pow);
  q.canonicalize();
  return q;
}

/// "p/q" or "p" for integers.
inline std::string format_rational(const Rational& q) { return q.get_str(); }

/// Fixed-point decimal rendering with `digits` significant digits, '.' decimal
/// separator, no locale.
inline std::string format_real(const Real& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::fmtflags(0));
}

}  // namespace zetagap
