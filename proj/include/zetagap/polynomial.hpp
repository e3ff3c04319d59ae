#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zetagap/combinatorics.hpp"
#include "zetagap/numeric.hpp"

namespace zetagap {

/// Dense univariate polynomial with exact rational coefficients; coeffs()[k]
/// multiplies x^k. The highest stored coefficient is never zero.
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial constant(Rational c) { return Polynomial(std::vector<Rational>{std::move(c)}); }

  static Polynomial monomial(int degree, Rational c) {
    if (degree < 0) throw std::invalid_argument("monomial degree must be nonnegative");
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }

  /// −1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational coeff(int k) const {
    return (k < 0 || k > degree()) ? Rational(0) : coeffs_[static_cast<std::size_t>(k)];
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] += b.coeffs_[k];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    std::vector<Rational> v(p.coeffs_);
    for (auto& c : v) c *= s;
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// Sparse bivariate polynomial: (deg_x, deg_y) -> coefficient, zeros never stored.
class BivariatePoly {
 public:
  using Key = std::pair<int, int>;

  BivariatePoly() = default;

  void add_term(int dx, int dy, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(Key{dx, dy}, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  const std::map<Key, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(int dx, int dy) const {
    auto it = terms_.find(Key{dx, dy});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
  }

  friend BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly out = a;
    for (const auto& [k, c] : b.terms_) out.add_term(k.first, k.second, c);
    return out;
  }

  /// Lifts p(x) (as_y = false) or p(y) (as_y = true) into two variables.
  static BivariatePoly lift(const Polynomial& p, bool as_y) {
    BivariatePoly out;
    for (int k = 0; k <= p.degree(); ++k) {
      if (as_y)
        out.add_term(0, k, p.coeffs()[static_cast<std::size_t>(k)]);
      else
        out.add_term(k, 0, p.coeffs()[static_cast<std::size_t>(k)]);
    }
    return out;
  }

  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Key, Rational> terms_;
};

/// Horner evaluation, exact.
inline Rational eval(const Polynomial& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Rational eval(const BivariatePoly& p, const Rational& x, const Rational& y) {
  Rational acc = 0;
  for (const auto& [k, c] : p.terms()) {
    Rational xp, yp;
    mpz_pow_ui(xp.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(k.first));
    mpz_pow_ui(xp.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(k.first));
    mpz_pow_ui(yp.get_num_mpz_t(), y.get_num_mpz_t(), static_cast<unsigned long>(k.second));
    mpz_pow_ui(yp.get_den_mpz_t(), y.get_den_mpz_t(), static_cast<unsigned long>(k.second));
    acc += c * xp * yp;
  }
  return acc;
}

/// Q(x) = ∫_0^1 θ^u p(x + θ(1−x)) dθ in closed form. Each monomial x^d expands
/// as Σ_k C(d,k) x^{d−k} (1−x)^k θ^k, and θ^{u+k} integrates to 1/(u+k+1).
inline Polynomial theta_average(const Polynomial& p, unsigned u) {
  if (p.is_zero()) return {};
  std::vector<Rational> out(static_cast<std::size_t>(p.degree()) + 1);
  for (int d = 0; d <= p.degree(); ++d) {
    const Rational& pd = p.coeffs()[static_cast<std::size_t>(d)];
    if (sgn(pd) == 0) continue;
    for (int k = 0; k <= d; ++k) {
      // weight of x^{d−k}(1−x)^k
      const Rational w = pd * make_rational(binomial(d, k), Integer(u + static_cast<unsigned>(k) + 1));
      for (int t = 0; t <= k; ++t) {
        Rational term = w * binomial(k, t);
        if (t % 2) term = -term;
        out[static_cast<std::size_t>(d - k + t)] += term;
      }
    }
  }
  return Polynomial(std::move(out));
}

/// Σ |coeffs|; bounds |p| on [0,1], and therefore every θ-average of p too.
inline Rational sup_bound(const Polynomial& p) {
  Rational s = 0;
  for (const auto& c : p.coeffs()) s += abs(c);
  return s;
}

/// p(x + y) expanded by the binomial theorem.
inline BivariatePoly compose_sum(const Polynomial& p) {
  BivariatePoly out;
  for (int d = 0; d <= p.degree(); ++d) {
    const Rational& pd = p.coeffs()[static_cast<std::size_t>(d)];
    if (sgn(pd) == 0) continue;
    for (int k = 0; k <= d; ++k) out.add_term(k, d - k, pd * binomial(d, k));
  }
  return out;
}

/// Parses "deg:coeff" entries separated by commas and/or whitespace, e.g.
/// "30:1, 165:-31.4". Repeated degrees accumulate. Empty text is the zero
/// polynomial.
inline Polynomial parse_polynomial(std::string_view text) {
  std::string buf(text);
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream in(buf);
  std::map<int, Rational> terms;
  std::string entry;
  while (in >> entry) {
    const auto colon = entry.find(':');
    if (colon == std::string::npos || colon == 0)
      throw std::invalid_argument("polynomial entry must be degree:coefficient, got '" + entry + "'");
    const std::string deg_text = entry.substr(0, colon);
    if (!std::all_of(deg_text.begin(), deg_text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("bad degree in polynomial entry '" + entry + "'");
    if (deg_text.size() > 6) throw std::invalid_argument("degree too large in '" + entry + "'");
    terms[std::stoi(deg_text)] += parse_rational(entry.substr(colon + 1));
  }
  if (terms.empty()) return {};
  std::vector<Rational> v(static_cast<std::size_t>(terms.rbegin()->first) + 1);
  for (auto& [d, c] : terms) v[static_cast<std::size_t>(d)] = c;
  return Polynomial(std::move(v));
}

/// Inverse of parse_polynomial: ascending "deg:num/den" entries joined by ", ".
inline std::string format_polynomial(const Polynomial& p) {
  std::string out;
  for (int d = 0; d <= p.degree(); ++d) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(d)];
    if (sgn(c) == 0) continue;
    if (!out.empty()) out += ", ";
    out += std::to_string(d) + ":" + format_rational(c);
  }
  return out;
}

}  // namespace zetagap
