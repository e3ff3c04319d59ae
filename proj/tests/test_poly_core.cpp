#include <random>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "zetagap/polynomial.hpp"

using namespace zetagap;

namespace {

Rational random_unit_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> den(1, 1000);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(0, d);
  return make_rational(num(rng), d);
}

Polynomial random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> c(-50, 50);
  std::vector<Rational> v(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : v) x = make_rational(c(rng), 7);
  return Polynomial(std::move(v));
}

}  // namespace

TEST(Eval, PowerOfOneIsOne) { EXPECT_EQ(eval(parse_polynomial("30:1"), Rational(1)), 1); }

TEST(Eval, ZeroPolynomial) { EXPECT_EQ(eval(Polynomial(), Rational(1, 2)), 0); }

TEST(Eval, DecimalCoefficientIsExact) {
  const Polynomial p = parse_polynomial("165:-31.4");
  EXPECT_EQ(p.coeff(165), Rational(-157, 5));
  EXPECT_EQ(eval(p, Rational(1)), Rational(-157, 5));
}

TEST(PolynomialInvariants, TrailingCoefficientNonzero) {
  Polynomial p(std::vector<Rational>{1, 2, 0, 0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(Polynomial().degree(), -1);
  EXPECT_EQ(Polynomial(std::vector<Rational>{0, 0}).degree(), -1);
  const Polynomial q = parse_polynomial("3:1") + parse_polynomial("3:-1");
  EXPECT_TRUE(q.is_zero());
}

TEST(ThetaAverage, ConstantGivesReciprocal) {
  for (unsigned u = 0; u < 6; ++u) EXPECT_EQ(theta_average(Polynomial::constant(1), u), Polynomial::constant(Rational(1, u + 1)));
}

TEST(ThetaAverage, X30IsGeometricSum) {
  std::vector<Rational> expect(31, Rational(1, 31));
  EXPECT_EQ(theta_average(parse_polynomial("30:1"), 0), Polynomial(expect));
  const auto p = oracle::ld_coeffs(parse_polynomial("30:1"));
  for (long double x : {0.0L, 0.5L}) {
    const long double q = oracle::theta_average(p, 0, x);
    const long double exact = eval(theta_average(parse_polynomial("30:1"), 0), Rational(static_cast<double>(x))).get_d();
    EXPECT_NEAR(q, exact, 1e-15L * std::abs(exact));
  }
}

TEST(ThetaAverage, ValueAtOne) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const Polynomial p = random_poly(rng, 12);
    for (unsigned u = 0; u < 5; ++u)
      EXPECT_EQ(eval(theta_average(p, u), Rational(1)), eval(p, Rational(1)) / (u + 1));
  }
}

TEST(ThetaAverage, DegreePreserved) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const Polynomial p = random_poly(rng, 12);
    EXPECT_EQ(theta_average(p, 3).degree(), p.degree());
  }
}

TEST(ThetaAverage, Linear) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const Polynomial p = random_poly(rng, 10), q = random_poly(rng, 10);
    const Rational a = make_rational(3, 7), b = make_rational(-5, 2);
    for (unsigned u = 0; u < 4; ++u)
      EXPECT_EQ(theta_average(a * p + b * q, u), a * theta_average(p, u) + b * theta_average(q, u));
  }
}

TEST(ThetaAverage, MatchesQuadrature) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 10; ++t) {
    const Polynomial p = random_poly(rng, 8);
    const auto pl = oracle::ld_coeffs(p);
    for (unsigned u = 0; u <= 4; ++u)
      for (const Rational& x : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
        const double exact = eval(theta_average(p, u), x).get_d();
        const long double q = oracle::theta_average(pl, u, static_cast<long double>(x.get_d()));
        const double scale = std::max(1e-300, std::abs(exact));
        if (exact == 0)
          EXPECT_LT(std::abs(static_cast<double>(q)), 1e-14);
        else
          EXPECT_LT(std::abs(static_cast<double>(q) - exact) / scale, 1e-12) << "u=" << u << " x=" << x.get_d();
      }
  }
}

TEST(SupBound, Examples) {
  EXPECT_EQ(sup_bound(parse_polynomial("165:-31.4")), Rational(157, 5));
  EXPECT_LE(sup_bound(parse_polynomial("165:-31.4")), 32);
  EXPECT_EQ(sup_bound(Polynomial()), 0);
  EXPECT_EQ(sup_bound(parse_polynomial("30:1, 1:1")), 2);
}

TEST(SupBound, DominatesValuesOnUnitInterval) {
  std::mt19937_64 rng(15);
  const Polynomial p = random_poly(rng, 10);
  const Rational m = sup_bound(p);
  for (int t = 0; t < 1000; ++t) EXPECT_LE(abs(eval(p, random_unit_rational(rng))), m);
}

TEST(ComposeSum, Square) {
  const BivariatePoly b = compose_sum(parse_polynomial("2:1"));
  EXPECT_EQ(b.size(), 3u);
  EXPECT_EQ(b.coeff(2, 0), 1);
  EXPECT_EQ(b.coeff(1, 1), 2);
  EXPECT_EQ(b.coeff(0, 2), 1);
}

TEST(ComposeSum, Constant) {
  const BivariatePoly b = compose_sum(Polynomial::constant(Rational(7, 3)));
  EXPECT_EQ(b.size(), 1u);
  EXPECT_EQ(b.coeff(0, 0), Rational(7, 3));
}

TEST(ComposeSum, Degree165RowSum) {
  const BivariatePoly b = compose_sum(parse_polynomial("165:1"));
  Integer total = 0, two165;
  mpz_ui_pow_ui(two165.get_mpz_t(), 2, 165);
  for (const auto& [deg, c] : b.terms()) {
    EXPECT_EQ(deg.first + deg.second, 165);
    EXPECT_EQ(c, Rational(binomial(165, deg.first)));
    total += c.get_num();
  }
  EXPECT_EQ(total, two165);
}

TEST(ComposeSum, RestrictionToAxis) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 20; ++t) {
    const Polynomial p = random_poly(rng, 10);
    const Rational x = random_unit_rational(rng);
    EXPECT_EQ(eval(compose_sum(p), x, Rational(0)), eval(p, x));
  }
}

TEST(BivariatePoly, NoStoredZeros) {
  BivariatePoly b;
  b.add_term(1, 2, 3);
  b.add_term(1, 2, -3);
  EXPECT_TRUE(b.is_zero());
  b.add_term(0, 0, 0);
  EXPECT_TRUE(b.is_zero());
}

TEST(Parse, RoundTripAndErrors) {
  const Polynomial p = parse_polynomial("0:1/3, 30:1 165:-31.4");
  EXPECT_EQ(parse_polynomial(format_polynomial(p)), p);
  EXPECT_EQ(parse_polynomial("2:1, 2:1"), parse_polynomial("2:2"));
  EXPECT_THROW(parse_polynomial("x:1"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial("3"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial("3:1/0"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial("3:abc"), std::invalid_argument);
  EXPECT_EQ(parse_rational("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(parse_rational("-31.4"), Rational(-157, 5));
  EXPECT_THROW(parse_rational("1.2.3"), std::invalid_argument);
  EXPECT_THROW(parse_rational("nan"), std::invalid_argument);
}
