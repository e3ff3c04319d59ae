#include <gtest/gtest.h>

#include "zetagap/combinatorics.hpp"

using namespace zetagap;

TEST(Factorial, Values) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(5), 120);
  Integer prod = 1;
  for (unsigned long k = 2; k <= 20; ++k) prod *= k;
  EXPECT_EQ(factorial(20), prod);
  EXPECT_EQ(factorial(20), Integer("2432902008176640000"));
  EXPECT_THROW(factorial(-1), std::invalid_argument);
}

TEST(Binomial, OutOfRangeIsZero) {
  EXPECT_EQ(binomial(2, 3), 0);
  EXPECT_EQ(binomial(2, -1), 0);
  EXPECT_EQ(binomial(5, 2), 10);
}

TEST(Beta, Examples) {
  EXPECT_EQ(beta_int(1, 1), 1);
  EXPECT_EQ(beta_int(4, 5), Rational(1, 280));
  EXPECT_EQ(beta_int(2, 1), Rational(1, 2));
  EXPECT_THROW(beta_int(0, 3), std::domain_error);
  EXPECT_THROW(beta_int(3, -1), std::domain_error);
}

TEST(Beta, SymmetryAndRecurrence) {
  for (long a = 1; a <= 50; ++a)
    for (long b = 1; b <= 50; ++b) {
      EXPECT_EQ(beta_int(a, b), beta_int(b, a));
      EXPECT_EQ(beta_int(a, b) - beta_int(a + 1, b), beta_int(a, b + 1));
    }
}

TEST(Delta, Values) {
  EXPECT_EQ(delta(0), 1);
  EXPECT_EQ(delta(1), -1);
  EXPECT_EQ(delta(7), -1);
}

TEST(Omega, Examples) {
  EXPECT_EQ(omega(2, 0, -1), 2);
  EXPECT_EQ(omega(2, 0, 0), -1);
  for (long r = 1; r <= 6; ++r)
    for (int i = 0; i <= 2; ++i)
      if (r > 1 || i < 2) EXPECT_EQ(omega(r, i, r - 1), 0);
}

// The alternating binomial sum annihilates polynomials in j' of degree < r.
// For i'' = 2 the Δ∗Δ convolution is linear in j', so the argument needs r ≥ 2.
TEST(Omega, VanishesAboveRMinusTwo) {
  for (long r = 1; r <= 6; ++r)
    for (int i = 0; i <= 2; ++i) {
      if (r == 1 && i == 2) continue;
      for (long n = r - 1; n <= r + 10; ++n) EXPECT_EQ(omega(r, i, n), 0) << r << " " << i << " " << n;
    }
}

// Σ_{j1+j2=m} Δ(j1)Δ(j2) = m − 3 for m ≥ 1, so Ω_1(2, n) = −(n − 1) + (n − 2) = −1.
TEST(Omega, ROneSecondDerivativeCaseIsMinusOne) {
  for (long n = 0; n <= 12; ++n) EXPECT_EQ(omega(1, 2, n), -1) << n;
}

TEST(Omega, RejectsBadArguments) {
  EXPECT_THROW(omega(0, 0, 0), std::invalid_argument);
  EXPECT_THROW(omega(2, 3, 0), std::invalid_argument);
  EXPECT_THROW(omega(2, 0, -3), std::invalid_argument);
}

TEST(BConst, Examples) {
  for (long r = 1; r <= 5; ++r) EXPECT_EQ(b_const(r, 0, 0), 1);
  EXPECT_EQ(b_const(2, 1, 1), 5);
  for (long r = 1; r <= 5; ++r)
    for (long i = 0; i <= 4; ++i) {
      Integer rp;
      mpz_ui_pow_ui(rp.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(i));
      EXPECT_EQ(b_const(r, i, 0), rp);
    }
}

TEST(BConst, Symmetric) {
  for (long r = 1; r <= 5; ++r)
    for (long a = 0; a <= 4; ++a)
      for (long b = 0; b <= 4; ++b) EXPECT_EQ(b_const(r, a, b), b_const(r, b, a));
}

TEST(CConst, Examples) {
  EXPECT_EQ(c_const(2, 0, 0, 0, 0), Rational(1, 6));
  EXPECT_EQ(c_const(2, 2, 0, 0, 2), Rational(1, 180));
  EXPECT_EQ(c_const(2, 0, 0, 2, 2), Rational(1, 216));
  EXPECT_THROW(c_const(2, 1, 0, 0, 0), std::invalid_argument);
  EXPECT_THROW(c_const(0, 0, 0, 0, 0), std::invalid_argument);
}

TEST(IndexPair, Splits) {
  for (const auto& s : kIndexSplits) EXPECT_TRUE(s.valid());
  EXPECT_FALSE((IndexPair{1, 0}.valid()));
  EXPECT_FALSE((IndexPair{3, 0}.valid()));
}

TEST(SimplexMonomial, Area) {
  EXPECT_EQ(simplex_monomial(0, 0), Rational(1, 2));
  EXPECT_EQ(simplex_monomial(1, 0), Rational(1, 6));
}
