#include <gtest/gtest.h>

#include <cmath>

#include "qhl/cyclotomic.hpp"
#include "support/generators.hpp"

namespace qhl {
namespace {

const Cyclotomic kZeta = Cyclotomic::zeta();
const Cyclotomic kI = Cyclotomic::imag_unit();
const Cyclotomic kSqrt2 = Cyclotomic::sqrt2();

Cyclotomic zeta_pow(int k) {
  Cyclotomic r(1);
  for (int j = 0; j < k; ++j) r *= kZeta;
  return r;
}

TEST(CyclotomicTest, MultiplicationReducesZetaFourth) {
  EXPECT_EQ(kZeta * zeta_pow(3), Cyclotomic(-1));
  EXPECT_EQ(kI * kI, Cyclotomic(-1));
  EXPECT_EQ(zeta_pow(8), Cyclotomic(1));
}

TEST(CyclotomicTest, ZetaMinusZetaCubedSquaresToTwo) {
  // (zeta - zeta^3)^2 = zeta^2 - 2 zeta^4 + zeta^6 = i + 2 - i = 2
  const Cyclotomic s = kZeta - zeta_pow(3);
  EXPECT_EQ(s, kSqrt2);
  EXPECT_EQ(s * s, Cyclotomic(2));
}

TEST(CyclotomicTest, Conjugation) {
  EXPECT_EQ(kI.conj(), -kI);
  EXPECT_EQ(Cyclotomic(1).conj(), Cyclotomic(1));
  EXPECT_EQ(kSqrt2.conj(), kSqrt2);
  EXPECT_EQ(kZeta.conj(), -zeta_pow(3));
}

TEST(CyclotomicTest, Inverse) {
  EXPECT_EQ(Cyclotomic(2).inverse(), Cyclotomic(Rational(1, 2)));
  EXPECT_EQ(kZeta.inverse(), -zeta_pow(3));
  // 1/sqrt2 = sqrt2/2
  const Cyclotomic inv = kSqrt2.inverse();
  EXPECT_EQ(inv, Cyclotomic(Rational(1, 2)) * kSqrt2);
  EXPECT_EQ(inv * kSqrt2, Cyclotomic(1));
}

TEST(CyclotomicTest, InverseOfZeroThrows) {
  EXPECT_THROW(Cyclotomic(0).inverse(), DivisionByZero);
  EXPECT_THROW(Cyclotomic(1) / Cyclotomic(0), DivisionByZero);
}

TEST(CyclotomicTest, RealSign) {
  EXPECT_EQ(Cyclotomic(0).real_sign(), 0);
  // 1 - sqrt2 is stored as 1 - zeta + zeta^3
  const Cyclotomic a = Cyclotomic(1) - kSqrt2;
  EXPECT_EQ(a, Cyclotomic(1, -1, 0, 1));
  EXPECT_EQ(a.real_sign(), -1);
  // 3 - 2 sqrt2: 9 > 8
  EXPECT_EQ((Cyclotomic(3) - Cyclotomic(2) * kSqrt2).real_sign(), 1);
  EXPECT_EQ((Cyclotomic(-3) + Cyclotomic(2) * kSqrt2).real_sign(), -1);
  EXPECT_EQ((Cyclotomic(-1) + kSqrt2).real_sign(), 1);
  EXPECT_EQ(Cyclotomic(Rational(-1, 7)).real_sign(), -1);
}

TEST(CyclotomicTest, RealSignRejectsNonReal) {
  EXPECT_THROW(kI.real_sign(), NotReal);
  EXPECT_THROW(kZeta.real_sign(), NotReal);
}

TEST(CyclotomicTest, ToFloat) {
  const auto one = Cyclotomic(1).to_float();
  EXPECT_DOUBLE_EQ(one.re, 1.0);
  EXPECT_DOUBLE_EQ(one.im, 0.0);
  const auto i = kI.to_float();
  EXPECT_DOUBLE_EQ(i.re, 0.0);
  EXPECT_DOUBLE_EQ(i.im, 1.0);
  const auto s = kSqrt2.to_float();
  EXPECT_NEAR(s.re, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.im, 0.0, 1e-12);
}

TEST(CyclotomicTest, ToStringIsReadableForm) {
  EXPECT_EQ(Cyclotomic(0).to_string(), "0");
  EXPECT_EQ(Cyclotomic(Rational(1, 2)).to_string(), "1/2");
  EXPECT_EQ((Cyclotomic(Rational(1, 2)) * kSqrt2).to_string(), "1/2*sqrt2");
  EXPECT_EQ((-kI).to_string(), "-i");
  EXPECT_EQ(kZeta.to_string(), "1/2*sqrt2 + 1/2*sqrt2*i");
}

class CyclotomicProperties : public ::testing::Test {
 protected:
  testing::Rng rng{2024};
};

TEST_F(CyclotomicProperties, FieldAxioms) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testing::random_cyclotomic(rng);
    const auto b = testing::random_cyclotomic(rng);
    const auto c = testing::random_cyclotomic(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Cyclotomic(1));
  }
}

TEST_F(CyclotomicProperties, ConjugationIsInvolutiveHomomorphism) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testing::random_cyclotomic(rng);
    const auto b = testing::random_cyclotomic(rng);
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ((a + b).conj(), a.conj() + b.conj());
  }
}

TEST_F(CyclotomicProperties, RealSignMatchesFloatEmbedding) {
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Cyclotomic a = Cyclotomic::from_real_parts(testing::random_small_rational(rng, 9, 5),
                                                     testing::random_small_rational(rng, 9, 5));
    const double v = a.to_float().re;
    if (std::abs(v) <= 1e-9) continue;
    ++checked;
    EXPECT_EQ(a.real_sign(), v > 0 ? 1 : -1) << a;
  }
  EXPECT_GT(checked, 900);
}

TEST_F(CyclotomicProperties, NormIsNonNegativeReal) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testing::random_cyclotomic(rng);
    const Cyclotomic n = a * a.conj();
    ASSERT_TRUE(n.is_real());
    if (a.is_zero())
      EXPECT_EQ(n.real_sign(), 0);
    else
      EXPECT_EQ(n.real_sign(), 1);
  }
}

}  // namespace
}  // namespace qhl
