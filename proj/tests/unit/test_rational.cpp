#include <gtest/gtest.h>

#include <random>

#include "tphk/error.hpp"
#include "tphk/rational.hpp"
#include "tphk/shift.hpp"

using namespace tphk;

namespace {

const cplx kI(0.0, 1.0);
const double kSqrt3 = std::sqrt(3.0);

cplx circle(double theta) { return std::polar(1.0, theta); }

RationalSymbol random_symbol(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Root> roots;
  const int count = 1 + static_cast<int>(rng() % 4);
  for (int k = 0; k < count; ++k) {
    double r = u(rng) < 0.5 ? 0.2 + 0.6 * u(rng) : 1.3 + 2.0 * u(rng);
    roots.push_back({std::polar(r, 6.28 * u(rng)), u(rng) < 0.5 ? 1 : -1});
  }
  return RationalSymbol::from_roots({0.5 + u(rng), u(rng)}, roots);
}

}  // namespace

TEST(PolynomialRoots, QuadraticAndRepeated) {
  std::vector<cplx> c{2.0, -3.0, 1.0};  // (t-1)(t-2)
  auto r = polynomial_roots(c);
  ASSERT_EQ(r.size(), 2u);
  double s = std::abs(r[0].z) + std::abs(r[1].z);
  EXPECT_NEAR(s, 3.0, 1e-12);

  std::vector<cplx> cube{-0.125, 0.75, -1.5, 1.0};  // (t - 1/2)^3
  auto rr = polynomial_roots(cube);
  ASSERT_EQ(rr.size(), 1u);
  EXPECT_EQ(rr[0].mult, 3);
  EXPECT_NEAR(std::abs(rr[0].z - 0.5), 0.0, 1e-10);
}

TEST(PolynomialRoots, KeepsCloseButDistinctRoots) {
  // (t - 0.5)(t - 0.5001)
  std::vector<cplx> c{0.5 * 0.5001, -1.0001, 1.0};
  auto r = polynomial_roots(c);
  EXPECT_EQ(r.size(), 2u);
}

TEST(RationalSymbol, FromLaurentCancelsCommonFactors) {
  // (2t - 1)^2 (t + 3) / (2t - 1)^2
  LaurentPolynomial f(0, {-1.0, 2.0});
  LaurentPolynomial num = f * f * LaurentPolynomial(0, {3.0, 1.0});
  auto s = RationalSymbol::from_laurent(num, f * f);
  ASSERT_EQ(s.roots().size(), 1u);
  EXPECT_NEAR(std::abs(s.roots()[0].z + 3.0), 0.0, 1e-9);
}

TEST(RationalSymbol, RejectsDenominatorOnCircle) {
  EXPECT_THROW(RationalSymbol::from_laurent(LaurentPolynomial::constant(1.0), LaurentPolynomial(0, {-1.0, 1.0})), Error);
}

TEST(EvalSymbol, ConstantAndChiAtFixedPoints) {
  EXPECT_EQ(eval_symbol(RationalSymbol::constant(5.0), 1.0), cplx(5.0));
  auto sh = make_shift(2.0);
  const cplx tp = (1.0 + kI * kSqrt3) / 2.0;
  const cplx tm = (1.0 - kI * kSqrt3) / 2.0;
  EXPECT_NEAR(std::abs(eval_symbol(sh.chi, tp) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eval_symbol(sh.chi, tm) + 1.0), 0.0, 1e-14);
}

TEST(EvalSymbol, Errors) {
  auto s = RationalSymbol::from_roots(1.0, {{0.999999999999999, -1}});
  EXPECT_THROW(eval_symbol(s, 1.0), Error);
  EXPECT_THROW(eval_symbol(RationalSymbol::constant(1.0), 2.0), Error);
  try {
    eval_symbol(s, 1.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DenominatorNearZero);
  }
}

TEST(SymbolAlgebra, ConjugateBarOfT) {
  auto t = RationalSymbol::monomial(1);
  auto tb = conjugate_bar(t);
  EXPECT_TRUE(nearly_equal(tb, RationalSymbol::monomial(-1), 1e-14));
}

TEST(SymbolAlgebra, InvertChiHasPoleAtHalf) {
  auto sh = make_shift(2.0);
  auto inv = invert(sh.chi);
  ASSERT_EQ(inv.roots().size(), 1u);
  EXPECT_EQ(inv.roots()[0].mult, -1);
  EXPECT_NEAR(std::abs(inv.roots()[0].z - 0.5), 0.0, 1e-15);
  // i sqrt3 / (2t - 1)
  const cplx t = circle(0.4);
  EXPECT_NEAR(std::abs(inv(t) - kI * kSqrt3 / (2.0 * t - 1.0)), 0.0, 1e-14);
}

TEST(SymbolAlgebra, ChiTimesChiAlphaIsOne) {
  auto sh = make_shift(2.0);
  auto prod = multiply(sh.chi, compose_with_shift(sh.chi, sh));
  EXPECT_TRUE(prod.is_constant());
  EXPECT_NEAR(std::abs(prod.gain() - 1.0), 0.0, 1e-13);
}

TEST(SymbolAlgebra, InvertRejectsZeroOnCircle) {
  auto s = RationalSymbol::from_roots(1.0, {{1.0, 1}});
  try {
    invert(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertibleOnCircle);
  }
}

TEST(SymbolAlgebra, Properties) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 6.283);
  for (int trial = 0; trial < 50; ++trial) {
    auto s1 = random_symbol(rng);
    auto s2 = random_symbol(rng);
    auto bb = conjugate_bar(conjugate_bar(s1));
    EXPECT_TRUE(nearly_equal(bb, s1, 1e-12));
    EXPECT_EQ(winding_number(s1 * s2), winding_number(s1) + winding_number(s2));
    for (int k = 0; k < 8; ++k) {
      const cplx t = circle(u(rng));
      const cplx lhs = eval_symbol(multiply(s1, s2), t);
      const cplx rhs = eval_symbol(s1, t) * eval_symbol(s2, t);
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
      EXPECT_NEAR(std::abs(eval_symbol(conjugate_bar(s1), t) - std::conj(eval_symbol(s1, t))), 0.0,
                  1e-12 * std::max(1.0, std::abs(s1(t))));
    }
  }
}

TEST(WindingNumber, Examples) {
  auto sh = make_shift(2.0);
  EXPECT_EQ(winding_number(sh.chi), 1);
  EXPECT_EQ(winding_number(RationalSymbol::constant(5.0)), 0);
  EXPECT_EQ(winding_number(RationalSymbol::monomial(-3) * power(sh.chi, 2)), -1);
  auto bad = RationalSymbol::from_roots(1.0, {{1.0 + 1e-10, 1}});
  try {
    winding_number(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllConditionedRoots);
  }
}

TEST(RationalSymbol, NumeratorDenominatorRoundTrip) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_symbol(rng);
    auto r = RationalSymbol::from_laurent(s.numerator(), s.denominator());
    EXPECT_TRUE(nearly_equal(r, s, 1e-10));
  }
}

TEST(SymbolAlgebra, AdditionIsPointwise) {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.0, 6.283);
  for (int trial = 0; trial < 30; ++trial) {
    auto s1 = random_symbol(rng);
    auto s2 = random_symbol(rng);
    auto sum = s1 + s2;
    auto diff = s1 - s2;
    for (int k = 0; k < 8; ++k) {
      const cplx t = circle(u(rng));
      const double scale = std::max({1.0, std::abs(s1(t)), std::abs(s2(t))});
      EXPECT_LE(std::abs(sum(t) - (s1(t) + s2(t))), 1e-10 * scale);
      EXPECT_LE(std::abs(diff(t) - (s1(t) - s2(t))), 1e-10 * scale);
    }
  }
  auto s = RationalSymbol::from_roots(2.0, {{0.5, -1}});
  EXPECT_TRUE((s - s).is_zero());
}
