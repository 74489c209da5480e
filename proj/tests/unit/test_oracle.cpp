#include <gtest/gtest.h>

#include <cstdio>

#include "tphk/error.hpp"
#include "tphk/oracle.hpp"
#include "tphk/shift.hpp"

using namespace tphk;

namespace {
const cplx kI(0.0, 1.0);
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

TEST(OperatorSection, ToeplitzOfOneIsIdentity) {
  auto sh = make_shift(2.0);
  auto one = RationalSymbol::constant(1.0);
  auto s = operator_section(SectionKind::Toeplitz, one, one, sh, 16);
  EXPECT_LE((s.entries - Eigen::MatrixXcd::Identity(16, 16)).norm(), 1e-15);
}

TEST(OperatorSection, HankelOfOneIsZero) {
  auto sh = make_shift(2.0);
  auto one = RationalSymbol::constant(1.0);
  auto s = operator_section(SectionKind::HankelAlpha, one, one, sh, 32);
  EXPECT_LE(s.entries.cwiseAbs().maxCoeff(), 1e-13);
}

TEST(OperatorSection, ToeplitzOfChi) {
  auto sh = make_shift(2.0);
  auto s = toeplitz_section(sh.chi, 3, 3);
  Eigen::Matrix3cd want;
  const cplx d0 = kI / kSqrt3, d1 = -2.0 * kI / kSqrt3;
  want << d0, 0, 0, d1, d0, 0, 0, d1, d0;
  EXPECT_LE((s.entries - want).norm(), 1e-14);
  EXPECT_THROW(operator_section(SectionKind::Toeplitz, sh.chi, sh.chi, sh, 3), Error);
}

TEST(OperatorSection, HankelMatchesSeriesDefinition) {
  auto sh = make_shift(cplx(1.5, 0.5));
  auto b = RationalSymbol::from_roots(2.0, {{3.0, 1}, {0.4, -1}});
  auto s = hankel_section(b, sh, 32, 16);
  for (int k = 0; k < 16; k += 5) {
    // P[b J_alpha t^k] with J_alpha t^k = chi^-1 alpha^k
    auto jk = apply_J_alpha(power(RationalSymbol::monomial(1), k), sh);
    auto col = fourier_coefficients(b * jk, 0, 31);
    for (int i = 0; i < 32; ++i) EXPECT_NEAR(std::abs(s.entries(i, k) - col[i]), 0.0, 1e-11) << i << "," << k;
  }
}

TEST(OperatorSection, StableAcrossSizes) {
  auto sh = make_shift(2.0);
  auto a = power(invert(sh.chi), 2);
  auto s1 = operator_section(SectionKind::Plus, a, a, sh, 64);
  auto s2 = operator_section(SectionKind::Plus, a, a, sh, 128);
  EXPECT_LE((s1.entries.topLeftCorner(32, 32) - s2.entries.topLeftCorner(32, 32)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(OperatorSection, ProductIdentityForToeplitzAndHankel) {
  // T(cd) = T(c) T(d) + H(c) H(d_alpha)
  auto sh = make_shift(2.0);
  auto c = RationalSymbol::from_roots(1.0, {{2.5, 1}, {0.3, -1}});
  auto d = RationalSymbol::from_roots(cplx(0, 1), {{0.5, 1}, {3.0, -1}});
  const int N = 64, M = 128;
  auto tcd = toeplitz_section(c * d, N, N);
  auto tc = toeplitz_section(c, N, M);
  auto td = toeplitz_section(d, M, N);
  auto hc = hankel_section(c, sh, N, M);
  auto hd = hankel_section(compose_with_shift(d, sh), sh, M, N);
  Eigen::MatrixXcd rhs = tc.entries * td.entries + hc.entries * hd.entries;
  EXPECT_LE((tcd.entries - rhs).topLeftCorner(N / 2, N / 2).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(NullSpace, Identity) {
  EXPECT_EQ(numerical_null_space(Eigen::MatrixXcd::Identity(10, 10)).dim, 0);
}

TEST(NullSpace, ToeplitzChiInverseHasConstants) {
  auto sh = make_shift(2.0);
  auto s = toeplitz_section(invert(sh.chi), 64, 64);
  auto ns = numerical_null_space(s);
  ASSERT_EQ(ns.dim, 1);
  EXPECT_NEAR(std::abs(ns.vectors(0, 0)), 1.0, 1e-12);
}

TEST(NullSpace, NoGapRaises) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  m(3, 3) = 1e-9;
  m(2, 2) = 3e-8;
  try {
    numerical_null_space(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSpectralGap);
  }
}

TEST(NullSpace, PlusSectionOfGoldenPair) {
  auto sh = make_shift(2.0);
  auto a = power(invert(sh.chi), 2);
  auto sec = operator_section(SectionKind::Plus, a, a, sh, 512, 256);
  EXPECT_EQ(numerical_null_space(sec).dim, 2);
  auto sq = operator_section(SectionKind::Plus, a, a, sh, 512);
  auto d = estimate_defects(sq, 256);
  EXPECT_EQ(d.ker, 2);
  EXPECT_EQ(d.coker, 0);
}

TEST(ResidualCheck, Examples) {
  auto sh = make_shift(2.0);
  auto s = toeplitz_section(invert(sh.chi), 64, 64);
  EXPECT_LT(residual_check(s, TruncatedSeries(0, {1.0})), 1e-10);
  FiniteSection id{Eigen::MatrixXcd::Identity(16, 16), "id"};
  EXPECT_NEAR(residual_check(id, TruncatedSeries(0, {1.0})), 1.0, 1e-15);
  try {
    residual_check(id, TruncatedSeries(20, {1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowTooTight);
  }
}

TEST(ResidualCheck, KernelBasisOfChiMinusFour) {
  auto sh = make_shift(2.0);
  auto g = chi_power(sh, -4);
  auto s = toeplitz_section(g, 256, 256);
  // g_+ = lambda^4 / conj(beta)^4 = 9/16 for chi^-4
  auto basis = fourier_coefficients(RationalSymbol::constant(16.0 / 9.0) * sh.chi, 0, 4);
  auto basis2 = fourier_coefficients(RationalSymbol::constant(16.0 / 9.0) * chi_power(sh, 2), 0, 4);
  EXPECT_LT(residual_check(s, basis + basis2), 1e-8);
}

TEST(BlockV, NullDimensionMatchesDiagonal) {
  auto sh = make_shift(2.0);
  auto a = power(invert(sh.chi), 2);
  auto block = operator_section(SectionKind::BlockV, a, a, sh, 256, 128);
  auto plus = operator_section(SectionKind::Plus, a, a, sh, 256, 128);
  auto minus = operator_section(SectionKind::Minus, a, a, sh, 256, 128);
  EXPECT_EQ(numerical_null_space(block).dim, numerical_null_space(plus).dim + numerical_null_space(minus).dim);
}

TEST(SectionDump, RoundTrip) {
  auto sh = make_shift(2.0);
  auto s = toeplitz_section(sh.chi, 8, 8);
  const std::string path = ::testing::TempDir() + "section.tphk";
  write_section(path, s);
  auto r = read_section(path);
  EXPECT_EQ((r.entries - s.entries).norm(), 0.0);
  std::FILE* f = std::fopen(path.c_str(), "rb");
  ASSERT_NE(f, nullptr);
  std::fseek(f, 0, SEEK_END);
  EXPECT_EQ(std::ftell(f), 16 + 8 * 8 * 16);
  std::fclose(f);
  std::remove(path.c_str());
}
