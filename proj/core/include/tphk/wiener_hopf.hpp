#pragma once

#include "tphk/fourier.hpp"
#include "tphk/rational.hpp"

namespace tphk {

/// g = g_minus * t^(-kappa) * g_plus with kappa = ind T(g) = -wind g.
/// g_plus has every zero and pole outside the closed disk, g_minus inside
/// the open disk, and g_minus(infinity) = 1.
struct WHFactorization {
  int kappa = 0;
  RationalSymbol g_plus;
  RationalSymbol g_minus;

  /// The product g_minus t^-kappa g_plus.
  RationalSymbol reconstruct() const;
};

/// Splits roots by modulus. Throws NotFredholm when a zero or pole lies in
/// the circle annulus (or g vanishes identically).
WHFactorization factorize(const RationalSymbol& g);

enum class InverseSide { Right, Left, TwoSided };

/// Right (kappa >= 0): g_+^-1 P(g_-^-1 t^kappa h).
/// Left (kappa <= 0):  P(t^kappa g_+^-1 P(g_-^-1 h)).
/// Throws WrongSide when kappa does not allow the requested side.
TruncatedSeries apply_one_sided_inverse(const WHFactorization& fac, const TruncatedSeries& h, InverseSide side,
                                        const GridOptions& opt = {});

/// 1 / g_plus(z) for |z| < 1.
cplx eval_gplus_inverse_at(const WHFactorization& fac, cplx z);

}  // namespace tphk
