#pragma once

#include "tphk/rational.hpp"
#include "tphk/shift.hpp"
#include "tphk/wiener_hopf.hpp"

namespace tphk {

inline constexpr double kMatchingTol = 1e-8;

/// (a, b) with a a_alpha = b b_alpha and its subordinated pair
/// c = a b^-1, d = b a_alpha^-1.
struct MatchingPair {
  RationalSymbol a, b;
  RationalSymbol c, d;
  int kappa1 = 0;  // ind T(c)
  int kappa2 = 0;  // ind T(d)
  int sigma_c = 1;
  int sigma_d = 1;
};

/// sup over a 512-point grid of |a a_alpha - b b_alpha|. Throws
/// NotInvertible when a or b vanishes on the circle.
double check_matching(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift);

/// sup of |g g_alpha - 1| on the same grid.
double matching_defect(const RationalSymbol& g, const ShiftParams& shift);

struct Subordinated {
  RationalSymbol c, d;
  int kappa1, kappa2;
};

/// Throws NotMatching when check_matching exceeds kMatchingTol.
Subordinated subordinated_pair(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift);

/// sigma_alpha(g) = (lambda / conj(beta))^n g_+^-1(1 / conj(beta)), n = ind T(g),
/// cross-checked against g(t_+) and g(t_-) (-1)^n. Throws NotMatching,
/// NotFredholm, SignatureIndeterminate (not within 1e-6 of +-1) or
/// CrossCheckMismatch.
int alpha_signature(const RationalSymbol& g, const ShiftParams& shift);

/// The closed-form value before snapping, for diagnostics.
cplx alpha_signature_raw(const RationalSymbol& g, const ShiftParams& shift);

/// sigma g_+ chi^-n (g_+^-1)_alpha. Throws BadPlusFactor unless every zero
/// and pole of g_plus lies outside the closed disk.
RationalSymbol generate_matching_function(const RationalSymbol& g_plus, int n, int sigma, const ShiftParams& shift);

/// Fills c, d, the indices and the signatures. Throws NotMatching.
MatchingPair make_matching_pair(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift);

/// (a, a_alpha rho) for a matching rho.
MatchingPair generate_matching_pair(const RationalSymbol& a, const RationalSymbol& rho, const ShiftParams& shift);

/// (conj a, (conj b)_alpha); its subordinated pair is (conj d, conj c).
MatchingPair adjoint_pair(const MatchingPair& pair, const ShiftParams& shift);

}  // namespace tphk
