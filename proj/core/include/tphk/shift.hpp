#pragma once

#include "tphk/fourier.hpp"
#include "tphk/laurent.hpp"
#include "tphk/rational.hpp"

namespace tphk {

/// alpha(t) = (t - beta) / (conj(beta) t - 1) with |beta| > 1 and its
/// derived data. Build with make_shift; the invariants are checked there.
struct ShiftParams {
  cplx beta;
  cplx lambda;   // i sqrt(|beta|^2 - 1)
  cplx t_plus;   // (1 + lambda) / conj(beta)
  cplx t_minus;  // (1 - lambda) / conj(beta)
  RationalSymbol alpha_plus;   // (t - beta) / lambda
  RationalSymbol alpha_minus;  // lambda t / (conj(beta) t - 1)
  RationalSymbol chi;          // t / alpha_minus
  RationalSymbol psi_cap;      // t / alpha_plus

  /// 1 / conj(beta), the zero of chi inside the disk.
  cplx inner_point() const { return 1.0 / std::conj(beta); }
};

/// Throws BetaInsideDisk unless |beta| > 1 + 1e-10.
ShiftParams make_shift(cplx beta);

/// Throws PoleHit at t = 1/conj(beta).
cplx eval_alpha(const ShiftParams& shift, cplx t);

/// s(alpha(t)) as a reduced rational symbol.
RationalSymbol compose_with_shift(const RationalSymbol& s, const ShiftParams& shift);

RationalSymbol chi_power(const ShiftParams& shift, int k);

/// (J_alpha s)(t) = t^-1 alpha_minus(t) s(alpha(t)) = chi^-1(t) s(alpha(t)), exactly.
RationalSymbol apply_J_alpha(const RationalSymbol& s, const ShiftParams& shift);

/// The same operator on a coefficient window, through grid samples and FFT.
TruncatedSeries apply_J_alpha(const TruncatedSeries& f, const ShiftParams& shift, const GridOptions& opt = {});

/// Extra window width needed for a |beta|^-k tail to reach `tol`.
int shift_tail_width(const ShiftParams& shift, double tol = 1e-10);

}  // namespace tphk
