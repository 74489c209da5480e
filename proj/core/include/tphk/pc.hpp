#pragma once

#include <utility>
#include <vector>

#include "tphk/laurent.hpp"
#include "tphk/rational.hpp"
#include "tphk/shift.hpp"

namespace tphk {

/// exp(i beta arg(-t/tau)), principal arg in (-pi, pi]; jumps only at tau.
struct JumpFactor {
  cplx tau;
  cplx beta;
};

enum class FixedPoint { Plus, Minus };

/// (-chi)^beta for t_+ and chi^beta for t_-, principal branch. Satisfies
/// psi * psi_alpha = 1 and jumps only at its fixed point.
struct PsiFactor {
  FixedPoint which;
  cplx beta;
};

struct PCSymbol {
  RationalSymbol base = RationalSymbol::constant(1.0);
  std::vector<JumpFactor> jumps;
  std::vector<PsiFactor> psi;

  static PCSymbol from_rational(RationalSymbol r) { return {std::move(r), {}, {}}; }
  bool has_jump_at(cplx t, const ShiftParams& shift, double tol = 1e-12) const;
  /// Every point where some factor may jump.
  std::vector<cplx> jump_points(const ShiftParams& shift) const;
};

PCSymbol operator*(const PCSymbol& x, const PCSymbol& y);
PCSymbol operator*(cplx s, const PCSymbol& x);

cplx eval_jump(const JumpFactor& f, cplx t);
cplx eval_psi(const PsiFactor& f, cplx t, const ShiftParams& shift);
/// Throws AtJumpPoint when t is a discontinuity.
cplx eval_pc(const PCSymbol& s, cplx t, const ShiftParams& shift);

/// (value at t - 0, value at t + 0), t - 0 approached clockwise.
std::pair<cplx, cplx> one_sided_limits(const JumpFactor& f, cplx t);
std::pair<cplx, cplx> one_sided_limits(const PsiFactor& f, cplx t, const ShiftParams& shift);
std::pair<cplx, cplx> one_sided_limits(const PCSymbol& s, cplx t, const ShiftParams& shift);

/// nu_p(y) and h_p(y); y = +-inf gives (1, 0) and (0, 0).
std::pair<cplx, cplx> nu_h(double y, double p);

struct FredholmGrid {
  int t_points = 512;
  int y_points = 201;
};

struct FredholmReport {
  double min_det = 0.0;     // over the open arc, including jump points
  double min_scalar = 0.0;  // over {t_+, t_-} x extended reals
  cplx argmin_t;
  double argmin_y = 0.0;
  bool fredholm = false;
};

FredholmReport fredholm_symbol_check(const PCSymbol& a, const PCSymbol& b, double p, const ShiftParams& shift,
                                     const FredholmGrid& grid = {}, double threshold = 1e-8);

/// Peels a psi factor at t_+ (or uses continuity there) and reads the
/// signature off the remaining factor.
int pc_alpha_signature(const PCSymbol& g, double p, const ShiftParams& shift);

/// Fourier coefficients first..last. Jump factors use closed-form
/// coefficients; the smooth remainder is expanded on a grid.
TruncatedSeries pc_fourier_coefficients(const PCSymbol& s, int first, int last, const ShiftParams& shift);

}  // namespace tphk
