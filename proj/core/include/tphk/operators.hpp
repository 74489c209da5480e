#pragma once

#include "tphk/fourier.hpp"
#include "tphk/rational.hpp"
#include "tphk/shift.hpp"

namespace tphk {

/// Pointwise product a * f, re-expanded on a grid.
TruncatedSeries multiply(const RationalSymbol& a, const TruncatedSeries& f, const GridOptions& opt = {});

/// T(a) f = P(a P f).
TruncatedSeries toeplitz_apply(const RationalSymbol& a, const TruncatedSeries& f, const GridOptions& opt = {});

/// H_alpha(b) f = P(b Q J_alpha P f).
TruncatedSeries hankel_apply(const RationalSymbol& b, const TruncatedSeries& f, const ShiftParams& shift,
                             const GridOptions& opt = {});

/// (T(a) + sign H_alpha(b)) f with sign = +1 or -1.
TruncatedSeries toeplitz_plus_hankel_apply(const RationalSymbol& a, const RationalSymbol& b, int sign,
                                           const TruncatedSeries& f, const ShiftParams& shift,
                                           const GridOptions& opt = {});

/// ||T f|| / ||f|| style relative size of a result, guarding f = 0.
double relative_norm(const TruncatedSeries& r, const TruncatedSeries& f);

}  // namespace tphk
