#pragma once

#include <functional>
#include <vector>

#include "tphk/laurent.hpp"
#include "tphk/rational.hpp"

namespace tphk {

struct GridOptions {
  int min_size = 1024;
  int max_size = 1 << 20;
  /// Aliasing tolerance, relative to max(1, max|c_k|).
  double tol = 1e-12;
};

/// Samples of f at t_j = exp(2 pi i j / M), j = 0..M-1.
std::vector<cplx> circle_grid(int M);

/// Coefficients c_n = (1/M) sum_j v_j t_j^-n of grid samples, for n in
/// [first, last]; the result's `tail()` is the largest coefficient seen in
/// the aliasing band |n| >= 3M/8.
TruncatedSeries coefficients_from_samples(std::vector<cplx> samples, int first, int last);

/// Values of a finite series on the M-point grid (inverse FFT, aliased).
std::vector<cplx> samples_from_series(const TruncatedSeries& f, int M);

/// Fourier coefficients of a smooth function on the circle. The grid is
/// doubled from min_size until the coefficients in the aliasing band fall
/// below tol. Throws GridTooSmall at the cap.
///
/// The windowed form keeps [first, last]; the other keeps every coefficient
/// above tol in the resolved band.
TruncatedSeries expand_function(const std::function<cplx(cplx)>& f, int first, int last,
                                const GridOptions& opt = {});
TruncatedSeries expand_function(const std::function<cplx(cplx)>& f, const GridOptions& opt = {});

/// Grid-product form used by the operator layer: coefficients of
/// w(t) * f(t) where w is given pointwise, f is a finite series, and the
/// grid is sized for f's window.
TruncatedSeries multiply_on_grid(const std::function<cplx(cplx)>& w, const TruncatedSeries& f,
                                 const GridOptions& opt = {});

/// Exact coefficients of s on [first, last] from partial fractions and
/// geometric series. `tail()` bounds the l1 mass outside the window.
/// Throws IllConditionedRoots when two distinct poles are closer than 1e-6.
TruncatedSeries fourier_exact(const RationalSymbol& s, int first, int last);

/// Exact route when the poles are well separated, FFT quadrature otherwise.
TruncatedSeries fourier_coefficients(const RationalSymbol& s, int first, int last,
                                     const GridOptions& opt = {});

}  // namespace tphk
