#include "tphk/operators.hpp"

namespace tphk {

TruncatedSeries multiply(const RationalSymbol& a, const TruncatedSeries& f, const GridOptions& opt) {
  if (a.is_zero() || f.empty()) return {};
  if (a.is_constant()) return a.gain() * f;
  return multiply_on_grid([&a](cplx t) { return a(t); }, f, opt);
}

TruncatedSeries toeplitz_apply(const RationalSymbol& a, const TruncatedSeries& f, const GridOptions& opt) {
  return multiply(a, f.project(Projection::P), opt).project(Projection::P);
}

TruncatedSeries hankel_apply(const RationalSymbol& b, const TruncatedSeries& f, const ShiftParams& shift,
                             const GridOptions& opt) {
  auto j = apply_J_alpha(f.project(Projection::P), shift, opt).project(Projection::Q);
  return multiply(b, j, opt).project(Projection::P);
}

TruncatedSeries toeplitz_plus_hankel_apply(const RationalSymbol& a, const RationalSymbol& b, int sign,
                                           const TruncatedSeries& f, const ShiftParams& shift,
                                           const GridOptions& opt) {
  auto t = toeplitz_apply(a, f, opt);
  auto h = hankel_apply(b, f, shift, opt);
  return sign >= 0 ? t + h : t - h;
}

double relative_norm(const TruncatedSeries& r, const TruncatedSeries& f) {
  const double nf = f.norm2();
  return nf > 0.0 ? r.norm2() / nf : r.norm2();
}

}  // namespace tphk
