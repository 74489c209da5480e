#include "tphk/wiener_hopf.hpp"

#include <cmath>

#include "tphk/error.hpp"
#include "tphk/operators.hpp"

namespace tphk {

RationalSymbol WHFactorization::reconstruct() const {
  return g_minus * RationalSymbol::monomial(-kappa) * g_plus;
}

WHFactorization factorize(const RationalSymbol& g) {
  if (g.is_zero()) throw Error(ErrorCode::NotFredholm, "zero symbol");
  std::vector<Root> inner, outer;
  int wind = 0;
  int inner_shift = 0;
  for (const auto& r : g.roots()) {
    const double rho = std::abs(r.z);
    if (std::abs(rho - 1.0) < kCircleAnnulus) throw Error(ErrorCode::NotFredholm, "zero or pole on the unit circle");
    if (rho < 1.0) {
      wind += r.mult;
      if (r.z != cplx(0.0)) {
        // (t - z)^m = t^m (1 - z/t)^m: the t^m part moves into t^-kappa.
        inner.push_back(r);
        inner_shift -= r.mult;
      }
    } else {
      outer.push_back(r);
    }
  }
  if (inner_shift != 0) inner.push_back({0.0, inner_shift});
  WHFactorization f;
  f.kappa = -wind;
  f.g_minus = RationalSymbol::from_roots(1.0, std::move(inner));
  f.g_plus = RationalSymbol::from_roots(g.gain(), std::move(outer));
  return f;
}

TruncatedSeries apply_one_sided_inverse(const WHFactorization& fac, const TruncatedSeries& h, InverseSide side,
                                        const GridOptions& opt) {
  const int k = fac.kappa;
  if ((side == InverseSide::Right && k < 0) || (side == InverseSide::Left && k > 0) ||
      (side == InverseSide::TwoSided && k != 0))
    throw Error(ErrorCode::WrongSide, "index " + std::to_string(k) + " does not admit this inverse");
  const auto gm_inv = invert(fac.g_minus);
  const auto gp_inv = invert(fac.g_plus);
  if (side == InverseSide::Left) {
    auto inner = multiply(gm_inv, h.project(Projection::P), opt).project(Projection::P);
    return multiply(RationalSymbol::monomial(k) * gp_inv, inner, opt).project(Projection::P);
  }
  auto inner = multiply(gm_inv * RationalSymbol::monomial(k), h.project(Projection::P), opt).project(Projection::P);
  return multiply(gp_inv, inner, opt);
}

cplx eval_gplus_inverse_at(const WHFactorization& fac, cplx z) { return 1.0 / fac.g_plus(z); }

}  // namespace tphk
