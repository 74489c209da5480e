#include "tphk/matching.hpp"

#include <cmath>
#include <numbers>

#include "tphk/error.hpp"

namespace tphk {

namespace {

constexpr int kGrid = 512;

cplx grid_point(int j) { return std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / kGrid); }

void require_invertible(const RationalSymbol& s, const char* name) {
  if (s.is_zero()) throw Error(ErrorCode::NotInvertible, std::string(name) + " is identically zero");
  for (const auto& r : s.roots())
    if (r.mult > 0 && std::abs(std::abs(r.z) - 1.0) < kCircleAnnulus)
      throw Error(ErrorCode::NotInvertible, std::string(name) + " vanishes on the unit circle");
}

int snap(cplx v, const char* what) {
  if (std::abs(v - 1.0) < 1e-6) return 1;
  if (std::abs(v + 1.0) < 1e-6) return -1;
  throw Error(ErrorCode::SignatureIndeterminate,
              std::string(what) + " is not +-1 (got " + std::to_string(v.real()) + ", " + std::to_string(v.imag()) + ")");
}

}  // namespace

double check_matching(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift) {
  require_invertible(a, "a");
  require_invertible(b, "b");
  const auto aa = compose_with_shift(a, shift);
  const auto ba = compose_with_shift(b, shift);
  double r = 0.0;
  for (int j = 0; j < kGrid; ++j) {
    const cplx t = grid_point(j);
    r = std::max(r, std::abs(a(t) * aa(t) - b(t) * ba(t)));
  }
  return r;
}

double matching_defect(const RationalSymbol& g, const ShiftParams& shift) {
  const auto ga = compose_with_shift(g, shift);
  double r = 0.0;
  for (int j = 0; j < kGrid; ++j) {
    const cplx t = grid_point(j);
    r = std::max(r, std::abs(g(t) * ga(t) - 1.0));
  }
  return r;
}

Subordinated subordinated_pair(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift) {
  const double res = check_matching(a, b, shift);
  if (res >= kMatchingTol) throw Error(ErrorCode::NotMatching, "a a_alpha != b b_alpha (residual " + std::to_string(res) + ")");
  Subordinated s;
  s.c = a * invert(b);
  s.d = b * invert(compose_with_shift(a, shift));
  s.kappa1 = -winding_number(s.c);
  s.kappa2 = -winding_number(s.d);
  return s;
}

cplx alpha_signature_raw(const RationalSymbol& g, const ShiftParams& shift) {
  const auto fac = factorize(g);
  const cplx bb = std::conj(shift.beta);
  return std::pow(shift.lambda / bb, fac.kappa) * eval_gplus_inverse_at(fac, 1.0 / bb);
}

int alpha_signature(const RationalSymbol& g, const ShiftParams& shift) {
  const double defect = matching_defect(g, shift);
  if (defect >= kMatchingTol) throw Error(ErrorCode::NotMatching, "g g_alpha != 1 (defect " + std::to_string(defect) + ")");
  const auto fac = factorize(g);
  const cplx bb = std::conj(shift.beta);
  const cplx xi = std::pow(shift.lambda / bb, fac.kappa) * eval_gplus_inverse_at(fac, 1.0 / bb);
  const int sigma = snap(xi, "factorization signature");
  // Rational symbols are continuous at both fixed points, so both rules apply.
  const int at_plus = snap(eval_symbol(g, shift.t_plus), "g(t+)");
  const int at_minus = snap(eval_symbol(g, shift.t_minus) * (fac.kappa % 2 ? -1.0 : 1.0), "g(t-)(-1)^n");
  if (at_plus != sigma || at_minus != sigma)
    throw Error(ErrorCode::CrossCheckMismatch, "signature " + std::to_string(sigma) + " vs fixed-point values " +
                                                   std::to_string(at_plus) + ", " + std::to_string(at_minus));
  return sigma;
}

RationalSymbol generate_matching_function(const RationalSymbol& g_plus, int n, int sigma, const ShiftParams& shift) {
  if (g_plus.is_zero()) throw Error(ErrorCode::BadPlusFactor, "zero plus factor");
  for (const auto& r : g_plus.roots())
    if (std::abs(r.z) <= 1.0 + kCircleAnnulus)
      throw Error(ErrorCode::BadPlusFactor, "plus factor has a zero or pole in the closed disk");
  if (sigma != 1 && sigma != -1) throw Error(ErrorCode::InvalidInput, "sigma must be +1 or -1");
  return static_cast<double>(sigma) * (g_plus * chi_power(shift, -n) * invert(compose_with_shift(g_plus, shift)));
}

MatchingPair make_matching_pair(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift) {
  auto s = subordinated_pair(a, b, shift);
  MatchingPair p;
  p.a = a;
  p.b = b;
  p.c = s.c;
  p.d = s.d;
  p.kappa1 = s.kappa1;
  p.kappa2 = s.kappa2;
  p.sigma_c = alpha_signature(p.c, shift);
  p.sigma_d = alpha_signature(p.d, shift);
  return p;
}

MatchingPair generate_matching_pair(const RationalSymbol& a, const RationalSymbol& rho, const ShiftParams& shift) {
  require_invertible(a, "a");
  const double defect = matching_defect(rho, shift);
  if (defect >= kMatchingTol) throw Error(ErrorCode::NotMatching, "rho rho_alpha != 1");
  return make_matching_pair(a, compose_with_shift(a, shift) * rho, shift);
}

MatchingPair adjoint_pair(const MatchingPair& pair, const ShiftParams& shift) {
  auto adj = make_matching_pair(conjugate_bar(pair.a), compose_with_shift(conjugate_bar(pair.b), shift), shift);
  const auto dbar = conjugate_bar(pair.d);
  const auto cbar = conjugate_bar(pair.c);
  if (!nearly_equal(adj.c, dbar, 1e-10) || !nearly_equal(adj.d, cbar, 1e-10))
    throw Error(ErrorCode::CrossCheckMismatch, "adjoint subordinated pair differs from (conj d, conj c)");
  if (adj.kappa1 != -pair.kappa2 || adj.kappa2 != -pair.kappa1)
    throw Error(ErrorCode::CrossCheckMismatch, "adjoint indices are not (-kappa2, -kappa1)");
  return adj;
}

}  // namespace tphk
