#include "tphk/pc.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tphk/error.hpp"
#include "tphk/fourier.hpp"

namespace tphk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJumpTol = 1e-12;
const cplx kI(0.0, 1.0);

cplx fixed_point(FixedPoint w, const ShiftParams& shift) { return w == FixedPoint::Plus ? shift.t_plus : shift.t_minus; }

bool near(cplx x, cplx y, double tol = kJumpTol) { return std::abs(x - y) < tol; }

std::pair<cplx, cplx> jump_limits(cplx beta) { return {std::exp(kI * kPi * beta), std::exp(-kI * kPi * beta)}; }

// Angle of t measured counterclockwise from t_+, in [0, 2 pi).
double angle_from(cplx t, cplx origin) {
  double a = std::arg(t / origin);
  if (a < 0) a += 2.0 * kPi;
  return a;
}

// Coefficient n of phi_{beta,tau}.
cplx jump_coefficient(const JumpFactor& f, int n) {
  const cplx d = f.beta - static_cast<double>(n);
  const cplx s = std::abs(d) < 1e-14 ? cplx(1.0) : std::sin(kPi * f.beta) / (kPi * d);
  return s * std::pow(f.tau, -n);
}

}  // namespace

bool PCSymbol::has_jump_at(cplx t, const ShiftParams& shift, double tol) const {
  for (const auto& j : jumps)
    if (j.beta != cplx(0.0) && near(t, j.tau, tol)) return true;
  for (const auto& p : psi)
    if (p.beta != cplx(0.0) && near(t, fixed_point(p.which, shift), tol)) return true;
  return false;
}

std::vector<cplx> PCSymbol::jump_points(const ShiftParams& shift) const {
  std::vector<cplx> out;
  auto add = [&](cplx t) {
    for (auto u : out)
      if (near(u, t)) return;
    out.push_back(t);
  };
  for (const auto& j : jumps)
    if (j.beta != cplx(0.0)) add(j.tau);
  for (const auto& p : psi)
    if (p.beta != cplx(0.0)) add(fixed_point(p.which, shift));
  return out;
}

PCSymbol operator*(const PCSymbol& x, const PCSymbol& y) {
  PCSymbol r{x.base * y.base, x.jumps, x.psi};
  r.jumps.insert(r.jumps.end(), y.jumps.begin(), y.jumps.end());
  r.psi.insert(r.psi.end(), y.psi.begin(), y.psi.end());
  return r;
}

PCSymbol operator*(cplx s, const PCSymbol& x) { return {s * x.base, x.jumps, x.psi}; }

cplx eval_jump(const JumpFactor& f, cplx t) { return std::exp(kI * f.beta * std::arg(-t / f.tau)); }

cplx eval_psi(const PsiFactor& f, cplx t, const ShiftParams& shift) {
  cplx z = shift.chi(t);
  if (f.which == FixedPoint::Plus) z = -z;
  return std::exp(f.beta * std::log(z));
}

cplx eval_pc(const PCSymbol& s, cplx t, const ShiftParams& shift) {
  if (s.has_jump_at(t, shift)) throw Error(ErrorCode::AtJumpPoint, "symbol is discontinuous at the evaluation point");
  cplx v = s.base(t);
  for (const auto& j : s.jumps) v *= eval_jump(j, t);
  for (const auto& p : s.psi) v *= eval_psi(p, t, shift);
  return v;
}

std::pair<cplx, cplx> one_sided_limits(const JumpFactor& f, cplx t) {
  if (near(t, f.tau)) return jump_limits(f.beta);
  const cplx v = eval_jump(f, t);
  return {v, v};
}

std::pair<cplx, cplx> one_sided_limits(const PsiFactor& f, cplx t, const ShiftParams& shift) {
  if (near(t, fixed_point(f.which, shift))) return jump_limits(f.beta);
  const cplx v = eval_psi(f, t, shift);
  return {v, v};
}

std::pair<cplx, cplx> one_sided_limits(const PCSymbol& s, cplx t, const ShiftParams& shift) {
  const cplx b = s.base(t);
  std::pair<cplx, cplx> r{b, b};
  for (const auto& j : s.jumps) {
    auto [l, u] = one_sided_limits(j, t);
    r.first *= l;
    r.second *= u;
  }
  for (const auto& p : s.psi) {
    auto [l, u] = one_sided_limits(p, t, shift);
    r.first *= l;
    r.second *= u;
  }
  return r;
}

std::pair<cplx, cplx> nu_h(double y, double p) {
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidInput, "p must lie in (1, inf)");
  if (std::isinf(y)) return y > 0 ? std::pair<cplx, cplx>{1.0, 0.0} : std::pair<cplx, cplx>{0.0, 0.0};
  cplx z = kPi * cplx(y, 1.0 / p);
  const double sg = y < 0 ? -1.0 : 1.0;
  z *= sg;  // coth and 1/sinh are odd
  const cplx e = std::exp(-2.0 * z);
  const cplx coth = sg * (1.0 + e) / (1.0 - e);
  const cplx h = sg * 2.0 * std::exp(-z) / (1.0 - e);
  return {0.5 * (1.0 + coth), h};
}

FredholmReport fredholm_symbol_check(const PCSymbol& a, const PCSymbol& b, double p, const ShiftParams& shift,
                                     const FredholmGrid& grid, double threshold) {
  std::vector<double> ys;
  ys.push_back(-std::numeric_limits<double>::infinity());
  for (int k = 0; k < grid.y_points; ++k) ys.push_back(std::atanh(-1.0 + 2.0 * (k + 1) / (grid.y_points + 1)));
  ys.push_back(std::numeric_limits<double>::infinity());
  std::vector<std::pair<cplx, cplx>> nh;
  for (double y : ys) nh.push_back(nu_h(y, p));

  FredholmReport rep;
  rep.min_det = std::numeric_limits<double>::infinity();
  rep.min_scalar = std::numeric_limits<double>::infinity();

  const double span = angle_from(shift.t_minus, shift.t_plus);
  std::vector<cplx> ts;
  for (int k = 0; k < grid.t_points; ++k) ts.push_back(shift.t_plus * std::polar(1.0, span * (k + 0.5) / grid.t_points));
  auto in_open_arc = [&](cplx t) {
    const double th = angle_from(t, shift.t_plus);
    return th > 1e-12 && th < span - 1e-12;
  };
  for (const auto* s : {&a, &b})
    if (s->base.pole_circle_distance() < kCircleAnnulus)
      throw Error(ErrorCode::InvalidInput, "PC symbol base has a pole on the circle");
  std::vector<cplx> critical = a.jump_points(shift);
  for (cplx z : b.jump_points(shift)) critical.push_back(z);
  for (const auto& r : a.base.roots())
    if (r.mult > 0 && std::abs(std::abs(r.z) - 1.0) < kCircleAnnulus) critical.push_back(r.z / std::abs(r.z));
  for (cplx z : critical) {
    if (near(z, shift.t_plus, 1e-10) || near(z, shift.t_minus, 1e-10)) continue;
    ts.push_back(in_open_arc(z) ? z : eval_alpha(shift, z));
  }

  const cplx two_i(0.0, 2.0);
  for (cplx t : ts) {
    const cplx at = eval_alpha(shift, t);
    auto [a_m, a_p] = one_sided_limits(a, t, shift);
    auto [aa_m, aa_p] = one_sided_limits(a, at, shift);
    auto [b_m, b_p] = one_sided_limits(b, t, shift);
    auto [ba_m, ba_p] = one_sided_limits(b, at, shift);
    for (std::size_t k = 0; k < ys.size(); ++k) {
      auto [nu, h] = nh[k];
      const cplx m11 = a_p * nu + a_m * (1.0 - nu);
      const cplx m12 = (b_p - b_m) / two_i * h;
      const cplx m21 = (ba_m - ba_p) / two_i * h;
      const cplx m22 = aa_p * nu + aa_m * (1.0 - nu);
      const double d = std::abs(m11 * m22 - m12 * m21);
      if (d < rep.min_det) {
        rep.min_det = d;
        rep.argmin_t = t;
        rep.argmin_y = ys[k];
      }
    }
  }
  for (auto [t, mu] : {std::pair<cplx, double>{shift.t_plus, 1.0}, {shift.t_minus, -1.0}}) {
    auto [a_m, a_p] = one_sided_limits(a, t, shift);
    auto [b_m, b_p] = one_sided_limits(b, t, shift);
    for (std::size_t k = 0; k < ys.size(); ++k) {
      auto [nu, h] = nh[k];
      const double v = std::abs(a_p * nu + a_m * (1.0 - nu) + mu * (b_p - b_m) / 2.0 * h);
      if (v < rep.min_scalar) {
        rep.min_scalar = v;
        if (v < rep.min_det) {
          rep.argmin_t = t;
          rep.argmin_y = ys[k];
        }
      }
    }
  }
  rep.fredholm = rep.min_det > threshold && rep.min_scalar > threshold;
  return rep;
}

int pc_alpha_signature(const PCSymbol& g, double p, const ShiftParams& shift) {
  const auto jumps = g.jump_points(shift);
  auto close_to_jump = [&](cplx t) {
    for (cplx z : jumps)
      if (std::abs(t - z) < 1e-6) return true;
    return false;
  };
  double defect = 0.0;
  for (int k = 0; k < 512; ++k) {
    const cplx t = std::polar(1.0, 2.0 * kPi * (k + 0.5) / 512);
    const cplx at = eval_alpha(shift, t);
    if (close_to_jump(t) || close_to_jump(at)) continue;
    defect = std::max(defect, std::abs(eval_pc(g, t, shift) * eval_pc(g, at, shift) - 1.0));
  }
  if (!(defect < 1e-8)) throw Error(ErrorCode::NotMatching, "g g_alpha - 1 = " + std::to_string(defect));

  const PCSymbol zero = PCSymbol::from_rational(RationalSymbol::constant(0.0));
  if (!fredholm_symbol_check(g, zero, p, shift).fredholm)
    throw Error(ErrorCode::SignatureIndeterminate, "T(g) is not Fredholm on H^p");

  auto [gm, gp] = one_sided_limits(g, shift.t_plus, shift);
  cplx raw = gp;
  const cplx ratio = gp / gm;
  if (std::abs(ratio - 1.0) > 1e-12) {
    cplx beta = kI / (2.0 * kPi) * std::log(ratio);
    const double q = p / (p - 1.0);
    bool placed = false;
    for (int k = -2; k <= 2 && !placed; ++k) {
      const double re = beta.real() + k;
      if (re > -1.0 / q + 1e-12 && re < 1.0 / p - 1e-12) {
        beta += static_cast<double>(k);
        placed = true;
      }
    }
    if (!placed) throw Error(ErrorCode::SignatureIndeterminate, "jump exponent at t_+ on the strip boundary");
    raw = gp * std::exp(kI * kPi * beta);
  }
  if (std::abs(raw - 1.0) < 1e-6) return 1;
  if (std::abs(raw + 1.0) < 1e-6) return -1;
  throw Error(ErrorCode::SignatureIndeterminate, "residual factor at t_+ is not +-1");
}

TruncatedSeries pc_fourier_coefficients(const PCSymbol& s, int first, int last, const ShiftParams& shift) {
  std::vector<JumpFactor> factors;
  for (const auto& j : s.jumps)
    if (j.beta != cplx(0.0)) factors.push_back(j);
  for (const auto& q : s.psi)
    if (q.beta != cplx(0.0)) factors.push_back({fixed_point(q.which, shift), q.beta});

  // Smooth remainder: base times psi / phi for every psi factor.
  auto smooth = [&](cplx t) {
    cplx v = s.base(t);
    for (const auto& q : s.psi) {
      if (q.beta == cplx(0.0)) continue;
      const cplx tau = fixed_point(q.which, shift);
      cplx u = near(t, tau, 1e-9) ? t * std::polar(1.0, 1e-7) : t;
      v *= eval_psi(q, u, shift) / eval_jump({tau, q.beta}, u);
    }
    return v;
  };
  if (factors.empty()) return expand_function(smooth, first, last);

  auto S = expand_function(smooth).trimmed(1e-16);
  const int width = last - first + 1;
  const int widen = 16 * width + 1024;
  double tail = S.tail();
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const int remaining = static_cast<int>(factors.size() - f - 1);
    const int lo = first - remaining * widen;
    const int hi = last + remaining * widen;
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) {
      cplx acc = 0.0;
      for (int j = S.lo(); j <= S.hi(); ++j) acc += S[j] * jump_coefficient(factors[f], k - j);
      out[static_cast<std::size_t>(k - lo)] = acc;
    }
    if (remaining > 0) tail += std::abs(std::sin(kPi * factors[f].beta)) / (kPi * widen) * 4.0;
    S = TruncatedSeries(lo, std::move(out), tail);
  }
  return S;
}

}  // namespace tphk
