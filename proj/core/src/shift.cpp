#include "tphk/shift.hpp"

#include <cmath>
#include <numbers>

#include "tphk/error.hpp"

namespace tphk {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidInput, std::string("shift invariant failed: ") + what);
}

}  // namespace

ShiftParams make_shift(cplx beta) {
  if (!(std::abs(beta) > 1.0 + 1e-10)) throw Error(ErrorCode::BetaInsideDisk, "|beta| must exceed 1");
  ShiftParams s;
  s.beta = beta;
  const cplx bb = std::conj(beta);
  s.lambda = cplx(0.0, std::sqrt(std::norm(beta) - 1.0));
  s.t_plus = (1.0 + s.lambda) / bb;
  s.t_minus = (1.0 - s.lambda) / bb;
  s.alpha_plus = RationalSymbol::from_roots(1.0 / s.lambda, {{beta, 1}});
  s.alpha_minus = RationalSymbol::from_roots(s.lambda / bb, {{0.0, 1}, {1.0 / bb, -1}});
  s.chi = RationalSymbol::from_roots(bb / s.lambda, {{1.0 / bb, 1}});
  s.psi_cap = RationalSymbol::from_roots(s.lambda, {{0.0, 1}, {beta, -1}});

  require(std::abs(std::abs(s.t_plus) - 1.0) < 1e-12 && std::abs(std::abs(s.t_minus) - 1.0) < 1e-12, "|t+-| = 1");
  require(std::abs(eval_alpha(s, s.t_plus) - s.t_plus) < 1e-12, "alpha(t+) = t+");
  require(std::abs(eval_alpha(s, s.t_minus) - s.t_minus) < 1e-12, "alpha(t-) = t-");
  for (int j = 0; j < 16; ++j) {
    const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.37) / 16);
    if (std::abs(bb * t - 1.0) < 1e-6) continue;
    const cplx a = eval_alpha(s, t);
    require(std::abs(eval_alpha(s, a) - t) < 1e-12, "alpha o alpha = id");
    require(std::abs(s.alpha_plus(t) * s.alpha_minus(t) / t - a) < 1e-12, "alpha = alpha_+ t^-1 alpha_-");
    require(std::abs(s.chi(t) * s.alpha_minus(t) - t) < 1e-12, "chi = t / alpha_-");
    require(std::abs(s.psi_cap(t) * s.alpha_plus(t) - t) < 1e-12, "psi = t / alpha_+");
  }
  return s;
}

cplx eval_alpha(const ShiftParams& shift, cplx t) {
  const cplx den = std::conj(shift.beta) * t - 1.0;
  if (std::abs(den) < 1e-14) throw Error(ErrorCode::PoleHit, "t = 1/conj(beta)");
  return (t - shift.beta) / den;
}

RationalSymbol compose_with_shift(const RationalSymbol& s, const ShiftParams& shift) {
  if (s.is_zero() || s.is_constant()) return s;
  const cplx bb = std::conj(shift.beta);
  const cplx pole = 1.0 / bb;
  cplx gain = s.gain();
  std::vector<Root> roots;
  for (const auto& r : s.roots()) {
    const cplx u = 1.0 - r.z * bb;
    if (std::abs(u) < kRootClusterTol) {
      // alpha(t) - 1/conj(beta) = ((1 - |beta|^2) / conj(beta)^2) / (t - 1/conj(beta))
      gain *= std::pow((1.0 - std::norm(shift.beta)) / (bb * bb), r.mult);
      roots.push_back({pole, -r.mult});
    } else {
      // alpha(t) - z = ((1 - z conj(beta)) / conj(beta)) (t - alpha(z)) / (t - 1/conj(beta))
      gain *= std::pow(u / bb, r.mult);
      roots.push_back({(shift.beta - r.z) / u, r.mult});
      roots.push_back({pole, -r.mult});
    }
  }
  return RationalSymbol::from_roots(gain, std::move(roots));
}

RationalSymbol chi_power(const ShiftParams& shift, int k) { return power(shift.chi, k); }

RationalSymbol apply_J_alpha(const RationalSymbol& s, const ShiftParams& shift) {
  return multiply(invert(shift.chi), compose_with_shift(s, shift));
}

TruncatedSeries apply_J_alpha(const TruncatedSeries& f, const ShiftParams& shift, const GridOptions& opt) {
  if (f.empty()) return {};
  const cplx bb = std::conj(shift.beta);
  const cplx lam = shift.lambda;
  auto g = [&](cplx t) {
    const cplx den = bb * t - 1.0;
    return lam / den * f((t - shift.beta) / den);
  };
  const int reach = std::max(std::abs(f.lo()), std::abs(f.hi())) + shift_tail_width(shift);
  GridOptions o = opt;
  o.min_size = std::max(o.min_size, 4 * reach);
  return expand_function(g, o);
}

int shift_tail_width(const ShiftParams& shift, double tol) {
  return static_cast<int>(std::ceil(std::log(tol) / std::log(1.0 / std::abs(shift.beta))));
}

}  // namespace tphk
