#include "tphk/kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "tphk/error.hpp"
#include "tphk/operators.hpp"

namespace tphk {

std::string_view to_string(SubspaceTag tag) noexcept {
  switch (tag) {
    case SubspaceTag::PMinusC: return "P_minus_c";
    case SubspaceTag::PPlusC: return "P_plus_c";
    case SubspaceTag::PhiPlusD: return "phi_plus_d";
    case SubspaceTag::PhiMinusD: return "phi_minus_d";
    case SubspaceTag::Lifted: return "lifted";
  }
  return "unknown";
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::RightInv: return "RIGHT_INV";
    case Regime::LeftInv: return "LEFT_INV";
    case Regime::Split: return "SPLIT";
    case Regime::Lifted: return "LIFTED";
  }
  return "unknown";
}

Regime classify_regime(int kappa1, int kappa2) noexcept {
  if (kappa1 >= 0) return kappa2 >= 1 ? Regime::RightInv : Regime::Split;
  return kappa2 <= 0 ? Regime::LeftInv : Regime::Lifted;
}

namespace {

constexpr double kKernelTol = 1e-8;
constexpr double kGateTol = 1e-6;

// Coefficients of an analytic rational function on [0, W], W grown until
// the exact tail is negligible.
TruncatedSeries analytic_series(const RationalSymbol& s) {
  for (int W = 64;; W *= 2) {
    auto c = fourier_exact(s, 0, W);
    if (c.tail() <= 1e-15 * std::max(1.0, c.norm2()) || W >= (1 << 16)) return c.trimmed(1e-16);
  }
}

struct Piece {
  TruncatedSeries f;
  std::optional<RationalSymbol> exact;
  SubspaceTag tag;
};

Piece normalized(TruncatedSeries f, std::optional<RationalSymbol> exact, SubspaceTag tag) {
  const double n = f.norm2();
  if (n == 0.0) throw Error(ErrorCode::CrossCheckMismatch, "zero basis function");
  if (exact) exact = cplx(1.0 / n) * *exact;
  return {cplx(1.0 / n) * f, std::move(exact), tag};
}

std::vector<Piece> kernel_pieces(const MatchingPair& p, int sign, const ShiftParams& shift);

std::vector<Piece> right_invertible_pieces(const MatchingPair& p, int sign, const ShiftParams& shift) {
  std::vector<Piece> out;
  if (p.kappa1 >= 1) {
    auto split = toeplitz_kernel_split(p.c, shift);
    const auto& fam = sign > 0 ? split.minus : split.plus;
    for (const auto& g : fam)
      out.push_back(normalized(analytic_series(g), g, sign > 0 ? SubspaceTag::PMinusC : SubspaceTag::PPlusC));
  }
  if (p.kappa2 >= 1) {
    auto split = toeplitz_kernel_split(p.d, shift);
    const auto& fam = sign > 0 ? split.plus : split.minus;
    const auto fac_c = factorize(p.c);
    for (const auto& g : fam) {
      auto phi = phi_pm(analytic_series(g), p, fac_c, sign, shift);
      out.push_back(normalized(phi.trimmed(1e-15), std::nullopt, sign > 0 ? SubspaceTag::PhiPlusD : SubspaceTag::PhiMinusD));
    }
  }
  return out;
}

std::vector<Piece> lifted_pieces(const MatchingPair& p, int sign, const ShiftParams& shift) {
  const int n = (-p.kappa1 + 1) / 2;
  auto lifted = make_matching_pair(p.a * chi_power(shift, -n), p.b * chi_power(shift, n), shift);
  auto bracket = right_invertible_pieces(lifted, sign, shift);
  const int m = static_cast<int>(bracket.size());
  if (m == 0) return {};
  Eigen::MatrixXcd F(n, m);
  for (int i = 0; i < m; ++i) {
    auto test = in_image_chi_power(bracket[static_cast<std::size_t>(i)].f, n, shift);
    for (int k = 0; k < n; ++k) F(k, i) = test.functionals[static_cast<std::size_t>(k)];
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(F, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > kKernelTol) ++rank;
  std::vector<Piece> out;
  const auto chi_n_inv = chi_power(shift, -n);
  for (int j = rank; j < m; ++j) {
    TruncatedSeries h;
    for (int i = 0; i < m; ++i) h = h + svd.matrixV()(i, j) * bracket[static_cast<std::size_t>(i)].f;
    auto q = multiply(chi_n_inv, h).project(Projection::P);
    out.push_back(normalized(q.trimmed(1e-15), std::nullopt, SubspaceTag::Lifted));
  }
  return out;
}

std::vector<Piece> kernel_pieces(const MatchingPair& p, int sign, const ShiftParams& shift) {
  switch (classify_regime(p.kappa1, p.kappa2)) {
    case Regime::RightInv:
    case Regime::Split:
      return right_invertible_pieces(p, sign, shift);
    case Regime::LeftInv:
      return {};
    case Regime::Lifted:
      return lifted_pieces(p, sign, shift);
  }
  return {};
}

int section_size_for(const std::vector<Piece>& pieces) {
  int hi = 0;
  for (const auto& pc : pieces) hi = std::max(hi, pc.f.trimmed(1e-14).hi());
  int N = 128;
  while (N < hi + 64) N *= 2;
  return N;
}

KernelBasis gated_basis(const std::vector<Piece>& pieces, const MatchingPair& op, int sign, bool cokernel,
                        const ShiftParams& shift, double& worst) {
  KernelBasis kb;
  kb.sign = sign;
  kb.cokernel = cokernel;
  if (pieces.empty()) return kb;
  const int N = section_size_for(pieces);
  auto section = operator_section(sign > 0 ? SectionKind::Plus : SectionKind::Minus, op.a, op.b, shift, 2 * N, N);
  for (const auto& pc : pieces) {
    const double r = residual_check(section, pc.f);
    if (!(r < kGateTol))
      throw Error(ErrorCode::CrossCheckMismatch, "basis function (" + std::string(to_string(pc.tag)) +
                                                     ") fails the finite-section residual gate: " + std::to_string(r));
    worst = std::max(worst, r);
    kb.functions.push_back({pc.f, pc.exact, pc.tag, r});
  }
  return kb;
}

double combined_norm(const TruncatedSeries& x, const TruncatedSeries& y) {
  return std::sqrt(x.norm2() * x.norm2() + y.norm2() * y.norm2());
}

}  // namespace

std::pair<int, int> split_dimensions(int n, int sigma) noexcept {
  if (n <= 0) return {0, 0};
  const int m = n / 2;
  if (n % 2 == 0) return {m, m};
  return {m + (1 + sigma) / 2, m + (1 - sigma) / 2};
}

ToeplitzSplit toeplitz_kernel_split(const RationalSymbol& g, const ShiftParams& shift) {
  const auto fac = factorize(g);
  const int n = fac.kappa;
  if (n < 1) throw Error(ErrorCode::NotApplicable, "ind T(g) = " + std::to_string(n) + " has no kernel to split");
  const int sigma = alpha_signature(g, shift);
  const auto gpi = invert(fac.g_plus);
  const double s = sigma;
  ToeplitzSplit out;
  auto combo = [&](int p, int q, double sgn) -> RationalSymbol {
    if (p == q) return cplx(1.0 + sgn * s) * (gpi * chi_power(shift, p));
    return gpi * (chi_power(shift, p) + cplx(sgn * s) * chi_power(shift, q));
  };
  const int m = n / 2;
  if (n % 2 == 0) {
    for (int k = 0; k < m; ++k) {
      out.plus.push_back(combo(m - k - 1, m + k, 1.0));
      out.minus.push_back(combo(m - k - 1, m + k, -1.0));
    }
  } else {
    for (int k = 0; k <= m; ++k) {
      auto p = combo(m + k, m - k, 1.0);
      auto q = combo(m + k, m - k, -1.0);
      if (!p.is_zero()) out.plus.push_back(p);
      if (!q.is_zero()) out.minus.push_back(q);
    }
  }
  return out;
}

TruncatedSeries apply_P_alpha(const RationalSymbol& g, const TruncatedSeries& f, const ShiftParams& shift) {
  const auto fp = f.project(Projection::P);
  const double r = relative_norm(toeplitz_apply(g, fp), fp);
  if (!(r < kKernelTol)) throw Error(ErrorCode::NotInKernel, "f is not in ker T(g): residual " + std::to_string(r));
  return apply_J_alpha(multiply(g, fp).project(Projection::Q), shift).project(Projection::P);
}

TruncatedSeries phi_pm(const TruncatedSeries& s, const MatchingPair& pair, const WHFactorization& fac_c, int sign,
                       const ShiftParams& shift) {
  if (pair.kappa1 < 0) throw Error(ErrorCode::WrongRegime, "phi maps need T(c) right invertible");
  const auto sp = s.project(Projection::P);
  if (sp.empty() || sp.norm2() == 0.0) return TruncatedSeries(0, {});
  const double r = relative_norm(toeplitz_apply(pair.d, sp), sp);
  if (!(r < kKernelTol)) throw Error(ErrorCode::NotInKernel, "s is not in ker T(d): residual " + std::to_string(r));
  const auto aa_inv = invert(compose_with_shift(pair.a, shift));
  const auto as = multiply(aa_inv, sp);
  const auto u = apply_one_sided_inverse(fac_c, as.project(Projection::P), InverseSide::Right).project(Projection::P);
  const auto v = apply_J_alpha(multiply(pair.c, u).project(Projection::Q), shift).project(Projection::P);
  const auto w = apply_J_alpha(as.project(Projection::Q), shift).project(Projection::P);
  const cplx sg = sign > 0 ? 1.0 : -1.0;
  return cplx(0.5) * (u - sg * v + sg * w);
}

ImageTest in_image_chi_power(const TruncatedSeries& h, int n, const ShiftParams& shift) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
  ImageTest out;
  const auto hp = h.project(Projection::P);
  const auto prod = multiply(power(shift.alpha_minus, n), hp);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    out.functionals.push_back(prod[k]);
    worst = std::max(worst, std::abs(prod[k]));
  }
  const double scale = std::max(hp.norm2(), 1e-300);
  out.member = worst <= 1e-10 * scale;
  if (out.member) out.quotient = multiply(chi_power(shift, -n), hp).project(Projection::P).trimmed(1e-15);
  return out;
}

OracleCheck oracle_defects(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift, int N,
                           const NullSpaceOptions& opt) {
  OracleCheck o;
  o.ran = true;
  o.N = N;
  try {
    auto plus = operator_section(SectionKind::Plus, a, b, shift, 2 * N);
    auto minus = operator_section(SectionKind::Minus, a, b, shift, 2 * N);
    auto dp = estimate_defects(plus, N, opt);
    auto dm = estimate_defects(minus, N, opt);
    o.ker_plus = dp.ker;
    o.coker_plus = dp.coker;
    o.ker_minus = dm.ker;
    o.coker_minus = dm.coker;
  } catch (const Error& e) {
    o.error = e.what();
  }
  return o;
}

DefectReport defect_numbers(const MatchingPair& pair, const ShiftParams& shift, const DefectOptions& opt) {
  DefectReport rep;
  rep.kappa1 = pair.kappa1;
  rep.kappa2 = pair.kappa2;
  rep.sigma_c = pair.sigma_c;
  rep.sigma_d = pair.sigma_d;
  rep.regime = classify_regime(pair.kappa1, pair.kappa2);
  for (const auto& r : {pair.c, pair.d})
    if (r.circle_distance() < kCircleAnnulus) throw Error(ErrorCode::NotFredholmPair, "subordinated symbol not invertible");

  const auto adj = adjoint_pair(pair, shift);
  const auto kp = kernel_pieces(pair, +1, shift);
  const auto km = kernel_pieces(pair, -1, shift);
  const auto cp = kernel_pieces(adj, +1, shift);
  const auto cm = kernel_pieces(adj, -1, shift);
  rep.ker_plus = static_cast<int>(kp.size());
  rep.ker_minus = static_cast<int>(km.size());
  rep.coker_plus = static_cast<int>(cp.size());
  rep.coker_minus = static_cast<int>(cm.size());

  if (rep.regime == Regime::RightInv || rep.regime == Regime::Split) {
    auto [cP, cM] = split_dimensions(pair.kappa1, pair.sigma_c);
    auto [dP, dM] = split_dimensions(pair.kappa2, pair.sigma_d);
    if (rep.ker_plus != cM + dP || rep.ker_minus != cP + dM)
      throw Error(ErrorCode::CrossCheckMismatch, "kernel basis size differs from the dimension formula");
  }
  const int index = (rep.ker_plus - rep.coker_plus) + (rep.ker_minus - rep.coker_minus);
  if (index != pair.kappa1 + pair.kappa2)
    throw Error(ErrorCode::CrossCheckMismatch, "index bookkeeping: " + std::to_string(index) + " != " +
                                                   std::to_string(pair.kappa1 + pair.kappa2));

  if (opt.with_bases) {
    double worst = 0.0;
    rep.bases.push_back(gated_basis(kp, pair, +1, false, shift, worst));
    rep.bases.push_back(gated_basis(cp, adj, +1, true, shift, worst));
    rep.bases.push_back(gated_basis(km, pair, -1, false, shift, worst));
    rep.bases.push_back(gated_basis(cm, adj, -1, true, shift, worst));
    rep.max_residual = worst;
  }
  if (opt.with_oracle) {
    rep.oracle = oracle_defects(pair.a, pair.b, shift, opt.oracle_N, opt.null_space);
    rep.oracle.agree = rep.oracle.error.empty() && rep.oracle.ker_plus == rep.ker_plus &&
                       rep.oracle.coker_plus == rep.coker_plus && rep.oracle.ker_minus == rep.ker_minus &&
                       rep.oracle.coker_minus == rep.coker_minus;
  }
  return rep;
}

KernelBasis kernel_cokernel_bases(const MatchingPair& pair, const ShiftParams& shift, bool cokernel, int sign) {
  const MatchingPair op = cokernel ? adjoint_pair(pair, shift) : pair;
  double worst = 0.0;
  return gated_basis(kernel_pieces(op, sign, shift), op, sign, cokernel, shift, worst);
}

std::vector<CoburnMatch> coburn_class(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift,
                                      bool verify) {
  std::vector<CoburnMatch> out;
  const double tol = 1e-10;
  const auto aa = compose_with_shift(a, shift);
  const auto chi = shift.chi;
  const auto psi = shift.psi_cap;
  // b = eps * ref with eps = +-1 turns T(a) + s H(ref) into T(a) + (eps s) H(b).
  auto test = [&](const RationalSymbol& ref, const std::string& name, std::initializer_list<int> signs) {
    for (double eps : {1.0, -1.0}) {
      if (!nearly_equal(b, cplx(eps) * ref, tol)) continue;
      for (int s : signs) {
        const int op_sign = static_cast<int>(eps) * s;
        const std::string lhs = op_sign > 0 ? "T(a)+H(" : "T(a)-H(";
        out.push_back({lhs + (eps > 0 ? "" : "-") + name + ")", op_sign});
      }
    }
  };
  test(a * chi, "a chi", {+1});
  test(a * invert(chi), "a chi^-1", {-1});
  test(a, "a", {+1, -1});
  test(aa * psi, "a_alpha Psi", {+1});
  test(aa * invert(psi), "a_alpha Psi^-1", {-1});
  test(aa, "a_alpha", {+1, -1});

  if (check_matching(a, b, shift) < kMatchingTol) {
    auto sub = subordinated_pair(a, b, shift);
    if (sub.c.circle_distance() >= kCircleAnnulus) {
      const bool identity = nearly_equal(a, RationalSymbol::constant(1.0), tol);
      const std::string pre = identity ? "I" : "T(a)";
      if (sub.kappa1 == 1 && alpha_signature(sub.c, shift) == 1) out.push_back({pre + "+H(b), ind T(c)=1", +1});
      if (sub.kappa1 == -1 && alpha_signature(sub.c, shift) == 1) out.push_back({pre + "-H(b), ind T(c)=-1", -1});
      if (sub.kappa1 == 0) {
        out.push_back({pre + "+H(b), ind T(c)=0", +1});
        out.push_back({pre + "-H(b), ind T(c)=0", -1});
      }
    }
  }

  if (verify && !out.empty()) {
    auto o = oracle_defects(a, b, shift, 256);
    for (auto& m : out) {
      if (!o.error.empty()) continue;
      m.oracle_ker = m.sign > 0 ? o.ker_plus : o.ker_minus;
      m.oracle_coker = m.sign > 0 ? o.coker_plus : o.coker_minus;
      m.verified = std::min(m.oracle_ker, m.oracle_coker) == 0;
    }
  }
  return out;
}

std::pair<TruncatedSeries, TruncatedSeries> transfer_U(const MatchingPair& pair, const ShiftParams& shift,
                                                       TransferDirection dir,
                                                       const std::pair<TruncatedSeries, TruncatedSeries>& v) {
  const auto x = v.first.project(Projection::P);
  const auto y = v.second.project(Projection::P);
  const double n = combined_norm(x, y);
  if (n == 0.0) return {TruncatedSeries(0, {}), TruncatedSeries(0, {})};
  const auto aa = compose_with_shift(pair.a, shift);
  const auto aa_inv = invert(aa);
  if (dir == TransferDirection::U1) {
    const auto r1 = toeplitz_apply(pair.d, y);
    const auto r2 = toeplitz_apply(aa_inv, y) - toeplitz_apply(pair.c, x);
    const double r = combined_norm(r1, r2) / n;
    if (!(r < kKernelTol)) throw Error(ErrorCode::NotInKernel, "input is not in ker T(V(a,b)): " + std::to_string(r));
    const auto jc = apply_J_alpha(multiply(pair.c, x).project(Projection::Q), shift).project(Projection::P);
    const auto ja = apply_J_alpha(multiply(aa_inv, y).project(Projection::Q), shift).project(Projection::P);
    return {cplx(0.5) * (x - jc + ja), cplx(0.5) * (x + jc - ja)};
  }
  const auto r1 = toeplitz_plus_hankel_apply(pair.a, pair.b, +1, x, shift);
  const auto r2 = toeplitz_plus_hankel_apply(pair.a, pair.b, -1, y, shift);
  const double r = combined_norm(r1, r2) / n;
  if (!(r < kKernelTol)) throw Error(ErrorCode::NotInKernel, "input is not in ker diag(T+H, T-H): " + std::to_string(r));
  const auto sum = x + y;
  const auto ba = compose_with_shift(pair.b, shift);
  const auto jd = apply_J_alpha(x - y, shift);
  const auto second = (multiply(ba, sum) + multiply(aa, jd)).project(Projection::P);
  return {sum, second};
}

}  // namespace tphk
