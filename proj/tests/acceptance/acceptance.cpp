// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tphk/error.hpp"
#include "tphk/kernel.hpp"
#include "tphk/matching.hpp"
#include "tphk/operators.hpp"
#include "tphk/oracle.hpp"
#include "tphk/pc.hpp"
#include "tphk/wiener_hopf.hpp"

using namespace tphk;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Every DefectReport produced anywhere is recorded for the bookkeeping check.
struct Analyzed {
  int kappa_sum;
  int analytic_index;
  int oracle_index;
  bool oracle_ok;
};
std::vector<Analyzed> g_analyzed;

DefectReport analyze(const MatchingPair& pair, const ShiftParams& sh, const DefectOptions& opt) {
  auto rep = defect_numbers(pair, sh, opt);
  const int idx = (rep.ker_plus - rep.coker_plus) + (rep.ker_minus - rep.coker_minus);
  const auto& o = rep.oracle;
  const bool ook = o.ran && o.error.empty();
  const int oidx = ook ? (o.ker_plus - o.coker_plus) + (o.ker_minus - o.coker_minus) : 0;
  g_analyzed.push_back({pair.kappa1 + pair.kappa2, idx, oidx, ook});
  return rep;
}

RationalSymbol random_plus_factor(std::mt19937& rng, int max_degree) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Root> roots;
  const int count = static_cast<int>(rng() % (max_degree + 1));
  for (int k = 0; k < count; ++k)
    roots.push_back({std::polar(1.3 + 3.0 * u(rng), 2.0 * kPi * u(rng)), u(rng) < 0.5 ? 1 : -1});
  return RationalSymbol::from_roots(std::polar(0.5 + u(rng), 2.0 * kPi * u(rng)), roots);
}

// Invertible symbol with roots on both sides of the circle.
RationalSymbol random_symbol(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Root> roots;
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < count; ++k) {
    const double r = u(rng) < 0.5 ? 0.2 + 0.5 * u(rng) : 1.5 + 2.0 * u(rng);
    roots.push_back({std::polar(r, 2.0 * kPi * u(rng)), u(rng) < 0.5 ? 1 : -1});
  }
  return RationalSymbol::from_roots(std::polar(0.5 + u(rng), 2.0 * kPi * u(rng)), roots);
}

TruncatedSeries random_series(std::mt19937& rng, int lo, int hi) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1));
  for (auto& x : c) x = {n(rng), n(rng)};
  return TruncatedSeries(lo, c);
}

TruncatedSeries exact_series(const RationalSymbol& s, int hi = 96) { return fourier_exact(s, 0, hi); }

double min_singular(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

void shift_algebra(Verdict& v) {
  std::mt19937 rng(11);
  double worst = 0.0;
  for (cplx beta : {cplx(2.0), cplx(0.0, 2.0), cplx(1.5, 0.5)}) {
    const auto sh = make_shift(beta);
    for (int k = 0; k < 512; ++k) {
      const cplx t = std::polar(1.0, 2.0 * kPi * (k + 0.5) / 512);
      const cplx a = eval_alpha(sh, t);
      worst = std::max(worst, std::abs(eval_alpha(sh, a) - t));
      worst = std::max(worst, std::abs(a - sh.alpha_plus(t) / t * sh.alpha_minus(t)));
      worst = std::max(worst, std::abs(sh.chi(t) * sh.chi(a) - 1.0));
      worst = std::max(worst, std::abs(std::conj(sh.alpha_plus(t)) - 1.0 / sh.alpha_minus(t)));
    }
    for (int rep = 0; rep < 3; ++rep) {
      const auto f = random_series(rng, -32, 32);
      const double n = f.norm2();
      const auto jj = apply_J_alpha(apply_J_alpha(f, sh), sh);
      worst = std::max(worst, max_abs_diff(jj, f) / n);
      const auto fp = f.project(Projection::P);
      const auto jp = apply_J_alpha(fp, sh);
      worst = std::max(worst, jp.project(Projection::P).norm2() / n);
    }
  }
  v.detail << "max identity error " << worst;
  v.require(worst < 1e-8, "identity error >= 1e-8");
}

void factorization_round_trip(Verdict& v) {
  std::mt19937 rng(2024);
  const auto sh = make_shift(2.0);
  int recovered = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = static_cast<int>(rng() % 9) - 4;
    const int sigma = rng() % 2 ? 1 : -1;
    const auto g = generate_matching_function(random_plus_factor(rng, 3), n, sigma, sh);
    const auto fac = factorize(g);
    if (fac.kappa == n && alpha_signature(g, sh) == sigma) ++recovered;
    // Pointwise product of the factors, not the root-form product.
    double err = 0.0, scale = 0.0;
    for (int j = 0; j < 512; ++j) {
      const cplx t = std::polar(1.0, 2.0 * kPi * (j + 0.5) / 512);
      const cplx gt = g(t);
      err = std::max(err, std::abs(fac.g_minus(t) * std::pow(t, -fac.kappa) * fac.g_plus(t) - gt));
      scale = std::max(scale, std::abs(gt));
    }
    worst = std::max(worst, err / scale);
  }
  v.detail << recovered << "/100 recovered, reconstruction error " << worst;
  v.require(recovered == 100, "(n, sigma) not recovered");
  v.require(worst < 1e-10, "reconstruction error");
}

void kernel_basis_theorem(Verdict& v) {
  const auto sh = make_shift(2.0);
  const auto ci = invert(sh.chi);
  double worst = 0.0;
  for (const auto& g : {ci, cplx(-1.0) * ci, power(ci, 3), power(ci, 4)}) {
    const int n = factorize(g).kappa;
    const int sigma = alpha_signature(g, sh);
    const auto split = toeplitz_kernel_split(g, sh);
    const auto [dp, dm] = split_dimensions(n, sigma);
    const int m = n / 2;
    const bool formula = n % 2 == 0 ? (dp == m && dm == m) : (dp == m + (1 + sigma) / 2 && dm == m + (1 - sigma) / 2);
    v.require(formula, "dimension formula");
    v.require(static_cast<int>(split.plus.size()) == dp && static_cast<int>(split.minus.size()) == dm,
              "basis sizes");
    const auto sec = toeplitz_section(g, 512, 256);
    for (const auto* fam : {&split.plus, &split.minus})
      for (const auto& f : *fam) {
        const double r = residual_check(sec, exact_series(f, 255));
        worst = std::max(worst, r);
      }
    for (int N : {128, 256, 512}) {
      const int dim = numerical_null_space(toeplitz_section(g, 2 * N, N)).dim;
      v.require(dim == n, "null dim at N=" + std::to_string(N));
    }
  }
  v.detail << "max residual " << worst;
  v.require(worst < 1e-6, "residual");
}

void defects_right_invertible(Verdict& v) {
  const auto sh = make_shift(2.0);
  const auto a = power(invert(sh.chi), 2);
  const auto rep = analyze(make_matching_pair(a, a, sh), sh, {.with_bases = true, .with_oracle = true});
  const auto& o = rep.oracle;
  v.detail << "analytic (" << rep.ker_plus << "," << rep.coker_plus << "," << rep.ker_minus << "," << rep.coker_minus
           << "), oracle (" << o.ker_plus << "," << o.coker_plus << "," << o.ker_minus << "," << o.coker_minus << ")";
  v.require(rep.regime == Regime::RightInv, "regime");
  v.require(rep.ker_plus == 2 && rep.coker_plus == 0 && rep.ker_minus == 2 && rep.coker_minus == 0, "analytic dims");
  v.require(o.error.empty() && o.ker_plus == 2 && o.coker_plus == 0 && o.ker_minus == 2 && o.coker_minus == 0,
            "oracle dims");
}

void defects_lifted(Verdict& v) {
  const auto sh = make_shift(2.0);
  const auto one = RationalSymbol::constant(1.0);
  const auto b = invert(sh.chi);
  const auto pair = make_matching_pair(one, b, sh);
  const auto rep = analyze(pair, sh, {.with_bases = true, .with_oracle = true});
  v.require(rep.regime == Regime::Lifted, "regime");
  v.require(rep.ker_plus + rep.coker_plus + rep.ker_minus + rep.coker_minus == 0, "analytic dims");
  v.require(rep.oracle.agree, "oracle dims");
  // The lifted step: n = 1 and the constants of the bracket space are not in im T(chi).
  const int n = (-pair.kappa1 + 1) / 2;
  v.require(n == 1, "lift order");
  const auto lifted = make_matching_pair(one * chi_power(sh, -n), b * chi_power(sh, n), sh);
  v.require(lifted.kappa1 >= 0, "lifted pair right invertible");
  v.require(!in_image_chi_power(exact_series(one), 1, sh).member, "constants rejected by image test");
  double smin = 1e300;
  for (auto kind : {SectionKind::Plus, SectionKind::Minus})
    smin = std::min(smin, min_singular(operator_section(kind, one, b, sh, 256).entries));
  v.detail << "regime " << to_string(rep.regime) << ", min singular value " << smin;
  v.require(smin > 1e-6, "section singular value");
}

void transfer_maps(Verdict& v) {
  const auto sh = make_shift(2.0);
  const auto a = power(invert(sh.chi), 2);
  const auto pair = make_matching_pair(a, a, sh);
  const int N = 128;
  const auto ns = numerical_null_space(operator_section(SectionKind::BlockV, a, a, sh, 2 * N, N));
  double worst = 0.0;
  for (int j = 0; j < ns.dim; ++j) {
    std::vector<cplx> x(N), y(N);
    for (int k = 0; k < N; ++k) {
      x[static_cast<std::size_t>(k)] = ns.vectors(k, j);
      y[static_cast<std::size_t>(k)] = ns.vectors(N + k, j);
    }
    const std::pair<TruncatedSeries, TruncatedSeries> in{TruncatedSeries(0, x).trimmed(1e-14),
                                                         TruncatedSeries(0, y).trimmed(1e-14)};
    const auto u = transfer_U(pair, sh, TransferDirection::U1, in);
    const auto back = transfer_U(pair, sh, TransferDirection::U2, u);
    worst = std::max({worst, max_abs_diff(back.first, in.first), max_abs_diff(back.second, in.second)});
    const auto again = transfer_U(pair, sh, TransferDirection::U1, back);
    worst = std::max({worst, max_abs_diff(again.first, u.first), max_abs_diff(again.second, u.second)});
  }
  const auto img = transfer_U(pair, sh, TransferDirection::U1, {TruncatedSeries(0, {}), exact_series(RationalSymbol::constant(1.0))});
  const double e = std::max(max_abs_diff(img.first, exact_series(cplx(0.5) * sh.chi)),
                            max_abs_diff(img.second, exact_series(cplx(-0.5) * sh.chi)));
  v.detail << "kernel dim " << ns.dim << ", round-trip error " << worst << ", U1(0,1) error " << e;
  v.require(ns.dim == 4, "block kernel dimension");
  v.require(worst < 1e-8, "round trip");
  v.require(e < 1e-8, "U1(0,1)");
}

void coburn_suite(Verdict& v) {
  std::mt19937 rng(7);
  const auto sh = make_shift(2.0);
  int checked = 0, failed = 0;
  auto check = [&](const RationalSymbol& a, const RationalSymbol& b, int sign) {
    const auto cls = coburn_class(a, b, sh, true);
    bool ok = false;
    for (const auto& c : cls)
      if (c.sign == sign && c.verified) ok = true;
    ++checked;
    if (!ok) ++failed;
  };
  const auto chi = sh.chi;
  for (int k = 0; k < 20; ++k) {
    const auto a = random_symbol(rng);
    check(a, a * chi, +1);
    check(a, a * invert(chi), -1);
    check(a, a, rng() % 2 ? 1 : -1);
  }
  for (int k = 0; k < 20; ++k) {
    const auto a = random_symbol(rng);
    for (int kappa : {1, -1, 0}) {
      const auto c = generate_matching_function(random_plus_factor(rng, 2), kappa, 1, sh);
      const auto b = a * invert(c);
      const int sign = kappa == 1 ? 1 : kappa == -1 ? -1 : (rng() % 2 ? 1 : -1);
      check(a, b, sign);
      if (k < 5) analyze(make_matching_pair(a, b, sh), sh, {});
    }
  }
  v.detail << checked - failed << "/" << checked << " instances with min(ker, coker) = 0";
  v.require(failed == 0, "oracle found both defects nonzero");
}

void index_bookkeeping(Verdict& v) {
  std::mt19937 rng(99);
  const auto sh = make_shift(cplx(1.5, 0.5));
  for (int k = 0; k < 12; ++k) {
    const auto a = random_symbol(rng);
    const int n = static_cast<int>(rng() % 7) - 3;
    const auto rho = generate_matching_function(random_plus_factor(rng, 2), n, rng() % 2 ? 1 : -1, sh);
    analyze(generate_matching_pair(a, rho, sh), sh, {.with_bases = k < 4, .with_oracle = k < 4, .oracle_N = 128});
  }
  int bad = 0, oracle_bad = 0, with_oracle = 0;
  for (const auto& r : g_analyzed) {
    if (r.analytic_index != r.kappa_sum) ++bad;
    if (r.oracle_ok) {
      ++with_oracle;
      if (r.oracle_index != r.kappa_sum) ++oracle_bad;
    }
  }
  v.detail << g_analyzed.size() << " pairs analyzed (" << with_oracle << " with oracle)";
  v.require(bad == 0, "analytic index identity");
  v.require(oracle_bad == 0, "oracle index identity");
}

void pc_suite(Verdict& v) {
  const double inf = std::numeric_limits<double>::infinity();
  for (double p : {1.5, 2.0, 4.0}) {
    v.require(nu_h(inf, p) == std::pair<cplx, cplx>{1.0, 0.0}, "nu_h(+inf)");
    v.require(nu_h(-inf, p) == std::pair<cplx, cplx>{0.0, 0.0}, "nu_h(-inf)");
  }
  const auto sh = make_shift(2.0);
  double smin = 1e300;
  for (cplx beta : {cplx(0.3, 0.1), cplx(-0.4, 0.0), cplx(0.1, -0.5)}) {
    PCSymbol psi{RationalSymbol::constant(1.0), {}, {{FixedPoint::Plus, beta}}};
    for (int N : {64, 128, 256}) {
      const auto c = pc_fourier_coefficients(psi, -(N - 1), N - 1, sh);
      smin = std::min(smin, min_singular(toeplitz_section(c, N, N).entries));
    }
  }
  v.require(smin > 1e-6, "T(psi) section singular value");

  const auto chi = sh.chi;
  const std::vector<RationalSymbol> golden = {
      RationalSymbol::constant(1.0), chi, invert(chi), power(chi, -2), power(chi, 3), sh.psi_cap, sh.alpha_plus,
      sh.alpha_minus, RationalSymbol::monomial(-2), RationalSymbol::from_roots(1.0, {{0.5, 1}, {3.0, -1}}),
      RationalSymbol::from_roots(1.0, {{1.0, 1}}), RationalSymbol::from_roots(2.0, {{std::polar(1.0, 2.0), 1}, {0.2, -1}}),
      RationalSymbol::from_roots(cplx(0, 1), {{cplx(0.0, 0.5), 2}, {cplx(-2.0, 1.0), 1}})};
  const auto zero = PCSymbol::from_rational(RationalSymbol::constant(0.0));
  int agree = 0;
  for (const auto& g : golden) {
    bool fact = true;
    try {
      factorize(g);
    } catch (const Error&) {
      fact = false;
    }
    if (fredholm_symbol_check(PCSymbol::from_rational(g), zero, 2.0, sh).fredholm == fact) ++agree;
  }
  v.require(agree == static_cast<int>(golden.size()), "Fredholm verdicts");

  std::vector<RationalSymbol> matching = {RationalSymbol::constant(1.0), RationalSymbol::constant(-1.0), invert(chi),
                                          cplx(-1.0) * invert(chi), power(chi, -3), power(chi, 2), sh.psi_cap};
  std::mt19937 rng(5);
  for (int k = 0; k < 10; ++k)
    matching.push_back(generate_matching_function(random_plus_factor(rng, 3), static_cast<int>(rng() % 9) - 4,
                                                  rng() % 2 ? 1 : -1, sh));
  int sig_agree = 0;
  for (const auto& g : matching)
    if (pc_alpha_signature(PCSymbol::from_rational(g), 2.0, sh) == alpha_signature(g, sh)) ++sig_agree;
  v.require(sig_agree == static_cast<int>(matching.size()), "signatures");
  v.detail << "min T(psi) singular value " << smin << ", Fredholm " << agree << "/" << golden.size()
           << ", signatures " << sig_agree << "/" << matching.size();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;  // 0: no runtime bound
    std::function<void(Verdict&)> body;
  };
  const std::vector<Criterion> criteria = {
      {"shift algebra identities", 5, shift_algebra},
      {"factorization round trip", 30, factorization_round_trip},
      {"kernel basis theorem", 60, kernel_basis_theorem},
      {"defects, right-invertible regime", 60, defects_right_invertible},
      {"defects, lifted regime", 60, defects_lifted},
      {"transfer maps", 0, transfer_maps},
      {"Coburn-Simonenko classes", 300, coburn_suite},
      {"index bookkeeping", 0, index_bookkeeping},
      {"PC symbol suite", 0, pc_suite},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) v.require(false, "runtime limit " + std::to_string(c.limit_s) + " s");
    if (!v.pass) ++failures;
    std::printf("%s %zu %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", i + 1, c.name, v.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
