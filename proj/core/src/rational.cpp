#include "tphk/rational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tphk/error.hpp"

namespace tphk {

namespace {

cplx ipow(cplx z, int k) {
  if (k < 0) return cplx(1.0) / ipow(z, -k);
  cplx r = 1.0;
  while (k > 0) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

cplx horner(std::span<const cplx> c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx horner_derivative(std::span<const cplx> c, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

// Ascending coefficients of lead * prod (t - z)^m over positive multiplicities.
std::vector<cplx> expand_roots(cplx lead, const std::vector<Root>& roots) {
  std::vector<cplx> p{lead};
  for (const auto& r : roots) {
    for (int k = 0; k < r.mult; ++k) {
      std::vector<cplx> q(p.size() + 1);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i + 1] += p[i];
        q[i] -= r.z * p[i];
      }
      p = std::move(q);
    }
  }
  return p;
}

double relative_error(const std::vector<cplx>& a, std::span<const cplx> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    cplx ai = i < a.size() ? a[i] : cplx(0.0);
    num += std::norm(ai - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); }

std::vector<Root> reduce_roots(std::vector<Root> roots) {
  std::vector<Root> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    int m = roots[i].mult;
    cplx weighted = roots[i].z * static_cast<double>(std::abs(roots[i].mult));
    int weight = std::abs(roots[i].mult);
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j] || !close(roots[i].z, roots[j].z, kRootClusterTol)) continue;
      used[j] = true;
      m += roots[j].mult;
      weighted += roots[j].z * static_cast<double>(std::abs(roots[j].mult));
      weight += std::abs(roots[j].mult);
    }
    if (m == 0) continue;
    cplx z = roots[i].z == cplx(0.0) ? cplx(0.0) : weighted / static_cast<double>(weight);
    out.push_back({z, m});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (std::abs(a.z) != std::abs(b.z)) return std::abs(a.z) < std::abs(b.z);
    if (std::arg(a.z) != std::arg(b.z)) return std::arg(a.z) < std::arg(b.z);
    return a.mult < b.mult;
  });
  return out;
}

}  // namespace

std::vector<Root> polynomial_roots(std::span<const cplx> c) {
  if (c.empty() || c.back() == cplx(0.0) || c.front() == cplx(0.0))
    throw Error(ErrorCode::InvalidInput, "polynomial_roots needs nonzero end coefficients");
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return {};
  if (d == 1) return {{-c[0] / c[1], 1}};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::IllConditionedRoots, "companion eigensolver failed");

  std::vector<cplx> z(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  auto polish = [&](cplx r) {
    for (int it = 0; it < 4; ++it) {
      cplx p = horner(c, r);
      cplx dp = horner_derivative(c, r);
      if (dp == cplx(0.0)) break;
      cplx next = r - p / dp;
      if (std::abs(horner(c, next)) < std::abs(p)) r = next; else break;
    }
    return r;
  };

  // Numerically repeated roots come back as a small star around the true
  // root whose centroid is accurate; merge a cluster only if the merged
  // product still reproduces c. Isolated roots get Newton polishing.
  std::vector<Root> plain;
  for (auto r : z) plain.push_back({r, 1});
  const double base_err = relative_error(expand_roots(c.back(), plain), c);
  const double accept = std::max(1e-11, 10.0 * base_err);
  std::vector<bool> used(z.size(), false);
  std::vector<Root> merged;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> group{i};
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (!used[j] && close(z[i], z[j], 1e-3)) group.push_back(j);
    for (auto g : group) used[g] = true;
    if (group.size() == 1) {
      merged.push_back({polish(z[i]), 1});
      continue;
    }
    cplx mean = 0.0;
    for (auto g : group) mean += z[g];
    mean /= static_cast<double>(group.size());
    std::vector<Root> trial = merged;
    trial.push_back({mean, static_cast<int>(group.size())});
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (!used[j]) trial.push_back({z[j], 1});
    if (relative_error(expand_roots(c.back(), trial), c) <= accept) {
      merged.push_back({mean, static_cast<int>(group.size())});
    } else {
      for (auto g : group) merged.push_back({polish(z[g]), 1});
    }
  }
  return merged;
}

// ---------------------------------------------------------------------------

RationalSymbol RationalSymbol::constant(cplx c) {
  RationalSymbol s;
  s.gain_ = c;
  return s;
}

RationalSymbol RationalSymbol::monomial(int exponent, cplx c) {
  if (exponent == 0 || c == cplx(0.0)) return constant(c);
  return from_roots(c, {{0.0, exponent}});
}

RationalSymbol RationalSymbol::from_roots(cplx gain, std::vector<Root> roots) {
  RationalSymbol s;
  s.gain_ = gain;
  if (gain != cplx(0.0)) s.roots_ = reduce_roots(std::move(roots));
  return s;
}

RationalSymbol RationalSymbol::from_laurent(const LaurentPolynomial& num, const LaurentPolynomial& den) {
  if (den.is_zero()) throw Error(ErrorCode::DenominatorNearZero, "zero denominator");
  if (num.is_zero()) return {};
  std::vector<Root> roots;
  auto nr = polynomial_roots(num.coeffs());
  auto dr = polynomial_roots(den.coeffs());
  roots.insert(roots.end(), nr.begin(), nr.end());
  for (auto r : dr) roots.push_back({r.z, -r.mult});
  if (num.lo() - den.lo() != 0) roots.push_back({0.0, num.lo() - den.lo()});
  RationalSymbol s = from_roots(num.coeffs().back() / den.coeffs().back(), std::move(roots));
  if (s.pole_circle_distance() < kCircleAnnulus)
    throw Error(ErrorCode::DenominatorNearZero, "denominator has a root on the unit circle");
  return s;
}

cplx RationalSymbol::operator()(cplx z) const noexcept {
  cplx v = gain_;
  for (const auto& r : roots_) v *= ipow(z - r.z, r.mult);
  return v;
}

LaurentPolynomial RationalSymbol::numerator() const {
  if (is_zero()) return {};
  std::vector<Root> zeros;
  int shift = 0;
  for (const auto& r : roots_) {
    if (r.z == cplx(0.0)) shift = r.mult;
    else if (r.mult > 0) zeros.push_back(r);
  }
  return LaurentPolynomial(shift, expand_roots(gain_, zeros));
}

LaurentPolynomial RationalSymbol::denominator() const {
  std::vector<Root> poles;
  for (const auto& r : roots_)
    if (r.z != cplx(0.0) && r.mult < 0) poles.push_back({r.z, -r.mult});
  return LaurentPolynomial(0, expand_roots(1.0, poles));
}

int RationalSymbol::degree() const noexcept {
  int d = 0;
  for (const auto& r : roots_) d += r.mult;
  return d;
}

double RationalSymbol::circle_distance() const noexcept {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& r : roots_) d = std::min(d, std::abs(std::abs(r.z) - 1.0));
  return d;
}

double RationalSymbol::pole_circle_distance() const noexcept {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& r : roots_)
    if (r.mult < 0) d = std::min(d, std::abs(std::abs(r.z) - 1.0));
  return d;
}

cplx eval_symbol(const RationalSymbol& s, cplx t) {
  if (std::abs(std::abs(t) - 1.0) > 1e-12) throw Error(ErrorCode::InvalidInput, "evaluation point is off the unit circle");
  double den = 1.0;
  for (const auto& r : s.roots())
    if (r.mult < 0 && r.z != cplx(0.0)) den *= std::pow(std::abs(t - r.z), -r.mult);
  if (den < 1e-12) throw Error(ErrorCode::DenominatorNearZero, "denominator vanishes at the evaluation point");
  return s(t);
}

RationalSymbol multiply(const RationalSymbol& a, const RationalSymbol& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Root> roots = a.roots();
  roots.insert(roots.end(), b.roots().begin(), b.roots().end());
  return RationalSymbol::from_roots(a.gain() * b.gain(), std::move(roots));
}

RationalSymbol operator*(cplx c, const RationalSymbol& s) { return multiply(RationalSymbol::constant(c), s); }

RationalSymbol add(const RationalSymbol& a, const RationalSymbol& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // Shared poles are kept once with the larger multiplicity.
  std::vector<Root> den;
  auto add_pole = [&den](const Root& r) {
    for (auto& d : den)
      if (close(d.z, r.z, kRootClusterTol)) {
        d.mult = std::max(d.mult, -r.mult);
        return;
      }
    den.push_back({r.z, -r.mult});
  };
  for (const auto& r : a.roots())
    if (r.mult < 0) add_pole(r);
  for (const auto& r : b.roots())
    if (r.mult < 0) add_pole(r);
  auto cleared = [&den](const RationalSymbol& s) {
    std::vector<Root> roots = s.roots();
    for (const auto& d : den) roots.push_back(d);
    return RationalSymbol::from_roots(s.gain(), std::move(roots)).numerator();
  };
  const LaurentPolynomial num = cleared(a) + cleared(b);
  if (num.is_zero() || num.max_abs() <= 1e-15 * std::max(cleared(a).max_abs(), cleared(b).max_abs())) return {};
  auto n = num.trimmed(1e-15);
  std::vector<Root> roots;
  for (auto r : polynomial_roots(n.coeffs())) roots.push_back(r);
  if (n.lo() != 0) roots.push_back({0.0, n.lo()});
  for (const auto& d : den) roots.push_back({d.z, -d.mult});
  return RationalSymbol::from_roots(n.coeffs().back(), std::move(roots));
}

RationalSymbol invert(const RationalSymbol& s) {
  if (s.is_zero()) throw Error(ErrorCode::NotInvertibleOnCircle, "zero symbol");
  std::vector<Root> roots;
  for (const auto& r : s.roots()) {
    if (r.mult > 0 && std::abs(std::abs(r.z) - 1.0) < kCircleAnnulus)
      throw Error(ErrorCode::NotInvertibleOnCircle, "zero on the unit circle");
    roots.push_back({r.z, -r.mult});
  }
  return RationalSymbol::from_roots(1.0 / s.gain(), std::move(roots));
}

RationalSymbol conjugate_bar(const RationalSymbol& s) {
  if (s.is_zero()) return {};
  cplx gain = std::conj(s.gain());
  std::vector<Root> roots;
  for (const auto& r : s.roots()) {
    if (r.z == cplx(0.0)) {
      roots.push_back({0.0, -r.mult});
      continue;
    }
    gain *= ipow(-std::conj(r.z), r.mult);
    roots.push_back({1.0 / std::conj(r.z), r.mult});
    roots.push_back({0.0, -r.mult});
  }
  return RationalSymbol::from_roots(gain, std::move(roots));
}

RationalSymbol power(const RationalSymbol& s, int k) {
  if (k == 0) return RationalSymbol::constant(1.0);
  if (s.is_zero()) {
    if (k < 0) throw Error(ErrorCode::NotInvertibleOnCircle, "negative power of the zero symbol");
    return {};
  }
  std::vector<Root> roots;
  for (const auto& r : s.roots()) roots.push_back({r.z, r.mult * k});
  return RationalSymbol::from_roots(ipow(s.gain(), k), std::move(roots));
}

int winding_number(const RationalSymbol& s) {
  if (s.is_zero()) throw Error(ErrorCode::IllConditionedRoots, "winding number of the zero symbol");
  int w = 0;
  for (const auto& r : s.roots()) {
    const double rho = std::abs(r.z);
    if (std::abs(rho - 1.0) < kCircleAnnulus)
      throw Error(ErrorCode::IllConditionedRoots, "root inside the circle annulus");
    if (rho < 1.0) w += r.mult;
  }
  return w;
}

double max_circle_diff(const RationalSymbol& a, const RationalSymbol& b, int grid) {
  double m = 0.0;
  for (int j = 0; j < grid; ++j) {
    // Offset by half a step so grid points avoid t = +-1 and the like.
    const double theta = 2.0 * std::numbers::pi * (j + 0.5) / grid;
    const cplx t = std::polar(1.0, theta);
    m = std::max(m, std::abs(a(t) - b(t)));
  }
  return m;
}

bool nearly_equal(const RationalSymbol& a, const RationalSymbol& b, double tol) {
  double scale = 1.0;
  for (int j = 0; j < 64; ++j) scale = std::max(scale, std::abs(a(std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / 64))));
  return max_circle_diff(a, b, 256) <= tol * scale;
}

}  // namespace tphk
