#pragma once

#include <span>
#include <vector>

#include "tphk/laurent.hpp"

namespace tphk {

/// Roots within this distance of |z| = 1 make index decisions uncertifiable.
inline constexpr double kCircleAnnulus = 1e-8;
/// Zeros and poles closer than this (relative) are merged during reduction.
inline constexpr double kRootClusterTol = 1e-9;

struct Root {
  cplx z;
  int mult;  // > 0 zero, < 0 pole
};

/// Roots of sum_k c[k] t^k via eigenvalues of the companion matrix, Newton
/// polished, with numerically repeated roots merged when the merged
/// factorization reproduces the coefficients. `c` is in ascending order and
/// must have c.back() != 0 and c.front() != 0.
std::vector<Root> polynomial_roots(std::span<const cplx> c);

/// gain * prod (t - z)^mult, kept reduced: no two roots within
/// kRootClusterTol of each other and no zero multiplicities. The root z = 0
/// carries the monomial factor.
///
/// The identically zero symbol has gain 0 and no roots.
class RationalSymbol {
 public:
  RationalSymbol() = default;  // zero

  static RationalSymbol constant(cplx c);
  static RationalSymbol monomial(int exponent, cplx c = 1.0);
  static RationalSymbol from_roots(cplx gain, std::vector<Root> roots);
  /// num / den; roots of both via the companion matrix, then reduced.
  static RationalSymbol from_laurent(const LaurentPolynomial& num,
                                     const LaurentPolynomial& den = LaurentPolynomial::constant(1.0));

  cplx gain() const noexcept { return gain_; }
  const std::vector<Root>& roots() const noexcept { return roots_; }
  bool is_zero() const noexcept { return gain_ == cplx(0.0); }
  bool is_constant() const noexcept { return roots_.empty(); }

  /// Evaluation anywhere in the plane (infinite at poles).
  cplx operator()(cplx z) const noexcept;

  /// Monic Laurent denominator prod_{poles} (t - p)^|m|, t^-k factors moved
  /// to the numerator exponent.
  LaurentPolynomial denominator() const;
  LaurentPolynomial numerator() const;

  /// Number of zeros minus number of poles, counted with multiplicity.
  int degree() const noexcept;

  /// Smallest distance | |z| - 1 | over all zeros and poles (infinity when constant).
  double circle_distance() const noexcept;
  double pole_circle_distance() const noexcept;

 private:
  cplx gain_ = 0.0;
  std::vector<Root> roots_;
};

/// eval_symbol: value on the unit circle. Throws DenominatorNearZero if the
/// monic denominator is below 1e-12 at t, InvalidInput if |t| != 1.
cplx eval_symbol(const RationalSymbol& s, cplx t);

RationalSymbol multiply(const RationalSymbol& a, const RationalSymbol& b);
/// Throws NotInvertibleOnCircle when a zero lies in the circle annulus.
RationalSymbol invert(const RationalSymbol& s);
/// conj(s(t)) on the circle as a rational function of t.
RationalSymbol conjugate_bar(const RationalSymbol& s);
RationalSymbol power(const RationalSymbol& s, int k);
inline RationalSymbol operator*(const RationalSymbol& a, const RationalSymbol& b) { return multiply(a, b); }
RationalSymbol operator*(cplx c, const RationalSymbol& s);
/// Sum via a common denominator; the numerator roots are recomputed.
RationalSymbol add(const RationalSymbol& a, const RationalSymbol& b);
inline RationalSymbol operator+(const RationalSymbol& a, const RationalSymbol& b) { return add(a, b); }
inline RationalSymbol operator-(const RationalSymbol& a, const RationalSymbol& b) { return add(a, cplx(-1.0) * b); }

/// (#zeros - #poles) inside the open unit disk. Throws IllConditionedRoots
/// when a zero or pole sits in the circle annulus.
int winding_number(const RationalSymbol& s);

/// Max |a(t) - b(t)| over an M-point circle grid.
double max_circle_diff(const RationalSymbol& a, const RationalSymbol& b, int grid = 512);

/// Pointwise agreement on a circle grid, relative to max(1, max|a|).
bool nearly_equal(const RationalSymbol& a, const RationalSymbol& b, double tol = 1e-10);

}  // namespace tphk
