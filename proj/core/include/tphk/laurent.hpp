#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tphk {

using cplx = std::complex<double>;

/// Finite sum c_lo t^lo + ... + c_hi t^hi with complex coefficients.
///
/// The stored window is always tight: the first and last coefficients are
/// nonzero unless the polynomial is identically zero (then `coeffs()` is
/// empty and `lo()` is 0).
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(int lo, std::vector<cplx> coeffs);

  static LaurentPolynomial constant(cplx c);
  static LaurentPolynomial monomial(int exponent, cplx c = 1.0);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of t^k (zero outside the window).
  cplx coeff(int k) const noexcept;

  cplx operator()(cplx t) const noexcept;

  /// Coefficient-wise conj with exponent negation: conj(p(t)) on |t| = 1.
  LaurentPolynomial conjugate_bar() const;

  /// Drops end coefficients with |c| <= rel * max|c|.
  LaurentPolynomial trimmed(double rel) const;

  double max_abs() const noexcept;

  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(cplx s, const LaurentPolynomial& p);

 private:
  int lo_ = 0;
  std::vector<cplx> coeffs_;
};

enum class Projection { P, Q };

/// Fourier coefficients of an L^p function restricted to exponents
/// lo..lo+len-1. `tail()` records a bound on the discarded mass when the
/// producer knows one (0 when the window is exact).
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(int lo, std::vector<cplx> coeffs, double tail = 0.0);

  static TruncatedSeries from_polynomial(const LaurentPolynomial& p);
  /// Interprets v[j] as the coefficient of t^(lo + j).
  static TruncatedSeries from_span(int lo, std::span<const cplx> v);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool empty() const noexcept { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  double tail() const noexcept { return tail_; }

  cplx operator[](int k) const noexcept;
  cplx operator()(cplx t) const noexcept;

  /// P keeps exponents >= 0, Q keeps exponents < 0.
  TruncatedSeries project(Projection which) const;

  /// Coefficients for exponents first..first+count-1 as a dense vector.
  std::vector<cplx> window(int first, int count) const;

  /// Shrinks the window, dropping end coefficients with |c| <= rel * max|c|.
  TruncatedSeries trimmed(double rel) const;

  double norm2() const noexcept;
  double max_abs() const noexcept;

  /// Multiplies by t^k.
  TruncatedSeries shifted(int k) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(cplx s, const TruncatedSeries& f);
  /// Exact convolution of the two windows.
  friend TruncatedSeries convolve(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  int lo_ = 0;
  std::vector<cplx> coeffs_;
  double tail_ = 0.0;
};

/// max_k |a_k - b_k| over the union of both windows.
double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace tphk
