#include "tphk/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace tphk {

namespace {

// Shrinks [first, last) to the nonzero span; returns the number skipped at the front.
template <class Pred>
std::size_t tighten(std::vector<cplx>& v, Pred keep) {
  auto first = std::find_if(v.begin(), v.end(), keep);
  if (first == v.end()) {
    v.clear();
    return 0;
  }
  auto last = std::find_if(v.rbegin(), v.rend(), keep).base();
  std::size_t skipped = static_cast<std::size_t>(first - v.begin());
  v = std::vector<cplx>(first, last);
  return skipped;
}

double max_abs_of(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(int lo, std::vector<cplx> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) {
  std::size_t skipped = tighten(coeffs_, [](const cplx& c) { return c != cplx(0.0); });
  lo_ = coeffs_.empty() ? 0 : lo_ + static_cast<int>(skipped);
}

LaurentPolynomial LaurentPolynomial::constant(cplx c) { return LaurentPolynomial(0, {c}); }

LaurentPolynomial LaurentPolynomial::monomial(int exponent, cplx c) { return LaurentPolynomial(exponent, {c}); }

cplx LaurentPolynomial::coeff(int k) const noexcept {
  if (coeffs_.empty() || k < lo_ || k > hi()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

cplx LaurentPolynomial::operator()(cplx t) const noexcept {
  if (coeffs_.empty()) return 0.0;
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc * std::pow(t, lo_);
}

LaurentPolynomial LaurentPolynomial::conjugate_bar() const {
  std::vector<cplx> out(coeffs_.rbegin(), coeffs_.rend());
  for (auto& c : out) c = std::conj(c);
  return LaurentPolynomial(-hi(), std::move(out));
}

LaurentPolynomial LaurentPolynomial::trimmed(double rel) const {
  const double cut = rel * max_abs();
  std::vector<cplx> v = coeffs_;
  std::size_t skipped = tighten(v, [cut](const cplx& c) { return std::abs(c) > cut; });
  return LaurentPolynomial(lo_ + static_cast<int>(skipped), std::move(v));
}

double LaurentPolynomial::max_abs() const noexcept { return max_abs_of(coeffs_); }

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) v[static_cast<std::size_t>(k - lo)] = a.coeff(k) + b.coeff(k);
  return LaurentPolynomial(lo, std::move(v));
}

LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a + cplx(-1.0) * b; }

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<cplx> v(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) v[i + j] += x[i] * y[j];
  return LaurentPolynomial(a.lo() + b.lo(), std::move(v));
}

LaurentPolynomial operator*(cplx s, const LaurentPolynomial& p) {
  std::vector<cplx> v = p.coeffs();
  for (auto& c : v) c *= s;
  return LaurentPolynomial(p.lo(), std::move(v));
}

// ---------------------------------------------------------------------------

TruncatedSeries::TruncatedSeries(int lo, std::vector<cplx> coeffs, double tail)
    : lo_(lo), coeffs_(std::move(coeffs)), tail_(tail) {}

TruncatedSeries TruncatedSeries::from_polynomial(const LaurentPolynomial& p) {
  return TruncatedSeries(p.lo(), p.coeffs());
}

TruncatedSeries TruncatedSeries::from_span(int lo, std::span<const cplx> v) {
  return TruncatedSeries(lo, std::vector<cplx>(v.begin(), v.end()));
}

cplx TruncatedSeries::operator[](int k) const noexcept {
  if (coeffs_.empty() || k < lo_ || k > hi()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

cplx TruncatedSeries::operator()(cplx t) const noexcept {
  if (coeffs_.empty()) return 0.0;
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc * std::pow(t, lo_);
}

TruncatedSeries TruncatedSeries::project(Projection which) const {
  if (coeffs_.empty()) return {};
  int first = which == Projection::P ? std::max(lo_, 0) : lo_;
  int last = which == Projection::P ? hi() : std::min(hi(), -1);
  if (last < first) return TruncatedSeries(which == Projection::P ? 0 : -1, {}, tail_);
  return TruncatedSeries(first, window(first, last - first + 1), tail_);
}

std::vector<cplx> TruncatedSeries::window(int first, int count) const {
  std::vector<cplx> v(static_cast<std::size_t>(std::max(count, 0)));
  for (int j = 0; j < count; ++j) v[static_cast<std::size_t>(j)] = (*this)[first + j];
  return v;
}

TruncatedSeries TruncatedSeries::trimmed(double rel) const {
  const double cut = rel * max_abs();
  std::vector<cplx> v = coeffs_;
  std::size_t skipped = tighten(v, [cut](const cplx& c) { return std::abs(c) > cut; });
  const int lo = v.empty() ? 0 : lo_ + static_cast<int>(skipped);
  return TruncatedSeries(lo, std::move(v), tail_);
}

double TruncatedSeries::norm2() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

double TruncatedSeries::max_abs() const noexcept { return max_abs_of(coeffs_); }

TruncatedSeries TruncatedSeries::shifted(int k) const { return TruncatedSeries(lo_ + k, coeffs_, tail_); }

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.empty()) return TruncatedSeries(b.lo(), b.coeffs(), a.tail() + b.tail());
  if (b.empty()) return TruncatedSeries(a.lo(), a.coeffs(), a.tail() + b.tail());
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) v[static_cast<std::size_t>(k - lo)] = a[k] + b[k];
  return TruncatedSeries(lo, std::move(v), a.tail() + b.tail());
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + cplx(-1.0) * b; }

TruncatedSeries operator*(cplx s, const TruncatedSeries& f) {
  std::vector<cplx> v = f.coeffs();
  for (auto& c : v) c *= s;
  return TruncatedSeries(f.lo(), std::move(v), std::abs(s) * f.tail());
}

TruncatedSeries convolve(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.empty() || b.empty()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<cplx> v(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == cplx(0.0)) continue;
    for (std::size_t j = 0; j < y.size(); ++j) v[i + j] += x[i] * y[j];
  }
  return TruncatedSeries(a.lo() + b.lo(), std::move(v), a.tail() * b.max_abs() + b.tail() * a.max_abs());
}

double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.empty() && b.empty()) return 0.0;
  const int lo = a.empty() ? b.lo() : (b.empty() ? a.lo() : std::min(a.lo(), b.lo()));
  const int hi = a.empty() ? b.hi() : (b.empty() ? a.hi() : std::max(a.hi(), b.hi()));
  double m = 0.0;
  for (int k = lo; k <= hi; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace tphk
