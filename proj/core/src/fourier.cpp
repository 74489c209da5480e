#include "tphk/fourier.hpp"

#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "tphk/error.hpp"

namespace tphk {

namespace {

int next_pow2(long n) {
  int m = 1;
  while (m < n) m <<= 1;
  return m;
}

std::size_t wrap(int n, int M) { return static_cast<std::size_t>(((n % M) + M) % M); }

double band_max(const std::vector<cplx>& spectrum, int M) {
  double m = 0.0;
  for (int n = 3 * M / 8; n <= M / 2; ++n) {
    m = std::max(m, std::abs(spectrum[wrap(n, M)]));
    m = std::max(m, std::abs(spectrum[wrap(-n, M)]));
  }
  return m / M;
}

std::vector<cplx> forward(const std::vector<cplx>& samples) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, samples);
  return out;
}

double binomial(long n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / i;
  return r;
}

std::vector<cplx> expand_product(const std::vector<Root>& roots, cplx lead) {
  std::vector<cplx> p{lead};
  for (const auto& r : roots)
    for (int k = 0; k < r.mult; ++k) {
      std::vector<cplx> q(p.size() + 1);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i + 1] += p[i];
        q[i] -= r.z * p[i];
      }
      p = std::move(q);
    }
  return p;
}

// Taylor coefficients of the polynomial p (ascending) about z, orders 0..order.
std::vector<cplx> taylor_shift(std::vector<cplx> p, cplx z, int order) {
  std::vector<cplx> out;
  for (int r = 0; r <= order && !p.empty(); ++r) {
    // Synthetic division by (t - z): remainder is the next Taylor coefficient.
    std::vector<cplx> q(p.size() > 1 ? p.size() - 1 : 0);
    cplx acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) {
      acc = acc * z + p[i];
      if (i > 0) q[i - 1] = acc;
    }
    out.push_back(acc);
    p = std::move(q);
  }
  out.resize(static_cast<std::size_t>(order + 1), cplx(0.0));
  return out;
}

std::vector<cplx> truncated_product(const std::vector<cplx>& a, const std::vector<cplx>& b, int order) {
  std::vector<cplx> c(static_cast<std::size_t>(order + 1), cplx(0.0));
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) c[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  return c;
}

// Quotient of polynomial division num / den (ascending coefficients).
std::vector<cplx> poly_quotient(std::vector<cplx> num, const std::vector<cplx>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  if (dn < dd) return {};
  std::vector<cplx> q(static_cast<std::size_t>(dn - dd + 1));
  for (int k = dn - dd; k >= 0; --k) {
    cplx coef = num[static_cast<std::size_t>(k + dd)] / den.back();
    q[static_cast<std::size_t>(k)] = coef;
    for (int j = 0; j <= dd; ++j) num[static_cast<std::size_t>(k + j)] -= coef * den[static_cast<std::size_t>(j)];
  }
  return q;
}

}  // namespace

std::vector<cplx> circle_grid(int M) {
  std::vector<cplx> t(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) t[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / M);
  return t;
}

TruncatedSeries coefficients_from_samples(std::vector<cplx> samples, int first, int last) {
  const int M = static_cast<int>(samples.size());
  if (last - first + 1 > M) throw Error(ErrorCode::GridTooSmall, "window wider than the grid");
  auto spectrum = forward(samples);
  std::vector<cplx> c(static_cast<std::size_t>(last - first + 1));
  for (int n = first; n <= last; ++n) c[static_cast<std::size_t>(n - first)] = spectrum[wrap(n, M)] / static_cast<double>(M);
  return TruncatedSeries(first, std::move(c), band_max(spectrum, M));
}

std::vector<cplx> samples_from_series(const TruncatedSeries& f, int M) {
  std::vector<cplx> spectrum(static_cast<std::size_t>(M), cplx(0.0));
  for (int n = f.lo(); n <= f.hi(); ++n) spectrum[wrap(n, M)] += f[n];
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cplx> out;
  fft.inv(out, spectrum);
  return out;
}

namespace {

// Shared refinement loop: `sample(M)` returns grid samples, `min_M` is the
// smallest grid SIZE the caller's window allows.
template <class Sampler>
TruncatedSeries refine(Sampler sample, int min_M, bool windowed, int first, int last, const GridOptions& opt) {
  for (int M = std::max(next_pow2(opt.min_size), min_M); M <= opt.max_size; M <<= 1) {
    auto spectrum = forward(sample(M));
    double scale = 1.0;
    for (const auto& x : spectrum) scale = std::max(scale, std::abs(x) / M);
    const double tail = band_max(spectrum, M);
    if (tail > opt.tol * scale) continue;
    if (windowed) {
      std::vector<cplx> c(static_cast<std::size_t>(last - first + 1));
      for (int n = first; n <= last; ++n) c[static_cast<std::size_t>(n - first)] = spectrum[wrap(n, M)] / static_cast<double>(M);
      return TruncatedSeries(first, std::move(c), tail);
    }
    const int half = 3 * M / 8 - 1;
    std::vector<cplx> c(static_cast<std::size_t>(2 * half + 1));
    for (int n = -half; n <= half; ++n) c[static_cast<std::size_t>(n + half)] = spectrum[wrap(n, M)] / static_cast<double>(M);
    // Entries at the noise level are dropped rather than kept as aliasing.
    for (auto& x : c)
      if (std::abs(x) <= opt.tol * scale) x = 0.0;
    return TruncatedSeries(-half, std::move(c), tail).trimmed(0.0);
  }
  throw Error(ErrorCode::GridTooSmall, "Fourier tail above tolerance at the grid cap");
}

}  // namespace

TruncatedSeries expand_function(const std::function<cplx(cplx)>& f, int first, int last, const GridOptions& opt) {
  const int reach = std::max(std::abs(first), std::abs(last));
  auto sample = [&](int M) {
    auto t = circle_grid(M);
    for (auto& x : t) x = f(x);
    return t;
  };
  return refine(sample, next_pow2(4L * reach + 4), true, first, last, opt);
}

TruncatedSeries expand_function(const std::function<cplx(cplx)>& f, const GridOptions& opt) {
  auto sample = [&](int M) {
    auto t = circle_grid(M);
    for (auto& x : t) x = f(x);
    return t;
  };
  return refine(sample, 1, false, 0, 0, opt);
}

TruncatedSeries multiply_on_grid(const std::function<cplx(cplx)>& w, const TruncatedSeries& f, const GridOptions& opt) {
  if (f.empty()) return {};
  const int reach = std::max(std::abs(f.lo()), std::abs(f.hi()));
  auto sample = [&](int M) {
    auto v = samples_from_series(f, M);
    auto t = circle_grid(M);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= w(t[j]);
    return v;
  };
  return refine(sample, next_pow2(4L * reach + 4), false, 0, 0, opt);
}

TruncatedSeries fourier_exact(const RationalSymbol& s, int first, int last) {
  const int width = last - first + 1;
  if (width <= 0) return TruncatedSeries(first, {});
  if (s.is_zero()) return TruncatedSeries(first, std::vector<cplx>(static_cast<std::size_t>(width)));

  int k0 = 0;
  std::vector<Root> zeros, poles;
  for (const auto& r : s.roots()) {
    if (r.z == cplx(0.0)) k0 = r.mult;
    else if (r.mult > 0) zeros.push_back(r);
    else poles.push_back({r.z, -r.mult});
  }
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      if (std::abs(poles[i].z - poles[j].z) < 1e-6 * std::max(1.0, std::abs(poles[i].z)))
        throw Error(ErrorCode::IllConditionedRoots, "poles too close for partial fractions");

  const std::vector<cplx> num = expand_product(zeros, s.gain());
  const std::vector<cplx> den = expand_product(poles, 1.0);
  std::vector<cplx> out(static_cast<std::size_t>(width), cplx(0.0));
  double tail = 0.0;

  // Coefficient of R = num/den at exponent n lands at n + k0 in s.
  auto put = [&](long n, cplx v) {
    const long e = n + k0;
    if (e >= first && e <= last) out[static_cast<std::size_t>(e - first)] += v;
    else tail += std::abs(v);
  };

  const auto q = poly_quotient(num, den);
  for (std::size_t n = 0; n < q.size(); ++n) put(static_cast<long>(n), q[n]);

  for (std::size_t j = 0; j < poles.size(); ++j) {
    const cplx p = poles[j].z;
    const int mu = poles[j].mult;
    auto h = taylor_shift(num, p, mu - 1);
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (i == j) continue;
      const cplx d = p - poles[i].z;
      const int m = poles[i].mult;
      std::vector<cplx> inv(static_cast<std::size_t>(mu));
      for (int r = 0; r < mu; ++r)
        inv[static_cast<std::size_t>(r)] = (r % 2 ? -1.0 : 1.0) * binomial(m + r - 1, r) * std::pow(d, -m - r);
      h = truncated_product(h, inv, mu - 1);
    }
    const double rho = std::abs(p);
    for (int l = 1; l <= mu; ++l) {
      const cplx A = h[static_cast<std::size_t>(mu - l)];
      if (A == cplx(0.0)) continue;
      double inside = 0.0, total = 0.0;
      if (rho > 1.0) {
        // 1/(t-p)^l = (-p)^-l sum_{n>=0} C(n+l-1, l-1) (t/p)^n
        const cplx pre = A * std::pow(-p, -l);
        total = std::abs(pre) * std::pow(1.0 - 1.0 / rho, -l);
        for (long e = std::max<long>(first, k0); e <= last; ++e) {
          const long n = e - k0;
          const cplx v = pre * binomial(n + l - 1, l - 1) * std::pow(p, static_cast<double>(-n));
          out[static_cast<std::size_t>(e - first)] += v;
          inside += std::abs(v);
        }
      } else {
        // 1/(t-p)^l = sum_{k>=0} C(k+l-1, l-1) p^k t^(-k-l)
        total = std::abs(A) * std::pow(1.0 - rho, -l);
        for (long e = first; e <= std::min<long>(last, k0 - l); ++e) {
          const long k = -(e - k0) - l;
          const cplx v = A * binomial(k + l - 1, l - 1) * std::pow(p, static_cast<double>(k));
          out[static_cast<std::size_t>(e - first)] += v;
          inside += std::abs(v);
        }
      }
      tail += std::max(0.0, total - inside);
    }
  }
  return TruncatedSeries(first, std::move(out), tail);
}

TruncatedSeries fourier_coefficients(const RationalSymbol& s, int first, int last, const GridOptions& opt) {
  try {
    return fourier_exact(s, first, last);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IllConditionedRoots) throw;
  }
  return expand_function([&s](cplx t) { return s(t); }, first, last, opt);
}

}  // namespace tphk
