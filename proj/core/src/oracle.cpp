#include "tphk/oracle.hpp"

#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <bit>
#include <fstream>

#include "tphk/error.hpp"

namespace tphk {

namespace {

int next_pow2(long n) {
  int m = 1;
  while (m < n) m <<= 1;
  return m;
}

struct ColumnGrid {
  int M;
  std::vector<cplx> weight;  // b chi^-1 on the grid
  std::vector<cplx> alpha;   // alpha(t_j)
};

ColumnGrid make_column_grid(const RationalSymbol& b, const ShiftParams& shift, int M) {
  ColumnGrid g{M, circle_grid(M), circle_grid(M)};
  const cplx bb = std::conj(shift.beta);
  for (int j = 0; j < M; ++j) {
    const cplx t = g.weight[static_cast<std::size_t>(j)];
    const cplx den = bb * t - 1.0;
    g.weight[static_cast<std::size_t>(j)] = b(t) * shift.lambda / den;
    g.alpha[static_cast<std::size_t>(j)] = (t - shift.beta) / den;
  }
  return g;
}

// Relative size of the aliasing band of one FFT column.
double band_ratio(const std::vector<cplx>& spectrum, int M) {
  double scale = 1.0, band = 0.0;
  for (int n = 0; n < M; ++n) {
    const int k = n <= M / 2 ? n : n - M;
    const double v = std::abs(spectrum[static_cast<std::size_t>(n)]) / M;
    scale = std::max(scale, v);
    if (std::abs(k) >= 3 * M / 8) band = std::max(band, v);
  }
  return band / scale;
}

double column_band(const ColumnGrid& g, int k, Eigen::FFT<double>& fft, std::vector<cplx>& spectrum) {
  std::vector<cplx> v(g.weight);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= std::pow(g.alpha[j], k);
  fft.fwd(spectrum, v);
  return band_ratio(spectrum, g.M);
}

}  // namespace

FiniteSection toeplitz_section(const TruncatedSeries& c, int rows, int cols) {
  FiniteSection s;
  s.entries.resize(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) s.entries(i, j) = c[i - j];
  s.tail = c.tail();
  s.meta = "toeplitz";
  return s;
}

FiniteSection toeplitz_section(const RationalSymbol& a, int rows, int cols) {
  return toeplitz_section(fourier_coefficients(a, -(cols - 1), rows - 1), rows, cols);
}

FiniteSection hankel_section(const RationalSymbol& b, const ShiftParams& shift, int rows, int cols,
                             const GridOptions& opt) {
  FiniteSection s;
  s.meta = "hankel_alpha";
  s.entries = Eigen::MatrixXcd::Zero(rows, cols);
  if (b.is_zero()) return s;
  Eigen::FFT<double> fft;
  std::vector<cplx> spectrum;
  int M = std::max(next_pow2(opt.min_size), next_pow2(4L * std::max(rows, cols)));
  for (;; M <<= 1) {
    if (M > opt.max_size) throw Error(ErrorCode::GridTooSmall, "Hankel column tail above tolerance at the grid cap");
    auto g = make_column_grid(b, shift, M);
    if (column_band(g, cols - 1, fft, spectrum) > opt.tol) continue;
    bool ok = true;
    double worst = 0.0;
    std::vector<cplx> v(static_cast<std::size_t>(M));
    std::vector<cplx> power(static_cast<std::size_t>(M), cplx(1.0));
    for (int k = 0; k < cols && ok; ++k) {
      for (int j = 0; j < M; ++j) v[static_cast<std::size_t>(j)] = g.weight[static_cast<std::size_t>(j)] * power[static_cast<std::size_t>(j)];
      fft.fwd(spectrum, v);
      const double band = band_ratio(spectrum, M);
      worst = std::max(worst, band);
      if (band > opt.tol) {
        ok = false;
        break;
      }
      for (int i = 0; i < rows; ++i) s.entries(i, k) = spectrum[static_cast<std::size_t>(i)] / static_cast<double>(M);
      for (int j = 0; j < M; ++j) power[static_cast<std::size_t>(j)] *= g.alpha[static_cast<std::size_t>(j)];
    }
    if (!ok) continue;
    s.grid = M;
    s.tail = worst;
    return s;
  }
}

FiniteSection operator_section(SectionKind kind, const RationalSymbol& a, const RationalSymbol& b,
                               const ShiftParams& shift, int rows, int cols, const GridOptions& opt) {
  if (cols <= 0) cols = rows;
  if (rows < 8 || cols < 8) throw Error(ErrorCode::InvalidInput, "section size must be at least 8");
  switch (kind) {
    case SectionKind::Toeplitz:
      return toeplitz_section(a, rows, cols);
    case SectionKind::HankelAlpha:
      return hankel_section(b, shift, rows, cols, opt);
    case SectionKind::Plus:
    case SectionKind::Minus: {
      auto t = toeplitz_section(a, rows, cols);
      auto h = hankel_section(b, shift, rows, cols, opt);
      FiniteSection s;
      s.entries = kind == SectionKind::Plus ? Eigen::MatrixXcd(t.entries + h.entries)
                                            : Eigen::MatrixXcd(t.entries - h.entries);
      s.grid = h.grid;
      s.tail = std::max(t.tail, h.tail);
      s.meta = kind == SectionKind::Plus ? "plus" : "minus";
      return s;
    }
    case SectionKind::BlockV: {
      const auto aa_inv = invert(compose_with_shift(a, shift));
      const auto c = a * invert(b);
      const auto d = b * aa_inv;
      auto td = toeplitz_section(d, rows, cols);
      auto tc = toeplitz_section(c, rows, cols);
      auto ta = toeplitz_section(aa_inv, rows, cols);
      FiniteSection s;
      s.entries = Eigen::MatrixXcd::Zero(2 * rows, 2 * cols);
      s.entries.block(0, cols, rows, cols) = td.entries;
      s.entries.block(rows, 0, rows, cols) = -tc.entries;
      s.entries.block(rows, cols, rows, cols) = ta.entries;
      s.tail = std::max({td.tail, tc.tail, ta.tail});
      s.meta = "block_V";
      return s;
    }
  }
  throw Error(ErrorCode::InvalidInput, "unknown section kind");
}

NullSpace numerical_null_space(const Eigen::MatrixXcd& m, const NullSpaceOptions& opt) {
  NullSpace ns;
  if (m.cols() == 0) return ns;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  Eigen::VectorXd sv = Eigen::VectorXd::Zero(m.cols());
  sv.head(svd.singularValues().size()) = svd.singularValues();
  ns.singular_values = sv;
  const double smax = sv.size() ? sv(0) : 0.0;
  const double cut = opt.tol * smax;
  int nonzero = 0;
  while (nonzero < sv.size() && sv(nonzero) > cut) ++nonzero;
  const int dim = static_cast<int>(sv.size()) - nonzero;
  if (smax > 0.0) {
    if (dim > 0 && nonzero > 0 && sv(nonzero - 1) < opt.gap * sv(nonzero))
      throw Error(ErrorCode::NoSpectralGap, "singular values below tolerance not separated from the rest");
    if (dim == 0 && sv(sv.size() - 1) < opt.gap * cut)
      throw Error(ErrorCode::NoSpectralGap, "smallest singular value too close to the threshold");
  }
  ns.dim = dim;
  ns.vectors = svd.matrixV().rightCols(dim);
  return ns;
}

NullSpace left_null_space(const Eigen::MatrixXcd& m, const NullSpaceOptions& opt) {
  return numerical_null_space(Eigen::MatrixXcd(m.adjoint()), opt);
}

DefectEstimate estimate_defects(const FiniteSection& square, int N, const NullSpaceOptions& opt) {
  if (square.rows() < N || square.cols() < N) throw Error(ErrorCode::InvalidInput, "section smaller than N");
  DefectEstimate d;
  auto ker = numerical_null_space(Eigen::MatrixXcd(square.entries.leftCols(N)), opt);
  auto coker = numerical_null_space(Eigen::MatrixXcd(square.entries.topRows(N).adjoint()), opt);
  d.ker = ker.dim;
  d.coker = coker.dim;
  auto smallest_nonzero = [](const NullSpace& ns) {
    const int n = static_cast<int>(ns.singular_values.size()) - ns.dim;
    return n > 0 ? ns.singular_values(n - 1) : 0.0;
  };
  d.min_sigma_ker = smallest_nonzero(ker);
  d.min_sigma_coker = smallest_nonzero(coker);
  return d;
}

double residual_check(const FiniteSection& m, const TruncatedSeries& f, int margin) {
  auto g = f.trimmed(1e-14);
  if (g.empty()) return 0.0;
  if (g.lo() < 0 || g.hi() >= m.cols() - margin)
    throw Error(ErrorCode::WindowTooTight, "series window does not fit the section");
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(m.cols());
  for (int k = g.lo(); k <= g.hi(); ++k) x(k) = g[k];
  return (m.entries * x).norm() / x.norm();
}

static_assert(std::endian::native == std::endian::little, "section dumps assume a little-endian host");

void write_section(const std::string& path, const FiniteSection& s) {
  if (s.rows() != s.cols()) throw Error(ErrorCode::InvalidInput, "only square sections can be dumped");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  const std::uint32_t version = 1;
  const std::uint64_t n = static_cast<std::uint64_t>(s.rows());
  out.write("TPHK", 4);
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) {
      const double re = s.entries(i, j).real(), im = s.entries(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof re);
      out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
}

FiniteSection read_section(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t n = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in || std::memcmp(magic, "TPHK", 4) != 0 || version != 1)
    throw Error(ErrorCode::InvalidInput, "not a TPHK section file: " + path);
  FiniteSection s;
  s.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) {
      double re = 0, im = 0;
      in.read(reinterpret_cast<char*>(&re), sizeof re);
      in.read(reinterpret_cast<char*>(&im), sizeof im);
      s.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {re, im};
    }
  if (!in) throw Error(ErrorCode::InvalidInput, "truncated section file: " + path);
  return s;
}

}  // namespace tphk
