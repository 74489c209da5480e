#pragma once

#include <Eigen/Dense>
#include <string>

#include "tphk/fourier.hpp"
#include "tphk/rational.hpp"
#include "tphk/shift.hpp"

namespace tphk {

/// Compression of an operator on H^2 to the first `rows` output and `cols`
/// input Fourier modes.
struct FiniteSection {
  Eigen::MatrixXcd entries;
  std::string meta;
  int grid = 0;       // FFT grid used for Hankel columns (0 when none)
  double tail = 0.0;  // largest aliasing/tail bound met while building

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

enum class SectionKind { Toeplitz, HankelAlpha, Plus, Minus, BlockV };

/// Entries a_(j-k) from a coefficient window that covers [-(cols-1), rows-1].
FiniteSection toeplitz_section(const TruncatedSeries& coefficients, int rows, int cols);
FiniteSection toeplitz_section(const RationalSymbol& a, int rows, int cols);
/// Column k is P[b chi^-1 alpha^k] restricted to modes 0..rows-1.
FiniteSection hankel_section(const RationalSymbol& b, const ShiftParams& shift, int rows, int cols,
                             const GridOptions& opt = {});

/// Toeplitz uses `a`, HankelAlpha uses `b`, Plus/Minus use both; BlockV
/// builds [[0, T(d)], [-T(c), T(a_alpha^-1)]] from the pair (a, b), giving
/// a (2 rows) x (2 cols) matrix. Throws GridTooSmall when a column cannot
/// be resolved.
FiniteSection operator_section(SectionKind kind, const RationalSymbol& a, const RationalSymbol& b,
                               const ShiftParams& shift, int rows, int cols = 0, const GridOptions& opt = {});

struct NullSpace {
  int dim = 0;
  Eigen::MatrixXcd vectors;           // orthonormal columns
  Eigen::VectorXd singular_values;    // descending
};

struct NullSpaceOptions {
  double tol = 1e-8;   // relative to sigma_max
  double gap = 100.0;  // required separation factor
};

/// Right null space from the SVD. Throws NoSpectralGap when the singular
/// values below tol * sigma_max are not separated from the rest by `gap`,
/// or when nothing is below the threshold but sigma_min sits within a
/// factor `gap` of it.
NullSpace numerical_null_space(const Eigen::MatrixXcd& m, const NullSpaceOptions& opt = {});
inline NullSpace numerical_null_space(const FiniteSection& s, const NullSpaceOptions& opt = {}) {
  return numerical_null_space(s.entries, opt);
}
/// Null space of the conjugate transpose.
NullSpace left_null_space(const Eigen::MatrixXcd& m, const NullSpaceOptions& opt = {});

/// Kernel and cokernel dimensions from a square section of size 2N: the
/// kernel is read from its first N columns, the cokernel from the
/// conjugate transpose of its first N rows.
struct DefectEstimate {
  int ker = 0;
  int coker = 0;
  double min_sigma_ker = 0.0;    // smallest nonzero singular value seen
  double min_sigma_coker = 0.0;
};
DefectEstimate estimate_defects(const FiniteSection& square, int N, const NullSpaceOptions& opt = {});

/// ||M f|| / ||f|| for an analytic coefficient window. Throws
/// WindowTooTight when f (after dropping entries below 1e-14 max|f|) has
/// modes below 0 or at or beyond cols - margin.
double residual_check(const FiniteSection& m, const TruncatedSeries& f, int margin = 0);

/// Dense dump: "TPHK", u32 version, u64 N, then N*N (re, im) f64 pairs in
/// row-major order, little-endian. Square sections only.
void write_section(const std::string& path, const FiniteSection& s);
FiniteSection read_section(const std::string& path);

}  // namespace tphk
