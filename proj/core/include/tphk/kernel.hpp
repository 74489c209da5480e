#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tphk/matching.hpp"
#include "tphk/oracle.hpp"
#include "tphk/wiener_hopf.hpp"

namespace tphk {

enum class SubspaceTag { PMinusC, PPlusC, PhiPlusD, PhiMinusD, Lifted };
enum class Regime { RightInv, LeftInv, Split, Lifted };

std::string_view to_string(SubspaceTag tag) noexcept;
std::string_view to_string(Regime regime) noexcept;

/// Regime from the subordinated indices.
Regime classify_regime(int kappa1, int kappa2) noexcept;

struct BasisFunction {
  TruncatedSeries series;               // unit l2 coefficient norm
  std::optional<RationalSymbol> exact;  // same function, when known in closed form
  SubspaceTag tag;
  double residual = -1.0;               // finite-section residual, when gated
};

struct KernelBasis {
  std::vector<BasisFunction> functions;
  int sign = 1;           // +1: T(a) + H(b), -1: T(a) - H(b)
  bool cokernel = false;  // true: kernel of the adjoint operator
};

/// The two families spanning im P^+(g) and im P^-(g) for a matching g with
/// n = ind T(g) >= 1. Throws NotApplicable otherwise.
struct ToeplitzSplit {
  std::vector<RationalSymbol> plus;
  std::vector<RationalSymbol> minus;
};
ToeplitzSplit toeplitz_kernel_split(const RationalSymbol& g, const ShiftParams& shift);

/// dim im P^+(g), dim im P^-(g) (both 0 when ind T(g) <= 0).
std::pair<int, int> split_dimensions(int n, int sigma) noexcept;

/// J_alpha Q g P f for f in ker T(g). Throws NotInKernel when the
/// residual of T(g) f exceeds 1e-8.
TruncatedSeries apply_P_alpha(const RationalSymbol& g, const TruncatedSeries& f, const ShiftParams& shift);

/// 2 phi(s) = u - sign J_alpha Q c u + sign J_alpha Q a_alpha^-1 s with
/// u = T_r^-1(c) T(a_alpha^-1) s. Throws WrongRegime when kappa1 < 0 and
/// NotInKernel when s is not in ker T(d).
TruncatedSeries phi_pm(const TruncatedSeries& s, const MatchingPair& pair, const WHFactorization& fac_c, int sign,
                       const ShiftParams& shift);

struct ImageTest {
  bool member = false;
  std::vector<cplx> functionals;  // coefficients 0..n-1 of h alpha_-^n
  TruncatedSeries quotient;       // P(chi^-n h) when member
};
/// Membership of h in im T(chi^n), decided at 1e-10 relative to ||h||.
ImageTest in_image_chi_power(const TruncatedSeries& h, int n, const ShiftParams& shift);

struct OracleCheck {
  bool ran = false;
  int N = 0;
  int ker_plus = 0, coker_plus = 0, ker_minus = 0, coker_minus = 0;
  bool agree = false;
  std::string error;  // set when the oracle could not decide
};

struct DefectReport {
  int ker_plus = 0, coker_plus = 0, ker_minus = 0, coker_minus = 0;
  Regime regime = Regime::Split;
  int kappa1 = 0, kappa2 = 0;
  int sigma_c = 1, sigma_d = 1;
  /// ker+, coker+, ker-, coker- in that order, when requested.
  std::vector<KernelBasis> bases;
  OracleCheck oracle;
  double max_residual = 0.0;
};

struct DefectOptions {
  bool with_bases = false;
  bool with_oracle = false;
  int oracle_N = 256;
  NullSpaceOptions null_space;
};

/// Dispatches on the regime; always enforces
/// (ker+ - coker+) + (ker- - coker-) = kappa1 + kappa2 (CrossCheckMismatch).
DefectReport defect_numbers(const MatchingPair& pair, const ShiftParams& shift, const DefectOptions& opt = {});

/// Oracle dims from a 2N square section of T(a) +- H(b).
OracleCheck oracle_defects(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift, int N,
                           const NullSpaceOptions& opt = {});

/// Kernel (or, with cokernel = true, cokernel via the adjoint pair) of
/// T(a) + sign H(b). Every function is checked against a finite section;
/// a residual above 1e-6 throws CrossCheckMismatch.
KernelBasis kernel_cokernel_bases(const MatchingPair& pair, const ShiftParams& shift, bool cokernel, int sign);

struct CoburnMatch {
  std::string tag;
  int sign;                // which operator the statement covers
  int oracle_ker = -1;     // filled by the oracle check
  int oracle_coker = -1;
  bool verified = false;   // min(ker, coker) == 0 at the oracle
};

/// Every Coburn-Simonenko class the pair falls into (empty when none).
/// With verify, each match is checked by the oracle at N = 256.
std::vector<CoburnMatch> coburn_class(const RationalSymbol& a, const RationalSymbol& b, const ShiftParams& shift,
                                      bool verify = true);

enum class TransferDirection { U1, U2 };

/// U1: ker T(V(a,b)) -> ker diag(T+H, T-H); U2 is its inverse. Throws
/// NotInKernel when the input residual exceeds 1e-8.
std::pair<TruncatedSeries, TruncatedSeries> transfer_U(const MatchingPair& pair, const ShiftParams& shift,
                                                       TransferDirection dir,
                                                       const std::pair<TruncatedSeries, TruncatedSeries>& v);

}  // namespace tphk
