//==============================================================================
// algebra.hpp — the operator algebra generated by the identity and one
// homogeneous singular kernel: division tests, invertibility on the circle,
// and the canonical factorization T = R_P o U.
//
// Elements are lambda*I + T_K.  The structural questions answered here:
//   * does the lowest-degree angular term divide every other term (exactly)?
//   * is the full symbol lambda + m(theta) bounded away from zero?
//   * when division holds, split T as R_P o U with U = mu*I + (smoothing part),
//     assembling U's coefficients exactly from the polynomial quotients and
//     the exact multiplier-constant ratios.
//
// Division runs over the rationals (GMP); the Fourier-side shortcut decides
// the same predicate from the circle coefficients alone without constructing
// quotients.  Both routes are cross-checked in the test suite.
//==============================================================================
#pragma once

#include <czsi/grid.hpp>
#include <czsi/kernels.hpp>
#include <czsi/polynomial.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace czsi {

//------------------------------------------------------------------------------
// CZElement — lambda*I plus an optional kernel part.  The kernel part is
// normally a KernelSpec; a factorization whose co-factor has angular degree
// beyond the recovery cap carries it as a bare circle symbol instead.
//------------------------------------------------------------------------------
struct CZElement {
  double lambda = 0.0;
  std::optional<KernelSpec> spec;   // kernel part, when expressible
  std::optional<Symbol> raw_symbol; // kernel-part symbol when spec is absent

  static CZElement identity() { return CZElement{1.0, {}, {}}; }
  static CZElement pure(double lam) { return CZElement{lam, {}, {}}; }
  static CZElement from_kernel(double lam, KernelSpec k);

  bool symbol_only() const { return !spec && raw_symbol.has_value(); }
  int dim() const;

  /// Symbol of the kernel part alone (zero symbol for pure multiples of I).
  Symbol kernel_symbol() const;
  /// lambda + m at a point of the circle (2-D) or at a signed frequency (1-D).
  cplx total_at_theta(double theta) const;
  cplx total_at_xi(const std::array<double, 2>& xi) const;
};

//------------------------------------------------------------------------------
// Exact homogeneous division
//------------------------------------------------------------------------------

/// Exact quotient Q with P*Q == target in Q[x,y], or nullopt when no such
/// polynomial exists.  Throws if P is zero or deg P > deg target.
std::optional<HomoPoly> divides(const HomoPoly& P, const HomoPoly& target);

/// A rational polynomial together with a power of pi.
struct ScaledPoly {
  HomoPoly poly;
  int pi_pow = 0;
};

struct DivisionReport {
  bool holds = false;
  int base_degree = 0;
  int base_pi_pow = 0;
  std::optional<HomoPoly> base;        // angular part of the lowest-degree term
  /// degree -> Q_d with base * Q_d == term_d exactly (pi powers included);
  /// filled by the polynomial route only.
  std::map<int, ScaledPoly> quotients;
  std::optional<int> failure_degree;   // first degree where division fails
};

/// Polynomial route: exact division of every angular term by the lowest one.
DivisionReport division_condition(const KernelSpec& spec);

/// Fourier route (2-D even kernels): decides the same predicate from the
/// circle coefficients c_d alone.  With w = the lowest nonzero coefficient at
/// degree D, division holds iff every degree is a multiple D*p of D and
/// Re(c_{D*p} * (i * conj(w))^p) = 0 — exactly when the coefficients are
/// exact, within 1e-12 relative otherwise.  Verdict fields only (no
/// quotients).  Throws on an empty term list or on odd-parity input.
DivisionReport division_condition_fourier_2d(const std::vector<KernelTerm>& terms);

//------------------------------------------------------------------------------
// Invertibility of lambda + m on the circle
//------------------------------------------------------------------------------
struct InvertibilityReport {
  bool invertible = false;
  double min_abs_symbol = 0.0;
  double argmin_angle = 0.0;   // 1-D: 0 for xi > 0, pi for xi < 0
};

/// Minimum of |lambda + m| over the circle: 2^16 samples plus a golden-section
/// refinement around the best sample.  Invertible iff the minimum exceeds 1e-9.
InvertibilityReport invertibility(const CZElement& elem);

//------------------------------------------------------------------------------
// Factorization T = R_P o U
//------------------------------------------------------------------------------
struct Factorization {
  bool ok = false;
  int base_degree = 0;
  int base_pi_pow = 0;
  GaussRat base_coeff;                 // circle coefficient of P's term
  std::optional<HomoPoly> base;        // angular part of P
  CZElement u;                         // co-factor; T = R_P o U when ok
  bool exact = false;                  // U coefficients recovered exactly
  bool symbol_only = false;            // U kernel part carried as a symbol
  double max_product_residual = 0.0;   // max over 64 angles of |m_RP*m_U - m_T|
  std::string diagnostic;
};

/// Split T as R_P o U where R_P keeps only the lowest-degree angular term.
/// Requires the division condition; U's circle expansion is assembled exactly
/// from the division quotients and the multiplier-constant ratios, and the
/// kernel part is recovered when every angular degree is at most 12 (beyond
/// that the co-factor is returned symbol-only and flagged).
Factorization factorize(const KernelSpec& spec);

/// Spectral inverse (lambda*I + T)^{-1} as a grid operator.  Throws
/// std::domain_error when the element is not invertible.  The zero frequency
/// is annihilated (grid operators here act modulo constants).
std::function<GridField(const GridField&)> invert_element(const CZElement& elem);

//------------------------------------------------------------------------------
// Structured text forms (used by the command-line verdicts)
//------------------------------------------------------------------------------
std::string division_report_text(const DivisionReport& report);
std::string invertibility_report_text(const InvertibilityReport& report);
std::string factorization_text(const Factorization& fact);

}  // namespace czsi
