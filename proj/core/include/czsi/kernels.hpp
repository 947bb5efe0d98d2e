//==============================================================================
// kernels.hpp — homogeneous singular kernels K(x) = Omega(x/|x|)/|x|^n with
// polynomial angular parts, and their Fourier multipliers.
//
// A 2-D kernel is a finite sum over degrees d of
//     pi^p_d * 2*Re(c_d z^d) / |z|^(2+d),          z = x1 + i x2,
// with exact Gaussian-rational c_d; the angular part restricted to the circle
// is sum_d pi^p_d * 2*Re(c_d e^{i d t}).  A 1-D kernel is w * x/|x|^2 (the
// Hilbert kernel family), stored as a single degree-1 term.
//
// The multiplier of p.v. P(x)/|x|^(n+d) is gamma(n,d) * P(xi)/|xi|^d with
//     gamma(n,d) = (-i)^d * pi^(n/2) * Gamma(d/2) / Gamma((n+d)/2),
// which at n = 2 reduces to (-i)^d (2/d) pi exactly.  The formula is verified
// against an independent quadrature oracle in the unit tests before anything
// downstream relies on it.
//==============================================================================
#pragma once

#include <czsi/grid.hpp>
#include <czsi/polynomial.hpp>

#include <map>
#include <vector>

namespace czsi {

enum class Parity { even, odd };

struct KernelTerm {
  int degree = 1;
  GaussRat c;       // complex circle coefficient (1-D: c.im must be 0)
  int pi_pow = 0;   // extra real weight pi^pi_pow
  bool exact = true;

  /// Angular polynomial without the pi factor: 2-D 2*Re(c z^d); 1-D c.re * x.
  HomoPoly poly(int dim) const;
  double pi_weight() const;
};

/// Numeric multiplier constant gamma(n,d).
cplx gamma_multiplier(int dim, int degree);
/// Exact gamma(2,d)/pi as a Gaussian rational: (-i)^d * 2/d.
GaussRat gamma_over_pi_2d(int degree);

//------------------------------------------------------------------------------
// Symbol — restriction of the multiplier to the sphere.
//   2-D: m(theta) = sum_{m != 0} a_m e^{i m theta}, extended 0-homogeneously.
//   1-D: m(xi) = odd_part * sgn(xi).
//------------------------------------------------------------------------------
struct Symbol {
  int dim = 2;
  std::map<int, cplx> terms;  // 2-D trig coefficients
  cplx odd_part{0, 0};        // 1-D only

  cplx eval_theta(double theta) const;     // 2-D
  cplx eval(double u, double v) const;     // 2-D, (u,v) != 0
  cplx eval1d(double xi) const;            // 1-D, xi != 0
  /// Evaluate at a physical frequency vector of either dimension (never DC).
  cplx eval_xi(const std::array<double, 2>& xi) const;
  double max_abs(int samples = 4096) const;
};

class KernelSpec {
 public:
  KernelSpec(int dim, std::vector<KernelTerm> terms);

  /// Same validation as the constructor; named to mirror the expansion route
  /// (coefficients of Omega(t) = sum 2*Re(c_m e^{i m t})).
  static KernelSpec from_fourier(int dim, std::vector<KernelTerm> terms);

  static KernelSpec hilbert();                 // 1-D, (1/pi)/x
  static KernelSpec riesz_1d();                // 1-D, 1/x (weight 1)
  static KernelSpec riesz_first_order_2d(int j);  // x_j/|x|^3
  static KernelSpec second_order_2d();         // x1 x2 / |x|^4
  /// -(1/pi) x1x2/|z|^4 + lambda (2/pi)(x1^3 x2 - x1 x2^3)/|z|^6.
  static KernelSpec lambda_family(const Rat& lambda);
  /// -(1/pi) x1x2/|z|^4 + (2/pi) P4/|z|^6 with
  /// P4 = alpha (x1^3 x2 - x1 x2^3) + beta (x1^4 + x2^4 - 6 x1^2 x2^2).
  static KernelSpec fourth_order_family(const Rat& alpha, const Rat& beta);

  int dim() const { return dim_; }
  Parity parity() const { return parity_; }
  const std::vector<KernelTerm>& terms() const { return terms_; }
  bool coefficients_exact() const;

  /// K at a point away from the origin.
  double eval(double x1, double x2 = 0.0) const;
  /// Angular part on the unit sphere (2-D: angle; 1-D: sign of the argument).
  double omega(double theta_or_sign) const;

  Symbol multiplier() const;

  /// Spherical-mean cancellation check (quadrature, tolerance 1e-10 relative
  /// to the angular scale).
  bool check_cancellation(int quadrature_points = 4096) const;

  /// Test hook: returns a copy whose angular part is offset by `bias`,
  /// deliberately violating cancellation.  Not expressible in kernel files.
  KernelSpec with_injected_constant(double bias) const;
  double constant_bias() const { return constant_bias_; }

 private:
  int dim_;
  Parity parity_ = Parity::even;
  std::vector<KernelTerm> terms_;  // sorted by degree, distinct degrees
  double constant_bias_ = 0.0;
};

}  // namespace czsi
