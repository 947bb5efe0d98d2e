//==============================================================================
// witness.hpp — explicit functions b with a known image under a singular
// integral operator, so that a truncation at a point becomes an honest
// integral against b.  Each construction solves a small matching problem
// for a radial ansatz against a fundamental solution, takes the relevant
// derivative, and records every constant it fixed along the way.
//
// The flags on a WitnessFunction are verified at construction, never just
// declared; a construction whose claimed property fails to check throws.
//==============================================================================
#pragma once

#include <czsi/algebra.hpp>
#include <czsi/bessel.hpp>
#include <czsi/grid.hpp>
#include <czsi/polynomial.hpp>

#include <array>
#include <optional>
#include <string>

namespace czsi {

struct WitnessFlags {
  bool bounded = false;
  bool compactly_supported = false;
  bool bmo = false;
  bool zero_mean = false;
};

struct WitnessFunction {
  std::string closed_form;                 // symbolic tag + parameters ("" if none)
  GridField samples;
  std::optional<double> support_radius;
  std::optional<double> decay_exponent;    // claimed |b(x)| <= C |x|^-decay, |x| >= 2
  WitnessFlags flags;
};

/// Flag verification: bounded => finite max; compactly_supported => samples
/// vanish outside support_radius (<= 1e-12); zero_mean => |integral| <=
/// 1e-8 * l1 norm.  When a closed-form mean is supplied (exact radial
/// integration) it replaces the grid sum, whose boundary error for a
/// discontinuous integrand is only O(1/N).  Throws std::logic_error naming
/// the failed flag.
void verify_witness(const WitnessFunction& w,
                    std::optional<double> closed_form_mean = std::nullopt);

//------------------------------------------------------------------------------
// Second-order witness: b = (1/|B|) chi_B.  Matching the radial ansatz
// A0 + A1 r^2 to the logarithmic potential across |x| = 1 gives A1 = 1/(4 pi)
// and hence b = (1/pi) chi_B in the plane; the x1x2/|x|^4 operator maps it to
// the kernel itself outside the closed unit ball and to 0 inside.
//------------------------------------------------------------------------------
WitnessFunction b_second_order(int n, const Grid& grid);

//------------------------------------------------------------------------------
// First-order witnesses.
//------------------------------------------------------------------------------

/// 1-D closed form b(x) = (1/(pi x)) log(|1+x|/|1-x|); b(0) = 2/pi by the
/// limit.  At x = +-1 the IEEE limit (+infinity) is returned, not a throw.
double b_first_order_1d(double x);

/// Sampled wrapper for the 1-D closed form.  Nodes landing exactly on the
/// (integrable) log singularities at +-1 are sampled a quarter cell away to
/// keep the field finite.  Flags {bmo}; claimed decay exponent 2.
WitnessFunction b_first_order_1d_witness(const Grid& grid);

/// Planar analogue: phi = (1/(2 pi)) / |x| outside the unit ball and constant
/// inside; b is the half-order derivative of phi, realized spectrally as
///     b = (1/(2 pi)) * sum_k Rk(dphi/dx_k)
/// with the raw first-order operators x_k/|x|^3 (whose multiplier is
/// -2 pi i xi_k/|xi|, which is what fixes the 1/(2 pi)).  The x_j/|x|^3
/// operator then maps b back to the truncated kernel chi_{|x|>1} x_j/|x|^3;
/// j selects which component identity the tests exercise.  Flags {bmo};
/// claimed decay exponent 3.
WitnessFunction b_first_order_2d(int j, const Grid& grid);

/// Mean-oscillation norm over all dyadic subcubes of the torus, from the full
/// box down to cubes 4 cells wide: max over Q of (1/|Q|) int_Q |f - mean_Q f|.
double bmo_norm(const GridField& f);

//------------------------------------------------------------------------------
// Fourth-order (bilaplacian) witness.  phi = A0 + A1 r^2 + A2 r^4 + A3 r^6
// matches (1/(8 pi)) r^2 log r together with its first three radial
// derivatives at r = 1 (exact rational solve); then
//     b = (bilaplacian of phi) restricted to B = chi_B (alpha + beta r^2)
// with alpha = 4/pi, beta = -6/pi, and the operator with kernel
// -(1/pi) x1x2/|z|^4 + (any harmonic degree-4 term)/|z|^6 maps b to the
// kernel outside the ball plus c_xy * x1x2 inside, c_xy = 288 A3 = -3/pi.
// The harmonic fourth-degree part contributes nothing inside: P4(del) kills
// both r^4 and r^6, asserted symbolically.
//------------------------------------------------------------------------------
struct BilaplacianWitness {
  WitnessFunction b;
  double c_xy = 0.0;
  Scalar c_xy_exact;               // -3/pi
  Scalar alpha;                    // 4/pi
  Scalar beta;                     // -6/pi
  std::array<Rat, 4> a_over_8pi;   // A_i = a_i/(8 pi): {-1/6, -1/4, 1/2, -1/12}
};

/// P4 must be zero or harmonic homogeneous of degree 4.
BilaplacianWitness b_bilaplacian(const HomoPoly& P4, const Grid& grid);

//------------------------------------------------------------------------------
// The compactly supported pair (psi, beta0): psi = s (1-|z|^2)^2 chi_B with
// the scale s = c_xy/8 = -3/(8 pi) fixed so that d1 d2 psi = c_xy x1x2 chi_B
// matches the bilaplacian constant; beta0 = laplacian of psi
// = (3/pi)(1 - 2 r^2) chi_B, which integrates to zero exactly.
// The normalized second-order operator (multiplier xi1 xi2/|xi|^2) maps
// beta0 to c_xy x1x2 chi_B.
//------------------------------------------------------------------------------
struct PsiBeta {
  WitnessFunction psi;
  WitnessFunction beta0;
  Scalar scale;                    // -3/(8 pi)
};

PsiBeta psi_beta0(const Grid& grid);

/// beta = U^{-1} beta0, computed spectrally; throws when U is not invertible.
WitnessFunction beta_full(const CZElement& U, const WitnessFunction& beta0);

/// Structured text dump of every fixed constant with its derivation note.
std::string constants_ledger();

}  // namespace czsi
