//==============================================================================
// bessel.hpp — the radial profiles G_m(r) = J_m(r) / r^m that appear in the
// closed-form transforms of radial bump functions.  G_m extends analytically
// through r = 0 with G_m(0) = 1 / (2^m m!).
//==============================================================================
#pragma once

namespace czsi {

/// Bessel function of the first kind, integer order 0 <= m <= 8, r >= 0.
double bessel_J(int m, double r);

/// J_m(r)/r^m with the removable singularity filled in; same domain.
/// Absolute accuracy 1e-10 on r in [0, 100].
double bessel_G(int m, double r);

}  // namespace czsi
