#include <czsi/witness.hpp>

#include <czsi/operators.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace czsi {

namespace {

using std::numbers::pi;

GridField zero_field(const Grid& grid) {
  GridField f;
  f.grid = grid;
  f.values.assign(static_cast<size_t>(grid.point_count()), cplx{0, 0});
  f.real_valued = true;
  return f;
}

/// Fill a real field from a pointwise rule on node coordinates.
template <typename Fn>
GridField fill(const Grid& grid, Fn&& fn) {
  GridField f = zero_field(grid);
  const std::int64_t n = grid.point_count();
  for (std::int64_t i = 0; i < n; ++i) {
    const auto x = grid.node(i);
    f.values[static_cast<size_t>(i)] = cplx(fn(x), 0.0);
  }
  return f;
}

double grid_mean_sum(const GridField& f) {
  const double cell = std::pow(f.grid.cell(), f.grid.dim);
  double acc = 0.0;
  for (const auto& v : f.values) acc += v.real();
  return acc * cell;
}

/// Exact solve of the 4x4 rational system (Gaussian elimination, no pivoting
/// needed: the matrix is already triangular-friendly and nonsingular).
std::array<Rat, 4> solve4(std::array<std::array<Rat, 4>, 4> m,
                          std::array<Rat, 4> rhs) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    while (piv < 4 && m[piv][col] == 0) ++piv;
    if (piv == 4) throw std::logic_error("witness: singular matching system");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int row = col + 1; row < 4; ++row) {
      if (m[row][col] == 0) continue;
      Rat f = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  std::array<Rat, 4> out;
  for (int row = 3; row >= 0; --row) {
    Rat acc = rhs[row];
    for (int k = row + 1; k < 4; ++k) acc -= m[row][k] * out[k];
    out[row] = acc / m[row][row];
  }
  return out;
}

HomoPoly radial_power(int k) {  // (x^2 + y^2)^k as a homogeneous polynomial
  HomoPoly r2 = HomoPoly::monomial_x() * HomoPoly::monomial_x() +
                HomoPoly::monomial_y() * HomoPoly::monomial_y();
  HomoPoly acc = r2;
  for (int i = 1; i < k; ++i) acc = acc * r2;
  return acc;
}

struct MatchedConstants {
  std::array<Rat, 4> a;  // A_i = a_i / (8 pi)
  Scalar alpha, beta, c_xy;
};

// Match A0 + A1 r^2 + A2 r^4 + A3 r^6 to (1/(8 pi)) r^2 log r and its first
// three radial derivatives at r = 1.  With A_i = a_i/(8 pi) the system is
// rational: values (0, 1, 3, 2) for (phi, phi', phi'', phi''').
MatchedConstants matched_constants() {
  std::array<std::array<Rat, 4>, 4> m{{{Rat(1), Rat(1), Rat(1), Rat(1)},
                                       {Rat(0), Rat(2), Rat(4), Rat(6)},
                                       {Rat(0), Rat(2), Rat(12), Rat(30)},
                                       {Rat(0), Rat(0), Rat(24), Rat(120)}}};
  std::array<Rat, 4> rhs{Rat(0), Rat(1), Rat(3), Rat(2)};
  std::array<Rat, 4> a = solve4(m, rhs);
  if (a[0] + a[1] + a[2] + a[3] != 0)
    throw std::logic_error("witness: matching lost phi(1) = 0");
  MatchedConstants out;
  out.a = a;
  // Bilaplacian of the ansatz: r^4 -> 64, r^6 -> 576 r^2 (planar radial
  // laplacian: Delta r^{2k} = (2k)^2 r^{2k-2}).
  out.alpha = Scalar(Rat(8) * a[2], -1);   // 64 A2 = 8 a2 / pi
  out.beta = Scalar(Rat(72) * a[3], -1);   // 576 A3 = 72 a3 / pi
  out.c_xy = Scalar(Rat(36) * a[3], -1);   // 288 A3 = 36 a3 / pi
  return out;
}

}  // namespace

//------------------------------------------------------------------------------
// Flag verification
//------------------------------------------------------------------------------
void verify_witness(const WitnessFunction& w,
                    std::optional<double> closed_form_mean) {
  const auto& f = w.samples;
  if (w.flags.bounded) {
    if (!std::isfinite(linf_norm(f)))
      throw std::logic_error("witness flag 'bounded' failed: max is not finite");
  }
  if (w.flags.compactly_supported) {
    if (!w.support_radius)
      throw std::logic_error(
          "witness flag 'compactly_supported' failed: no support radius");
    const double r = *w.support_radius;
    const std::int64_t n = f.grid.point_count();
    for (std::int64_t i = 0; i < n; ++i) {
      const auto x = f.grid.node(i);
      const double rr = std::hypot(x[0], f.grid.dim == 2 ? x[1] : 0.0);
      if (rr > r && std::abs(f.values[static_cast<size_t>(i)]) > 1e-12)
        throw std::logic_error(
            "witness flag 'compactly_supported' failed outside the support");
    }
  }
  if (w.flags.zero_mean) {
    const double mean =
        closed_form_mean ? *closed_form_mean : grid_mean_sum(f);
    if (std::abs(mean) > 1e-8 * std::max(l1_norm(f), 1e-300))
      throw std::logic_error("witness flag 'zero_mean' failed: |integral| = " +
                             std::to_string(std::abs(mean)));
  }
  if (w.flags.bmo) {
    if (!std::isfinite(bmo_norm(f)))
      throw std::logic_error("witness flag 'bmo' failed: norm is not finite");
  }
}

//------------------------------------------------------------------------------
// Second-order witness
//------------------------------------------------------------------------------
WitnessFunction b_second_order(int n, const Grid& grid) {
  if (n != 2)
    throw std::invalid_argument("b_second_order: only the planar case n = 2");
  if (grid.dim != 2)
    throw std::invalid_argument("b_second_order: needs a 2-D grid");
  WitnessFunction w;
  w.closed_form = "(1/pi) * indicator(|x| <= 1)";
  w.samples = sample(BallDesc{{0, 0}, 1.0, 1.0 / pi}, grid);
  w.support_radius = 1.0;
  w.flags.bounded = true;
  w.flags.compactly_supported = true;
  verify_witness(w);
  return w;
}

//------------------------------------------------------------------------------
// First-order witnesses
//------------------------------------------------------------------------------
double b_first_order_1d(double x) {
  if (x == 0.0) return 2.0 / pi;
  // At x = +-1 the log term is -inf/+inf and the IEEE product delivers the
  // correct signed limit (+infinity from both sides).
  return std::log(std::abs(1 + x) / std::abs(1 - x)) / (pi * x);
}

WitnessFunction b_first_order_1d_witness(const Grid& grid) {
  if (grid.dim != 1)
    throw std::invalid_argument("b_first_order_1d_witness: needs a 1-D grid");
  const double quarter = grid.cell() / 4;
  WitnessFunction w;
  w.closed_form = "(1/(pi x)) * log(|1+x|/|1-x|)";
  w.samples = fill(grid, [&](const std::array<double, 2>& x) {
    double t = x[0];
    if (std::abs(std::abs(t) - 1.0) < 1e-14) t += quarter;  // integrable spike
    return b_first_order_1d(t);
  });
  w.decay_exponent = 2.0;
  w.flags.bmo = true;
  verify_witness(w);
  return w;
}

WitnessFunction b_first_order_2d(int j, const Grid& grid) {
  if (j != 1 && j != 2)
    throw std::invalid_argument("b_first_order_2d: component must be 1 or 2");
  if (grid.dim != 2)
    throw std::invalid_argument("b_first_order_2d: needs a 2-D grid");

  // dphi/dx_k = -(1/(2 pi)) x_k/|x|^3 outside the closed unit ball, 0 inside.
  GridField b = zero_field(grid);
  for (int k = 1; k <= 2; ++k) {
    GridField g = fill(grid, [&](const std::array<double, 2>& x) {
      const double r = std::hypot(x[0], x[1]);
      if (r <= 1.0) return 0.0;
      return -x[k - 1] / (2 * pi * r * r * r);
    });
    GridField rk = apply_full(KernelSpec::riesz_first_order_2d(k), g);
    for (size_t i = 0; i < b.values.size(); ++i) b.values[i] += rk.values[i];
  }
  for (auto& v : b.values) v *= 1.0 / (2 * pi);

  WitnessFunction w;
  w.closed_form = "half-order derivative of the matched 1/|x| potential (j=" +
                  std::to_string(j) + ")";
  w.samples = std::move(b);
  w.decay_exponent = 3.0;
  w.flags.bmo = true;
  verify_witness(w);
  return w;
}

//------------------------------------------------------------------------------
// Dyadic mean-oscillation norm
//------------------------------------------------------------------------------
double bmo_norm(const GridField& f) {
  const int N = f.grid.resolution;
  double worst = 0.0;
  for (int side = N; side >= 4; side /= 2) {
    const int blocks = N / side;
    if (f.grid.dim == 1) {
      for (int b = 0; b < blocks; ++b) {
        double mean = 0.0;
        for (int i = 0; i < side; ++i)
          mean += f.values[static_cast<size_t>(b * side + i)].real();
        mean /= side;
        double osc = 0.0;
        for (int i = 0; i < side; ++i)
          osc += std::abs(f.values[static_cast<size_t>(b * side + i)].real() -
                          mean);
        worst = std::max(worst, osc / side);
      }
    } else {
      for (int b1 = 0; b1 < blocks; ++b1)
        for (int b2 = 0; b2 < blocks; ++b2) {
          double mean = 0.0;
          for (int i = 0; i < side; ++i)
            for (int k = 0; k < side; ++k)
              mean += f.values[static_cast<size_t>(
                                   f.grid.flatten(b1 * side + i, b2 * side + k))]
                          .real();
          mean /= double(side) * side;
          double osc = 0.0;
          for (int i = 0; i < side; ++i)
            for (int k = 0; k < side; ++k)
              osc += std::abs(
                  f.values[static_cast<size_t>(
                               f.grid.flatten(b1 * side + i, b2 * side + k))]
                      .real() -
                  mean);
          worst = std::max(worst, osc / (double(side) * side));
        }
    }
  }
  return worst;
}

//------------------------------------------------------------------------------
// Bilaplacian witness
//------------------------------------------------------------------------------
BilaplacianWitness b_bilaplacian(const HomoPoly& P4, const Grid& grid) {
  if (!P4.is_zero()) {
    if (P4.degree() != 4)
      throw std::invalid_argument("b_bilaplacian: extra term must have degree 4");
    if (!P4.is_harmonic())
      throw std::invalid_argument("b_bilaplacian: extra term must be harmonic");
    // The harmonic fourth-degree part must kill both radial powers it meets
    // inside the ball; anything else would corrupt the x1x2 term.
    if (!P4.diff_apply(radial_power(2)).is_zero() ||
        !P4.diff_apply(radial_power(3)).is_zero())
      throw std::logic_error("b_bilaplacian: radial annihilation failed");
  }
  if (grid.dim != 2)
    throw std::invalid_argument("b_bilaplacian: needs a 2-D grid");

  const MatchedConstants mc = matched_constants();

  BilaplacianWitness out;
  out.alpha = mc.alpha;
  out.beta = mc.beta;
  out.c_xy_exact = mc.c_xy;
  out.c_xy = mc.c_xy.value();
  out.a_over_8pi = mc.a;

  const double av = mc.alpha.value();
  const double bv = mc.beta.value();
  WitnessFunction w;
  w.closed_form = "indicator(|z| <= 1) * (4 - 6 |z|^2)/pi";
  w.samples = fill(grid, [&](const std::array<double, 2>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return r2 <= 1.0 ? av + bv * r2 : 0.0;
  });
  w.support_radius = 1.0;
  w.flags.bounded = true;
  w.flags.compactly_supported = true;
  verify_witness(w);
  out.b = std::move(w);
  return out;
}

//------------------------------------------------------------------------------
// The pair (psi, beta0)
//------------------------------------------------------------------------------
PsiBeta psi_beta0(const Grid& grid) {
  if (grid.dim != 2)
    throw std::invalid_argument("psi_beta0: needs a 2-D grid");

  // Scale from the bilaplacian constant: d1 d2 [s (1-r^2)^2] = 8 s x1x2
  // inside the ball (boundary terms vanish with the gradient), so s = c_xy/8.
  const Scalar c_xy = matched_constants().c_xy;
  const Scalar s(c_xy.rat / 8, c_xy.pi_pow);
  const double sv = s.value();

  PsiBeta out;
  out.scale = s;

  WitnessFunction psi;
  psi.closed_form = "s (1-|z|^2)^2 indicator(|z| <= 1), s = -3/(8 pi)";
  psi.samples = fill(grid, [&](const std::array<double, 2>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    if (r2 > 1.0) return 0.0;
    const double t = 1 - r2;
    return sv * t * t;
  });
  psi.support_radius = 1.0;
  psi.flags.bounded = true;
  psi.flags.compactly_supported = true;
  verify_witness(psi);
  out.psi = std::move(psi);

  // beta0 = laplacian of psi = s (16 r^2 - 8) inside the ball.  Its mean
  // vanishes exactly: int_0^1 (16 r^2 - 8) r dr = 16/4 - 8/2 = 0.
  const Rat radial_integral = Rat(16) / 4 - Rat(8) / 2;
  if (radial_integral != 0)
    throw std::logic_error("psi_beta0: beta0 mean is not exactly zero");

  WitnessFunction beta0;
  beta0.closed_form = "(3/pi)(1 - 2 |z|^2) indicator(|z| <= 1)";
  beta0.samples = fill(grid, [&](const std::array<double, 2>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return r2 <= 1.0 ? sv * (16 * r2 - 8) : 0.0;
  });
  beta0.support_radius = 1.0;
  beta0.flags.bounded = true;
  beta0.flags.compactly_supported = true;
  beta0.flags.zero_mean = true;
  verify_witness(beta0, 0.0);  // exact radial integral above
  out.beta0 = std::move(beta0);
  return out;
}

WitnessFunction beta_full(const CZElement& U, const WitnessFunction& beta0) {
  auto inverse = invert_element(U);  // throws when U is not invertible
  WitnessFunction w;
  w.closed_form = "";
  w.samples = inverse(beta0.samples);
  w.decay_exponent = 3.0;
  w.flags.bounded = true;
  w.flags.zero_mean = true;  // the inverse zeroes the mean mode outright
  verify_witness(w);
  return w;
}

//------------------------------------------------------------------------------
// Constants ledger
//------------------------------------------------------------------------------
std::string constants_ledger() {
  std::ostringstream out;
  out << "fixed constants (exact unless noted)\n"
      << "------------------------------------\n"
      << "c_2 = 1/(2 pi)         planar fundamental-solution weight; from the\n"
      << "                       gradient match of log|x|/(2 pi) at |x| = 1\n"
      << "gamma_2 = 1/(2 pi)     scale tying sum_k Rk(d_k phi) to the half-order\n"
      << "                       derivative when Rk uses the raw x_k/|x|^3 kernel\n"
      << "                       (multiplier -2 pi i xi_k/|xi|)\n"
      << "A_0..A_3 = {-1/6, -1/4, 1/2, -1/12} / (8 pi)\n"
      << "                       radial ansatz matching the r^2 log r fundamental\n"
      << "                       solution to third order at r = 1\n"
      << "alpha = 4/pi           bilaplacian witness b = chi_B (alpha + beta r^2)\n"
      << "beta  = -6/pi\n"
      << "c_xy = -3/pi           coefficient of the interior x1x2 term; equals\n"
      << "                       288 A_3, independent of the harmonic 4th-degree\n"
      << "                       kernel part (it annihilates r^4 and r^6)\n"
      << "psi scale = -3/(8 pi)  fixed by d1 d2 psi = c_xy x1x2 inside the ball\n"
      << "beta0 = (3/pi)(1-2r^2) chi_B, mean exactly zero\n";
  return out.str();
}

}  // namespace czsi
