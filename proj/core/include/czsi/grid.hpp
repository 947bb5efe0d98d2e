//==============================================================================
// grid.hpp — periodic sampling grids on [-L/2, L/2)^n, n = 1 or 2.
//
// Conventions (fixed project-wide):
//   * nodes x_j = -L/2 + j*(L/N), row-major flattening in 2-D;
//   * continuum transform fhat(xi) = integral f(x) e^{-i x.xi} dx,
//     discretized with the cell-volume weight (L/N)^n;
//   * integer frequencies k in [-N/2, N/2)^n, physical xi = 2*pi*k/L;
//   * real input => conjugate-symmetric spectrum, enforced bit-exactly by a
//     symmetrization pass after the forward transform.
//
// Transforms are FFTW-backed (serial, FFTW_ESTIMATE) and deterministic.
//==============================================================================
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

namespace czsi {

using cplx = std::complex<double>;

struct Grid {
  int dim = 2;              // 1 or 2
  double side_length = 0;   // L > 0
  int resolution = 0;       // N, power of two, >= 8

  static Grid make(int dim, double side_length, int resolution);

  double cell() const { return side_length / resolution; }
  std::int64_t point_count() const;
  double coord(int idx) const { return -side_length / 2 + idx * cell(); }

  // Flattened node index <-> per-axis indices (row-major: idx = i1*N + i2).
  std::int64_t flatten(int i1, int i2 = 0) const;
  std::array<int, 2> unflatten(std::int64_t idx) const;
  std::array<double, 2> node(std::int64_t idx) const;

  /// Integer frequency for raw storage index k in [0, N).
  int freq(int k) const { return k < resolution / 2 ? k : k - resolution; }

  bool operator==(const Grid& o) const {
    return dim == o.dim && side_length == o.side_length &&
           resolution == o.resolution;
  }
};

struct GridField {
  Grid grid;
  std::vector<cplx> values;  // size grid.point_count()
  bool real_valued = true;

  double real_at(std::int64_t idx) const { return values[static_cast<size_t>(idx)].real(); }
};

struct SpectralField {
  Grid grid;
  std::vector<cplx> coeff;  // raw FFTW order, size grid.point_count()
  bool hermitian = false;   // true when produced from a real field

  /// Physical frequency vector of raw flat index.
  std::array<double, 2> xi(std::int64_t idx) const;
};

//------------------------------------------------------------------------------
// Field descriptors — the closed set of synthetic inputs.
//------------------------------------------------------------------------------
struct GaussianDesc {       // amplitude * exp(-|x-center|^2 / width^2)
  std::array<double, 2> center{0, 0};
  double width = 1.0;
  double amplitude = 1.0;
};
struct BallDesc {           // closed ball |x-center| <= radius (any dim)
  std::array<double, 2> center{0, 0};
  double radius = 1.0;
  double amplitude = 1.0;
};
struct IntervalDesc {       // 1-D half-open [a, b)
  double a = 0.0, b = 1.0;
  double amplitude = 1.0;
};
struct MonomialBumpDesc {   // x1^p1 * x2^p2 * exp(-|x|^2 / width^2)
  std::array<int, 2> powers{0, 0};
  double width = 1.0;
  double amplitude = 1.0;
};
struct BandLimitedDesc {    // seeded random trig polynomial, modes 0<|k|inf<=max_mode
  std::uint64_t seed = 1;
  int max_mode = 8;
  double amplitude = 1.0;
};
struct ZeroDesc {};

using FieldDescriptor = std::variant<GaussianDesc, BallDesc, IntervalDesc,
                                     MonomialBumpDesc, BandLimitedDesc, ZeroDesc>;

/// Pointwise evaluation of a descriptor on the grid nodes (band-limited
/// descriptors synthesize their spectrum and invert, which is pointwise-exact
/// for trigonometric polynomials below Nyquist).
GridField sample(const FieldDescriptor& desc, const Grid& grid);

SpectralField dft_forward(const GridField& f);
GridField dft_inverse(const SpectralField& s);

/// Unnormalized in-place DFT of a raw value array over the grid's index
/// lattice (no physical scaling, no frequency twist).  For circular
/// convolutions, where physical node positions drop out of the identity.
void raw_dft(const Grid& grid, std::vector<cplx>& data, bool forward);

//------------------------------------------------------------------------------
// Norms (cell-volume weighted; fixed sequential reduction order).
//------------------------------------------------------------------------------
double l1_norm(const GridField& f);
double l2_norm(const GridField& f);
double linf_norm(const GridField& f);
double spectral_l2(const SpectralField& s);  // (1/(2 pi)^n int |fhat|^2)^(1/2)

}  // namespace czsi
