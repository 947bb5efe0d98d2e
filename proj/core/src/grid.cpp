#include <czsi/grid.hpp>

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace czsi {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFTW's planner is not thread-safe; executions on distinct arrays are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place c2c transform of `data` interpreted on `grid`, sign = FFTW_FORWARD
// or FFTW_BACKWARD.  Unnormalized (raw FFTW semantics).
void run_fft(const Grid& grid, std::vector<cplx>& data, int sign) {
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (grid.dim == 1) {
      plan = fftw_plan_dft_1d(grid.resolution, buf, buf, sign, FFTW_ESTIMATE);
    } else {
      plan = fftw_plan_dft_2d(grid.resolution, grid.resolution, buf, buf, sign,
                              FFTW_ESTIMATE);
    }
  }
  if (!plan) throw std::runtime_error("grid: FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

// Parity of the wrapped integer frequency sum: (-1)^(k1+...+kn) with raw
// indices (N even makes raw and wrapped parities agree).
inline double half_shift_sign(const Grid& g, std::int64_t flat) {
  if (g.dim == 1) return (flat & 1) ? -1.0 : 1.0;
  auto ij = g.unflatten(flat);
  return ((ij[0] + ij[1]) & 1) ? -1.0 : 1.0;
}

std::uint64_t splitmix_scramble(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic standard normal pairs from a 64-bit counter-style generator;
// avoids std::normal_distribution (implementation-defined sequences).
struct NormalGen {
  std::uint64_t state;
  explicit NormalGen(std::uint64_t seed) : state(seed) {}
  double uniform() {  // (0, 1)
    state = splitmix_scramble(state);
    return (static_cast<double>(state >> 11) + 0.5) * 0x1p-53;
  }
  cplx normal_pair() {
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2 * std::numbers::pi * u2),
            r * std::sin(2 * std::numbers::pi * u2)};
  }
};

}  // namespace

Grid Grid::make(int dim, double side_length, int resolution) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("Grid: dim must be 1 or 2");
  if (!(side_length > 0))
    throw std::invalid_argument("Grid: side length must be positive");
  if (!power_of_two(resolution) || resolution < 8)
    throw std::invalid_argument("Grid: resolution must be a power of two >= 8");
  return Grid{dim, side_length, resolution};
}

std::int64_t Grid::point_count() const {
  std::int64_t n = resolution;
  return dim == 1 ? n : n * n;
}

std::int64_t Grid::flatten(int i1, int i2) const {
  return dim == 1 ? i1 : static_cast<std::int64_t>(i1) * resolution + i2;
}

std::array<int, 2> Grid::unflatten(std::int64_t idx) const {
  if (dim == 1) return {static_cast<int>(idx), 0};
  return {static_cast<int>(idx / resolution), static_cast<int>(idx % resolution)};
}

std::array<double, 2> Grid::node(std::int64_t idx) const {
  auto ij = unflatten(idx);
  return {coord(ij[0]), dim == 2 ? coord(ij[1]) : 0.0};
}

std::array<double, 2> SpectralField::xi(std::int64_t idx) const {
  auto ij = grid.unflatten(idx);
  const double base = 2 * std::numbers::pi / grid.side_length;
  return {base * grid.freq(ij[0]), grid.dim == 2 ? base * grid.freq(ij[1]) : 0.0};
}

GridField sample(const FieldDescriptor& desc, const Grid& grid) {
  GridField out{grid, std::vector<cplx>(static_cast<size_t>(grid.point_count())), true};

  if (std::holds_alternative<BandLimitedDesc>(desc)) {
    const auto& d = std::get<BandLimitedDesc>(desc);
    if (d.max_mode < 1 || d.max_mode >= grid.resolution / 2)
      throw std::invalid_argument("sample: band limit must satisfy 0 < kmax < N/2");
    // Fill the spectrum mode-by-mode in a fixed order that does not depend on
    // N, so the same seed names the same trigonometric polynomial at every
    // resolution.  Continuum coefficient a_m maps to L^n * a_m here.
    SpectralField spec{grid,
                       std::vector<cplx>(static_cast<size_t>(grid.point_count())),
                       true};
    const double vol = std::pow(grid.side_length, grid.dim);
    auto put = [&](int m1, int m2, cplx a) {
      int k1 = m1 >= 0 ? m1 : m1 + grid.resolution;
      int k2 = m2 >= 0 ? m2 : m2 + grid.resolution;
      spec.coeff[static_cast<size_t>(grid.flatten(k1, k2))] = vol * a;
    };
    if (grid.dim == 1) {
      for (int m = 1; m <= d.max_mode; ++m) {
        NormalGen gen(splitmix_scramble(d.seed) ^ static_cast<std::uint64_t>(m));
        cplx a = d.amplitude * gen.normal_pair() / std::sqrt(2.0 * d.max_mode);
        put(m, 0, a);
        put(-m, 0, std::conj(a));
      }
    } else {
      for (int m1 = -d.max_mode; m1 <= d.max_mode; ++m1)
        for (int m2 = -d.max_mode; m2 <= d.max_mode; ++m2) {
          const bool positive_half = m1 > 0 || (m1 == 0 && m2 > 0);
          if (!positive_half) continue;
          std::uint64_t tag =
              static_cast<std::uint64_t>(m1 + 65536) * 131072u +
              static_cast<std::uint64_t>(m2 + 65536);
          NormalGen gen(splitmix_scramble(d.seed) ^ splitmix_scramble(tag));
          cplx a = d.amplitude * gen.normal_pair() / (2.0 * d.max_mode);
          put(m1, m2, a);
          put(-m1, -m2, std::conj(a));
        }
    }
    return dft_inverse(spec);
  }

  const std::int64_t n = grid.point_count();
  for (std::int64_t idx = 0; idx < n; ++idx) {
    auto x = grid.node(idx);
    double v = 0.0;
    if (std::holds_alternative<GaussianDesc>(desc)) {
      const auto& d = std::get<GaussianDesc>(desc);
      double dx = x[0] - d.center[0], dy = grid.dim == 2 ? x[1] - d.center[1] : 0;
      v = d.amplitude * std::exp(-(dx * dx + dy * dy) / (d.width * d.width));
    } else if (std::holds_alternative<BallDesc>(desc)) {
      const auto& d = std::get<BallDesc>(desc);
      double dx = x[0] - d.center[0], dy = grid.dim == 2 ? x[1] - d.center[1] : 0;
      v = (dx * dx + dy * dy <= d.radius * d.radius) ? d.amplitude : 0.0;
    } else if (std::holds_alternative<IntervalDesc>(desc)) {
      const auto& d = std::get<IntervalDesc>(desc);
      if (grid.dim != 1)
        throw std::invalid_argument("sample: interval descriptor is 1-D");
      v = (x[0] >= d.a && x[0] < d.b) ? d.amplitude : 0.0;
    } else if (std::holds_alternative<MonomialBumpDesc>(desc)) {
      const auto& d = std::get<MonomialBumpDesc>(desc);
      double mono = 1.0;
      for (int k = 0; k < d.powers[0]; ++k) mono *= x[0];
      for (int k = 0; k < d.powers[1]; ++k) mono *= x[1];
      double r2 = x[0] * x[0] + (grid.dim == 2 ? x[1] * x[1] : 0.0);
      v = d.amplitude * mono * std::exp(-r2 / (d.width * d.width));
    } else {  // ZeroDesc
      v = 0.0;
    }
    out.values[static_cast<size_t>(idx)] = v;
  }
  return out;
}

void raw_dft(const Grid& grid, std::vector<cplx>& data, bool forward) {
    if (data.size() != static_cast<size_t>(grid.point_count()))
        throw std::invalid_argument("raw_dft: value count does not match grid");
    run_fft(grid, data, forward ? FFTW_FORWARD : FFTW_BACKWARD);
}

SpectralField dft_forward(const GridField& f) {
  if (f.values.size() != static_cast<size_t>(f.grid.point_count()))
    throw std::invalid_argument("dft_forward: value count does not match grid");
  SpectralField out{f.grid, f.values, f.real_valued};
  run_fft(f.grid, out.coeff, FFTW_FORWARD);
  const double w = std::pow(f.grid.cell(), f.grid.dim);
  const std::int64_t n = f.grid.point_count();
  for (std::int64_t k = 0; k < n; ++k)
    out.coeff[static_cast<size_t>(k)] *= w * half_shift_sign(f.grid, k);

  if (f.real_valued) {
    // Bit-exact conjugate symmetry: average each (k, -k) pair once.
    const int N = f.grid.resolution;
    auto mirror = [N](int k) { return k == 0 ? 0 : N - k; };
    const int rows = f.grid.dim == 2 ? N : 1;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < N; ++j) {
        int fi = f.grid.dim == 2 ? i : j;
        int fj = f.grid.dim == 2 ? j : 0;
        int mi = mirror(fi), mj = mirror(fj);
        std::int64_t a = f.grid.dim == 2 ? f.grid.flatten(fi, fj) : fi;
        std::int64_t b = f.grid.dim == 2 ? f.grid.flatten(mi, mj) : mi;
        if (a > b) continue;
        if (a == b) {
          out.coeff[static_cast<size_t>(a)] =
              cplx(out.coeff[static_cast<size_t>(a)].real(), 0.0);
        } else {
          cplx avg = (out.coeff[static_cast<size_t>(a)] +
                      std::conj(out.coeff[static_cast<size_t>(b)])) * 0.5;
          out.coeff[static_cast<size_t>(a)] = avg;
          out.coeff[static_cast<size_t>(b)] = std::conj(avg);
        }
      }
    out.hermitian = true;
  }
  return out;
}

GridField dft_inverse(const SpectralField& s) {
  if (s.coeff.size() != static_cast<size_t>(s.grid.point_count()))
    throw std::invalid_argument("dft_inverse: coefficient count does not match grid");
  GridField out{s.grid, s.coeff, false};
  const std::int64_t n = s.grid.point_count();
  for (std::int64_t k = 0; k < n; ++k)
    out.values[static_cast<size_t>(k)] *= half_shift_sign(s.grid, k);
  run_fft(s.grid, out.values, FFTW_BACKWARD);
  const double w = std::pow(1.0 / s.grid.side_length, s.grid.dim);
  for (auto& v : out.values) v *= w;
  if (s.hermitian) {
    for (auto& v : out.values) v = cplx(v.real(), 0.0);
    out.real_valued = true;
  }
  return out;
}

double l1_norm(const GridField& f) {
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::abs(v);
  return acc * std::pow(f.grid.cell(), f.grid.dim);
}

double l2_norm(const GridField& f) {
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::norm(v);
  return std::sqrt(acc * std::pow(f.grid.cell(), f.grid.dim));
}

double linf_norm(const GridField& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double spectral_l2(const SpectralField& s) {
  double acc = 0.0;
  for (const auto& v : s.coeff) acc += std::norm(v);
  return std::sqrt(acc * std::pow(1.0 / s.grid.side_length, s.grid.dim));
}

}  // namespace czsi
