#include <doctest.h>

#include "czsi/grid.hpp"

#include <cmath>
#include <complex>

using namespace czsi;

namespace {
constexpr double kPi = 3.14159265358979323846;

double rel_l2_diff(const GridField& a, const GridField& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return std::sqrt(num / den);
}
}  // namespace

TEST_SUITE("grid") {

TEST_CASE("node layout: cell size, coordinates, unit-interval count") {
  Grid g = Grid::make(1, 16.0, 1024);
  CHECK(g.cell() == doctest::Approx(1.0 / 64).epsilon(1e-15));
  CHECK(g.coord(0) == doctest::Approx(-8.0));
  // 64 nodes fall in [0, 1): the half-open interval picks up exactly 1/h nodes.
  int count = 0;
  for (int i = 0; i < g.resolution; ++i) {
    double x = g.coord(i);
    if (x >= 0.0 && x < 1.0) ++count;
  }
  CHECK(count == 64);
}

TEST_CASE("flatten/unflatten round trip") {
  Grid g = Grid::make(2, 8.0, 16);
  for (std::int64_t i : {0, 3, 15}) {
    for (std::int64_t j : {0, 7, 15}) {
      auto [a, b] = g.unflatten(g.flatten(i, j));
      CHECK(a == i);
      CHECK(b == j);
    }
  }
}

TEST_CASE("forward transform of a pure cosine concentrates at its frequency") {
  Grid g = Grid::make(1, 32.0, 256);
  const double k0 = 2.0 * kPi * 4.0 / 32.0;  // lattice mode 4
  GridField f{g, std::vector<cplx>(g.point_count()), true};
  for (std::int64_t i = 0; i < g.point_count(); ++i)
    f.values[i] = std::cos(k0 * g.coord(static_cast<int>(i)));
  SpectralField s = dft_forward(f);
  // fhat = integral of f e^{-i x xi}: the box integral of cos(k0 x) against
  // the matching lattice mode is L/2.
  bool found = false;
  for (std::int64_t i = 0; i < g.point_count(); ++i) {
    auto xi = s.xi(i);
    if (std::fabs(xi[0] - k0) < 1e-9) {
      found = true;
      CHECK(std::abs(s.coeff[i] - cplx(16.0, 0.0)) < 1e-9);
    } else if (std::fabs(xi[0] + k0) > 1e-9) {
      CHECK(std::abs(s.coeff[i]) < 1e-9);
    }
  }
  CHECK(found);
}

TEST_CASE("gaussian transform matches the closed form") {
  // exp(-|x|^2) on the plane transforms to pi exp(-|xi|^2/4); box L = 32 makes
  // both periodization tails immeasurably small.
  Grid g = Grid::make(2, 32.0, 256);
  GridField f = sample(GaussianDesc{{0.0, 0.0}, 1.0, 1.0}, g);
  SpectralField s = dft_forward(f);
  for (std::int64_t idx : {g.flatten(128, 128), g.flatten(130, 131),
                           g.flatten(140, 120), g.flatten(100, 150)}) {
    auto xi = s.xi(idx);
    double want = kPi * std::exp(-(xi[0] * xi[0] + xi[1] * xi[1]) / 4.0);
    if (want < 1e-12) continue;
    CHECK(std::abs(s.coeff[idx] - cplx(want, 0.0)) <= 1e-10 * kPi);
  }
}

TEST_CASE("round trip and Parseval at 1e-12") {
  for (int dim : {1, 2}) {
    Grid g = (dim == 1) ? Grid::make(1, 64.0, 1024) : Grid::make(2, 16.0, 128);
    GridField f = sample(BandLimitedDesc{42, 6, 1.0}, g);
    SpectralField s = dft_forward(f);
    GridField back = dft_inverse(s);
    CHECK(rel_l2_diff(back, f) <= 1e-12);
    double a = l2_norm(f), b = spectral_l2(s);
    CHECK(std::fabs(a - b) <= 1e-12 * a);
  }
}

TEST_CASE("real input marks the spectrum hermitian and returns real") {
  Grid g = Grid::make(2, 16.0, 64);
  GridField f = sample(BandLimitedDesc{7, 4, 1.0}, g);
  SpectralField s = dft_forward(f);
  CHECK(s.hermitian);
  GridField back = dft_inverse(s);
  CHECK(back.real_valued);
  for (const auto& v : back.values) CHECK(std::fabs(v.imag()) <= 1e-12);
}

TEST_CASE("ball sampling includes its boundary") {
  Grid g = Grid::make(2, 8.0, 8);  // h = 1: node (1, 0) sits exactly on |x| = 1
  GridField f = sample(BallDesc{{0.0, 0.0}, 1.0, 2.5}, g);
  CHECK(f.real_at(g.flatten(5, 4)) == doctest::Approx(2.5));  // x = 1, y = 0
  CHECK(f.real_at(g.flatten(4, 4)) == doctest::Approx(2.5));  // origin
  CHECK(f.real_at(g.flatten(5, 5)) == doctest::Approx(0.0));  // (1,1) outside
}

TEST_CASE("band-limited sampling is deterministic per seed and mean free") {
  Grid g = Grid::make(2, 16.0, 64);
  GridField a = sample(BandLimitedDesc{5, 6, 1.0}, g);
  GridField b = sample(BandLimitedDesc{5, 6, 1.0}, g);
  GridField c = sample(BandLimitedDesc{6, 6, 1.0}, g);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  double mean = 0;
  for (const auto& v : a.values) mean += v.real();
  mean /= static_cast<double>(a.values.size());
  CHECK(std::fabs(mean) <= 1e-12 * linf_norm(a));
}

TEST_CASE("interval sampling is half open") {
  Grid g = Grid::make(1, 8.0, 8);  // h = 1, nodes -4..3
  GridField f = sample(IntervalDesc{0.0, 2.0, 1.0}, g);
  CHECK(f.real_at(4) == doctest::Approx(1.0));  // x = 0
  CHECK(f.real_at(5) == doctest::Approx(1.0));  // x = 1
  CHECK(f.real_at(6) == doctest::Approx(0.0));  // x = 2 excluded
}

}  // TEST_SUITE
