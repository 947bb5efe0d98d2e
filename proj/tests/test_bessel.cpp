#include <doctest.h>

#include "czsi/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace czsi;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent oracle: J_m(r) = (1/pi) int_0^pi cos(m*tau - r*sin(tau)) d tau.
// The integrand is smooth and periodic-compatible at the endpoints, so the
// trapezoid rule converges spectrally; 4096 panels put it far below 1e-12.
double bessel_by_cosine_integral(int m, double r) {
  const int n = 4096;
  const double h = kPi / n;
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double tau = k * h;
    const double v = std::cos(m * tau - r * std::sin(tau));
    acc += (k == 0 || k == n) ? 0.5 * v : v;
  }
  return acc * h / kPi;
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}
}  // namespace

TEST_SUITE("bessel") {

TEST_CASE("values at the origin") {
  CHECK(bessel_J(0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (int m = 1; m <= 8; ++m) CHECK(bessel_J(m, 0.0) == 0.0);
  // G_m(0) = 1 / (2^m m!).
  for (int m = 0; m <= 4; ++m) {
    const double want = 1.0 / (std::pow(2.0, m) * factorial(m));
    CHECK(std::abs(bessel_G(m, 0.0) - want) < 1e-12 * want);
  }
}

TEST_CASE("agreement with the cosine-integral oracle across the series cutoff") {
  // The implementation switches representation at r = 16; straddle it.
  for (int m = 0; m <= 6; ++m) {
    for (double r : {0.1, 1.0, 5.0, 15.9, 16.1, 40.0, 80.0}) {
      const double want = bessel_by_cosine_integral(m, r);
      CHECK(std::abs(bessel_J(m, r) - want) < 1e-10);
    }
  }
}

TEST_CASE("normalized profile matches its definition away from zero") {
  for (int m = 0; m <= 5; ++m) {
    for (double r : {0.5, 2.0, 10.0, 25.0}) {
      CHECK(std::abs(bessel_G(m, r) - bessel_J(m, r) / std::pow(r, m)) <
            1e-12 * (1.0 + std::abs(bessel_G(m, r))));
    }
  }
}

TEST_CASE("derivative identity G_m' = -r G_{m+1}") {
  // Central differences at shrinking h: the defect must fall like h^2.
  for (int m = 0; m <= 3; ++m) {
    for (double r : {0.7, 3.3, 12.0}) {
      double prev_err = -1.0;
      for (double h : {1e-2, 5e-3, 2.5e-3}) {
        const double numeric = (bessel_G(m, r + h) - bessel_G(m, r - h)) / (2 * h);
        const double err = std::abs(numeric + r * bessel_G(m + 1, r));
        if (prev_err >= 0.0) CHECK(err < 0.35 * prev_err + 1e-13);
        prev_err = err;
      }
      CHECK(prev_err < 1e-5);
    }
  }
}

TEST_CASE("first positive zero of J_1") {
  // Bisection against the implementation, checked against 3.8317059702075125.
  double lo = 3.0, hi = 4.5;
  REQUIRE(bessel_J(1, lo) > 0.0);
  REQUIRE(bessel_J(1, hi) < 0.0);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bessel_J(1, mid) > 0.0 ? lo : hi) = mid;
  }
  CHECK(std::abs(0.5 * (lo + hi) - 3.8317059702075125) < 1e-6);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(bessel_J(9, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_J(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_G(9, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_J(2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_J(2, std::nan("")), std::invalid_argument);
}

}  // TEST_SUITE
