#include <czsi/bessel.hpp>

#include <cmath>
#include <stdexcept>

namespace czsi {

namespace {

// Ascending series for G_m(r) = sum_k (-1)^k r^{2k} / (2^{2k+m} k! (m+k)!),
// evaluated in long double.  Cancellation grows with r (largest term over
// final value); below the branch point the loss stays under ~1e5, which the
// 64-bit long double mantissa absorbs with room to spare for the 1e-10
// contract.  Above it std::cyl_bessel_j takes over.
constexpr double kSeriesLimit = 16.0;

long double series_G(int m, long double r) {
  long double t = 1.0L;
  for (int k = 1; k <= m; ++k) t /= 2.0L * k;  // 1 / (2^m m!)
  const long double q = -r * r / 4.0L;
  long double acc = t;
  for (int k = 0; k < 400; ++k) {
    t *= q / ((k + 1.0L) * (m + k + 1.0L));
    acc += t;
    if (std::abs(t) < 1e-25L * (std::abs(acc) + 1e-30L)) break;
  }
  return acc;
}

void check_domain(int m, double r) {
  if (m < 0 || m > 8)
    throw std::invalid_argument("bessel: order must be between 0 and 8");
  if (!(r >= 0.0) || !std::isfinite(r))
    throw std::invalid_argument("bessel: argument must be finite and >= 0");
}

}  // namespace

double bessel_J(int m, double r) {
  check_domain(m, r);
  if (r <= kSeriesLimit)
    return static_cast<double>(series_G(m, r) * std::pow((long double)r, m));
  return std::cyl_bessel_j(static_cast<double>(m), r);
}

double bessel_G(int m, double r) {
  check_domain(m, r);
  if (r <= kSeriesLimit) return static_cast<double>(series_G(m, r));
  return std::cyl_bessel_j(static_cast<double>(m), r) / std::pow(r, m);
}

}  // namespace czsi
