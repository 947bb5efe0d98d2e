//==============================================================================
// polynomial.hpp — homogeneous bivariate polynomials over the rationals.
//
// A degree-d polynomial is stored densely as c[i] * x^(d-i) * y^i, i = 0..d.
// All arithmetic is exact.  These carry the angular parts of kernels
// (spherical harmonics in the plane) and the quotients produced by the
// division condition; quotients need not be harmonic.
//==============================================================================
#pragma once

#include <czsi/rational.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace czsi {

class HomoPoly {
 public:
  HomoPoly() = default;
  /** coeffs[i] multiplies x^(d-i) y^i where d = coeffs.size()-1. */
  explicit HomoPoly(std::vector<Rat> coeffs);

  static HomoPoly zero(int degree);
  /** 2*Re(c * z^d), z = x + i y; harmonic for every c. */
  static HomoPoly from_complex(int degree, const GaussRat& c);
  static HomoPoly monomial_x();   // x
  static HomoPoly monomial_y();   // y
  static HomoPoly monomial_xy();  // x*y

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& coeff(int i) const { return c_.at(static_cast<size_t>(i)); }

  bool is_zero() const;
  bool operator==(const HomoPoly& o) const { return c_ == o.c_; }

  double eval(double x, double y) const;

  /** Laplacian (degree drops by 2; empty for degree < 2). */
  HomoPoly laplacian() const;
  bool is_harmonic() const;

  /** d/dx resp. d/dy (degree drops by 1). */
  HomoPoly dx() const;
  HomoPoly dy() const;

  HomoPoly operator*(const HomoPoly& o) const;
  HomoPoly operator*(const Rat& s) const;
  HomoPoly operator+(const HomoPoly& o) const;
  HomoPoly operator-(const HomoPoly& o) const;

  /**
   * Exact division: find Q with (*this) * Q == target, if it exists.
   * Both polynomials are homogeneous; Q has degree target.d - this.d.
   */
  std::optional<HomoPoly> divide_into(const HomoPoly& target) const;

  /**
   * Restriction to the unit circle as a trigonometric polynomial:
   * P(cos t, sin t) = sum_m a_m e^{i m t}, keys m in [-d, d], same parity
   * as d.  Exact (substitute x=(z+zbar)/2, y=-i(z-zbar)/2, then zbar=1/z).
   */
  std::map<int, GaussRat> circle_coeffs() const;

  /** Apply this polynomial as a constant-coefficient differential operator
   *  P(d/dx, d/dy) to `target` (exact).  Result degree target.d - this.d;
   *  returns zero polynomial of that degree (or degree 0) when it vanishes. */
  HomoPoly diff_apply(const HomoPoly& target) const;

  std::string str() const;  // human-readable, e.g. "-1*x^1*y^1"

 private:
  std::vector<Rat> c_;  // size degree+1
};

}  // namespace czsi
