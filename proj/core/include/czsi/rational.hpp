//==============================================================================
// rational.hpp — exact scalar arithmetic for kernel coefficients.
//
// Kernel expansions carry two kinds of exact scalars:
//   * GaussRat:  a + b*i with rational a, b (complex coefficients of the
//                circle expansion Omega(theta) = sum 2*Re(c_m e^{i m theta})).
//   * Scalar:    q * pi^k with rational q and integer k.  Real kernel weights
//                are rational multiples of powers of pi; the set is closed
//                under multiplication and division, which is all the division
//                machinery ever needs (pi powers never mix additively).
//
// Every coefficient parsed from text is exact (decimals are exact rationals).
// Coefficients constructed from raw doubles keep their exact binary value but
// are flagged inexact so downstream checks switch to tolerance mode.
//==============================================================================
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace czsi {

using Rat = mpq_class;

/** Convert to double (GMP rounds correctly). */
inline double to_double(const Rat& q) { return q.get_d(); }

/** Exact rational from a double (every finite double is rational). */
Rat rat_from_double(double x);

/** Parse "p/q", integer, or decimal ("-0.25", "1e-3") into an exact Rat. */
Rat rat_parse(const std::string& text);

/** Canonical text form, "p" or "p/q", round-trip stable. */
std::string rat_str(const Rat& q);

//------------------------------------------------------------------------------
// Gaussian rational a + b*i
//------------------------------------------------------------------------------
struct GaussRat {
  Rat re{0}, im{0};

  GaussRat() = default;
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }

  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat operator*(const Rat& s) const { return {re * s, im * s}; }
  GaussRat operator/(const GaussRat& o) const {
    Rat n = o.re * o.re + o.im * o.im;
    if (n == 0) throw std::domain_error("GaussRat: division by zero");
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }

  /** Multiply by i^p (p may be negative). */
  GaussRat times_i_pow(long p) const {
    switch (((p % 4) + 4) % 4) {
      case 0: return *this;
      case 1: return {-im, re};
      case 2: return {-re, -im};
      default: return {im, -re};
    }
  }
};

//------------------------------------------------------------------------------
// Exact real scalar q * pi^k
//------------------------------------------------------------------------------
struct Scalar {
  Rat rat{0};
  int pi_pow = 0;
  bool exact = true;

  Scalar() = default;
  Scalar(Rat q, int k = 0, bool ex = true)
      : rat(std::move(q)), pi_pow(k), exact(ex) {}

  static Scalar one() { return Scalar(Rat(1)); }

  bool is_zero() const { return rat == 0; }
  double value() const {
    return to_double(rat) * std::pow(std::numbers::pi, pi_pow);
  }
  Scalar operator*(const Scalar& o) const {
    return {rat * o.rat, pi_pow + o.pi_pow, exact && o.exact};
  }
  Scalar operator/(const Scalar& o) const {
    if (o.rat == 0) throw std::domain_error("Scalar: division by zero");
    return {rat / o.rat, pi_pow - o.pi_pow, exact && o.exact};
  }
  Scalar operator-() const { return {-rat, pi_pow, exact}; }
};

}  // namespace czsi
