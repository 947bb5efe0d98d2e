#include <czsi/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace czsi {

HomoPoly KernelTerm::poly(int dim) const {
  if (dim == 1) {
    if (degree != 1)
      throw std::invalid_argument("KernelTerm: 1-D kernels have degree 1");
    return HomoPoly({c.re, Rat(0)});  // c.re * x
  }
  return HomoPoly::from_complex(degree, c);
}

double KernelTerm::pi_weight() const {
  return std::pow(std::numbers::pi, pi_pow);
}

cplx gamma_multiplier(int dim, int degree) {
  if (degree < 1) throw std::invalid_argument("gamma_multiplier: degree >= 1");
  const double mag = std::pow(std::numbers::pi, dim / 2.0) *
                     std::tgamma(degree / 2.0) /
                     std::tgamma((dim + degree) / 2.0);
  switch (degree % 4) {
    case 0: return {mag, 0};
    case 1: return {0, -mag};
    case 2: return {-mag, 0};
    default: return {0, mag};
  }
}

GaussRat gamma_over_pi_2d(int degree) {
  if (degree < 1) throw std::invalid_argument("gamma_over_pi_2d: degree >= 1");
  // Rat(2, degree) would leave the fraction uncanonicalized for even degree
  // (the mpq pair constructor never reduces); divide instead.
  return GaussRat(Rat(2) / degree, Rat(0)).times_i_pow(-degree);
}

//------------------------------------------------------------------------------
// Symbol
//------------------------------------------------------------------------------
cplx Symbol::eval_theta(double theta) const {
  if (dim != 2) throw std::logic_error("Symbol: eval_theta is 2-D");
  cplx acc{0, 0};
  for (const auto& [m, a] : terms)
    acc += a * std::polar(1.0, m * theta);
  return acc;
}

cplx Symbol::eval(double u, double v) const {
  if (u == 0.0 && v == 0.0)
    throw std::domain_error("Symbol: undefined at the origin");
  return eval_theta(std::atan2(v, u));
}

cplx Symbol::eval1d(double xi) const {
  if (dim != 1) throw std::logic_error("Symbol: eval1d is 1-D");
  if (xi == 0.0) throw std::domain_error("Symbol: undefined at the origin");
  return xi > 0 ? odd_part : -odd_part;
}

cplx Symbol::eval_xi(const std::array<double, 2>& xi) const {
  return dim == 1 ? eval1d(xi[0]) : eval(xi[0], xi[1]);
}

double Symbol::max_abs(int samples) const {
  if (dim == 1) return std::abs(odd_part);
  double m = 0.0;
  for (int k = 0; k < samples; ++k)
    m = std::max(m, std::abs(eval_theta(2 * std::numbers::pi * k / samples)));
  return m;
}

//------------------------------------------------------------------------------
// KernelSpec
//------------------------------------------------------------------------------
KernelSpec::KernelSpec(int dim, std::vector<KernelTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim_ != 1 && dim_ != 2)
    throw std::invalid_argument("KernelSpec: dim must be 1 or 2");
  if (terms_.empty())
    throw std::invalid_argument("KernelSpec: expansion must be non-empty");
  std::sort(terms_.begin(), terms_.end(),
            [](const KernelTerm& a, const KernelTerm& b) {
              return a.degree < b.degree;
            });
  int last_degree = 0;
  for (const auto& t : terms_) {
    if (t.degree < 1)
      throw std::invalid_argument("KernelSpec: degrees must be >= 1 (no constant term)");
    if (t.degree == last_degree)
      throw std::invalid_argument("KernelSpec: duplicate degree in expansion");
    last_degree = t.degree;
    if (t.c.is_zero())
      throw std::invalid_argument("KernelSpec: zero coefficient in expansion");
    if (dim_ == 1) {
      if (t.degree != 1 || t.c.im != 0)
        throw std::invalid_argument(
            "KernelSpec: 1-D kernels are w * x/|x|^2 (single real degree-1 term)");
    }
  }
  const int first_parity = terms_.front().degree % 2;
  for (const auto& t : terms_)
    if (t.degree % 2 != first_parity)
      throw std::invalid_argument(
          "KernelSpec: expansion mixes even and odd degrees");
  parity_ = first_parity == 0 ? Parity::even : Parity::odd;
}

KernelSpec KernelSpec::from_fourier(int dim, std::vector<KernelTerm> terms) {
  return KernelSpec(dim, std::move(terms));
}

KernelSpec KernelSpec::hilbert() {
  return KernelSpec(1, {KernelTerm{1, GaussRat(Rat(1), Rat(0)), -1, true}});
}

KernelSpec KernelSpec::riesz_1d() {
  return KernelSpec(1, {KernelTerm{1, GaussRat(Rat(1), Rat(0)), 0, true}});
}

KernelSpec KernelSpec::riesz_first_order_2d(int j) {
  // x1 = 2*Re(z/2); x2 = 2*Re(-i z/2).
  if (j != 1 && j != 2)
    throw std::invalid_argument("riesz_first_order_2d: component must be 1 or 2");
  GaussRat c = j == 1 ? GaussRat(Rat(1, 2), Rat(0)) : GaussRat(Rat(0), Rat(-1, 2));
  return KernelSpec(2, {KernelTerm{1, c, 0, true}});
}

KernelSpec KernelSpec::second_order_2d() {
  // x1 x2 = 2*Re(-(i/4) z^2).
  return KernelSpec(2, {KernelTerm{2, GaussRat(Rat(0), Rat(-1, 4)), 0, true}});
}

KernelSpec KernelSpec::lambda_family(const Rat& lambda) {
  // -(1/pi) x1x2 = pi^-1 * 2*Re((i/4) z^2);
  // lambda (2/pi)(x1^3x2 - x1x2^3) = pi^-1 * 2*Re(-(lambda/4) i z^4).
  std::vector<KernelTerm> terms{
      KernelTerm{2, GaussRat(Rat(0), Rat(1, 4)), -1, true}};
  if (lambda != 0)
    terms.push_back(KernelTerm{4, GaussRat(Rat(0), -lambda / 4), -1, true});
  return KernelSpec(2, std::move(terms));
}

KernelSpec KernelSpec::fourth_order_family(const Rat& alpha, const Rat& beta) {
  // (2/pi) P4 = pi^-1 * 2*Re((beta - (alpha/4) i) z^4).
  std::vector<KernelTerm> terms{
      KernelTerm{2, GaussRat(Rat(0), Rat(1, 4)), -1, true}};
  if (alpha != 0 || beta != 0)
    terms.push_back(KernelTerm{4, GaussRat(beta, -alpha / 4), -1, true});
  return KernelSpec(2, std::move(terms));
}

bool KernelSpec::coefficients_exact() const {
  for (const auto& t : terms_)
    if (!t.exact) return false;
  return true;
}

double KernelSpec::eval(double x1, double x2) const {
  const double r2 = x1 * x1 + (dim_ == 2 ? x2 * x2 : 0.0);
  if (r2 == 0.0) throw std::domain_error("KernelSpec: singular at the origin");
  double acc = 0.0;
  if (dim_ == 1) {
    const auto& t = terms_.front();
    return t.pi_weight() * to_double(t.c.re) * x1 / r2;
  }
  for (const auto& t : terms_) {
    const double denom = std::pow(r2, (2 + t.degree) / 2.0);
    acc += t.pi_weight() * t.poly(dim_).eval(x1, x2) / denom;
  }
  if (constant_bias_ != 0.0) acc += constant_bias_ / r2;  // bias / |x|^n
  return acc;
}

double KernelSpec::omega(double theta_or_sign) const {
  if (dim_ == 1) {
    const auto& t = terms_.front();
    double w = t.pi_weight() * to_double(t.c.re);
    return (theta_or_sign >= 0 ? w : -w) + constant_bias_;
  }
  double acc = constant_bias_;
  for (const auto& t : terms_) {
    cplx e = std::polar(1.0, t.degree * theta_or_sign);
    acc += t.pi_weight() * 2.0 *
           (to_double(t.c.re) * e.real() - to_double(t.c.im) * e.imag());
  }
  return acc;
}

Symbol KernelSpec::multiplier() const {
  Symbol s;
  s.dim = dim_;
  if (dim_ == 1) {
    const auto& t = terms_.front();
    // gamma(1,1) = -i pi.
    s.odd_part = cplx(0, -std::numbers::pi) * t.pi_weight() * to_double(t.c.re);
    return s;
  }
  for (const auto& t : terms_) {
    const cplx g = gamma_multiplier(2, t.degree) * t.pi_weight();
    const cplx c(to_double(t.c.re), to_double(t.c.im));
    s.terms[t.degree] += g * c;
    s.terms[-t.degree] += g * std::conj(c);
  }
  return s;
}

bool KernelSpec::check_cancellation(int quadrature_points) const {
  double scale = 1.0;
  double integral = 0.0;
  if (dim_ == 1) {
    integral = omega(1.0) + omega(-1.0);
    scale = std::max(scale, std::abs(omega(1.0)));
  } else {
    for (int k = 0; k < quadrature_points; ++k) {
      double t = 2 * std::numbers::pi * k / quadrature_points;
      double w = omega(t);
      integral += w;
      scale = std::max(scale, std::abs(w));
    }
    integral *= 2 * std::numbers::pi / quadrature_points;
  }
  return std::abs(integral) <= 1e-10 * scale;
}

KernelSpec KernelSpec::with_injected_constant(double bias) const {
  KernelSpec out = *this;
  out.constant_bias_ = bias;
  return out;
}

}  // namespace czsi
