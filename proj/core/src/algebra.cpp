#include <czsi/algebra.hpp>

#include <czsi/operators.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace czsi {

namespace {

constexpr double kInvertibilityFloor = 1e-9;

std::string gauss_str(const GaussRat& c) {
  std::string s = rat_str(c.re);
  if (c.im != 0) {
    s += (c.im > 0 ? " + " : " - ");
    Rat a = c.im > 0 ? c.im : Rat(-c.im);
    s += rat_str(a) + "*i";
  }
  return s;
}

std::string pi_suffix(int p) {
  if (p == 0) return "";
  return " * pi^" + std::to_string(p);
}

}  // namespace

//------------------------------------------------------------------------------
// CZElement
//------------------------------------------------------------------------------
CZElement CZElement::from_kernel(double lam, KernelSpec k) {
  CZElement e;
  e.lambda = lam;
  e.spec = std::move(k);
  return e;
}

int CZElement::dim() const {
  if (spec) return spec->dim();
  if (raw_symbol) return raw_symbol->dim;
  return 2;  // pure multiples of I act on either dimension; default planar
}

Symbol CZElement::kernel_symbol() const {
  if (spec) return spec->multiplier();
  if (raw_symbol) return *raw_symbol;
  Symbol s;
  s.dim = dim();
  return s;
}

cplx CZElement::total_at_theta(double theta) const {
  return cplx(lambda, 0) + kernel_symbol().eval_theta(theta);
}

cplx CZElement::total_at_xi(const std::array<double, 2>& xi) const {
  if (!spec && !raw_symbol) return cplx(lambda, 0);
  return cplx(lambda, 0) + kernel_symbol().eval_xi(xi);
}

//------------------------------------------------------------------------------
// Division, polynomial route
//------------------------------------------------------------------------------
std::optional<HomoPoly> divides(const HomoPoly& P, const HomoPoly& target) {
  if (P.is_zero()) throw std::invalid_argument("divides: zero divisor");
  if (P.degree() > target.degree())
    throw std::invalid_argument("divides: divisor degree exceeds target degree");
  return P.divide_into(target);
}

DivisionReport division_condition(const KernelSpec& spec) {
  DivisionReport report;
  const auto& terms = spec.terms();
  const KernelTerm& base_term = terms.front();  // sorted by degree
  report.base_degree = base_term.degree;
  report.base_pi_pow = base_term.pi_pow;
  HomoPoly base = base_term.poly(spec.dim());
  report.base = base;

  report.holds = true;
  for (const auto& t : terms) {
    auto q = base.divide_into(t.poly(spec.dim()));
    if (!q) {
      report.holds = false;
      report.failure_degree = t.degree;
      break;
    }
    report.quotients.emplace(t.degree,
                             ScaledPoly{*q, t.pi_pow - base_term.pi_pow});
  }
  return report;
}

//------------------------------------------------------------------------------
// Division, Fourier route (2-D even kernels)
//
// Rotating by alpha multiplies c_d by e^{-i d alpha}.  The base coefficient w
// at degree D can be rotated onto the imaginary axis in exactly two ways,
// e^{i D alpha} = +/- i conj(w)/|w|, and the term at degree D*p divides iff its
// rotated coefficient is purely imaginary as well; both sign choices collapse
// to the single sign-free test Re(c_{D*p} (i conj(w))^p) = 0 because the two
// candidate rotations differ by a factor (-1)^p on the p-th power.
//------------------------------------------------------------------------------
DivisionReport division_condition_fourier_2d(const std::vector<KernelTerm>& terms) {
  if (terms.empty())
    throw std::invalid_argument("division_condition_fourier_2d: no coefficients");
  for (const auto& t : terms)
    if (t.degree % 2 != 0)
      throw std::invalid_argument(
          "division_condition_fourier_2d: even-parity coefficients only "
          "(use the polynomial route for odd kernels)");

  const KernelTerm* base = &terms.front();
  for (const auto& t : terms)
    if (t.degree < base->degree) base = &t;

  DivisionReport report;
  report.base_degree = base->degree;
  report.base_pi_pow = base->pi_pow;
  report.base = base->poly(2);
  report.holds = true;

  const int D = base->degree;
  const GaussRat iw_conj = base->c.conj().times_i_pow(1);  // i * conj(w)
  bool all_exact = true;
  for (const auto& t : terms) all_exact = all_exact && t.exact;

  for (const auto& t : terms) {
    if (t.degree % D != 0) {
      report.holds = false;
      report.failure_degree = t.degree;
      break;
    }
    const int p = t.degree / D;
    GaussRat rot = iw_conj;
    for (int k = 1; k < p; ++k) rot = rot * iw_conj;
    const GaussRat z = t.c * rot;
    bool imaginary;
    if (all_exact) {
      imaginary = (z.re == 0);
    } else {
      const double re = to_double(z.re);
      const double mag = std::hypot(to_double(z.re), to_double(z.im));
      imaginary = std::abs(re) <= 1e-12 * std::max(mag, 1e-300);
    }
    if (!imaginary) {
      report.holds = false;
      report.failure_degree = t.degree;
      break;
    }
  }
  return report;
}

//------------------------------------------------------------------------------
// Invertibility
//------------------------------------------------------------------------------
InvertibilityReport invertibility(const CZElement& elem) {
  InvertibilityReport report;
  if (!elem.spec && !elem.raw_symbol) {
    report.min_abs_symbol = std::abs(elem.lambda);
    report.argmin_angle = 0.0;
    report.invertible = report.min_abs_symbol > kInvertibilityFloor;
    return report;
  }

  const Symbol sym = elem.kernel_symbol();
  const cplx lam(elem.lambda, 0);

  if (elem.dim() == 1) {
    const double plus = std::abs(lam + sym.eval1d(1.0));
    const double minus = std::abs(lam + sym.eval1d(-1.0));
    report.min_abs_symbol = std::min(plus, minus);
    report.argmin_angle = plus <= minus ? 0.0 : std::numbers::pi;
    report.invertible = report.min_abs_symbol > kInvertibilityFloor;
    return report;
  }

  const auto value = [&](double theta) {
    return std::abs(lam + sym.eval_theta(theta));
  };

  constexpr int kSamples = 1 << 16;
  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k < kSamples; ++k) {
    const double v = value(2 * std::numbers::pi * k / kSamples);
    if (v < best) {
      best = v;
      best_k = k;
    }
  }

  // Golden-section refinement inside the bracketing window.
  const double step = 2 * std::numbers::pi / kSamples;
  double a = (best_k - 1) * step;
  double b = (best_k + 1) * step;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = value(c), fd = value(d);
  for (int it = 0; it < 90; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = value(d);
    }
  }
  double theta_min = 0.5 * (a + b);
  double f_min = value(theta_min);
  if (best < f_min) {
    f_min = best;
    theta_min = best_k * step;
  }
  theta_min = std::fmod(theta_min + 2 * std::numbers::pi, 2 * std::numbers::pi);

  report.min_abs_symbol = f_min;
  report.argmin_angle = theta_min;
  report.invertible = f_min > kInvertibilityFloor;
  return report;
}

//------------------------------------------------------------------------------
// Factorization
//------------------------------------------------------------------------------
Factorization factorize(const KernelSpec& spec) {
  Factorization fact;
  DivisionReport division = division_condition(spec);
  fact.base_degree = division.base_degree;
  fact.base_pi_pow = division.base_pi_pow;
  fact.base = division.base;
  fact.base_coeff = spec.terms().front().c;
  if (!division.holds) {
    fact.diagnostic = "division condition fails at degree " +
                      std::to_string(*division.failure_degree);
    return fact;
  }

  if (spec.dim() == 1) {
    // Single-term kernels split trivially as themselves composed with I.
    fact.ok = true;
    fact.exact = spec.coefficients_exact();
    fact.u = CZElement::identity();
    fact.diagnostic = "single-term kernel; co-factor is the identity";
    return fact;
  }

  // Assemble the circle expansion of m_U = m_T / m_RP exactly: contribution of
  // the term at degree d is (gamma_d/gamma_D) * pi^(p_d - p_D) * Q_d
  // restricted to the circle, where Q_d is the polynomial quotient.
  const GaussRat gam_base = gamma_over_pi_2d(fact.base_degree);
  // mode -> pi power -> coefficient
  std::map<int, std::map<int, GaussRat>> acc;
  for (const auto& t : spec.terms()) {
    const ScaledPoly& q = division.quotients.at(t.degree);
    const GaussRat ratio = gamma_over_pi_2d(t.degree) / gam_base;
    for (const auto& [mode, coeff] : q.poly.circle_coeffs()) {
      GaussRat add = ratio * coeff;
      if (add.is_zero()) continue;
      acc[mode][q.pi_pow] = acc[mode][q.pi_pow] + add;
    }
  }
  for (auto it = acc.begin(); it != acc.end();) {
    auto& powers = it->second;
    for (auto jt = powers.begin(); jt != powers.end();)
      jt = jt->second.is_zero() ? powers.erase(jt) : std::next(jt);
    it = powers.empty() ? acc.erase(it) : std::next(it);
  }

  const bool inputs_exact = spec.coefficients_exact();
  bool single_pi = true;
  for (const auto& [mode, powers] : acc)
    if (powers.size() > 1) single_pi = false;

  bool conjugate_paired = true;
  for (const auto& [mode, powers] : acc) {
    if (mode <= 0) continue;
    auto neg = acc.find(-mode);
    if (neg == acc.end() || neg->second.size() != powers.size()) {
      conjugate_paired = false;
      break;
    }
    for (const auto& [p, coeff] : powers) {
      auto match = neg->second.find(p);
      if (match == neg->second.end() || !(match->second == coeff.conj())) {
        conjugate_paired = false;
        break;
      }
    }
  }

  const auto mode_value = [&](int mode) {
    cplx v{0, 0};
    auto it = acc.find(mode);
    if (it == acc.end()) return v;
    for (const auto& [p, coeff] : it->second)
      v += cplx(to_double(coeff.re), to_double(coeff.im)) *
           std::pow(std::numbers::pi, p);
    return v;
  };

  const cplx lam0 = mode_value(0);
  int max_mode = 0;
  for (const auto& [mode, powers] : acc)
    if (mode > max_mode) max_mode = mode;

  const bool recover_kernel =
      single_pi && conjugate_paired && max_mode <= 12 && max_mode >= 1;
  const bool pure_identity_cofactor = acc.size() == 1 && acc.count(0) == 1;

  if (pure_identity_cofactor) {
    fact.u = CZElement::pure(lam0.real());
    fact.exact = inputs_exact && single_pi;
    fact.diagnostic = "co-factor is a pure multiple of the identity";
  } else if (recover_kernel) {
    std::vector<KernelTerm> u_terms;
    for (const auto& [mode, powers] : acc) {
      if (mode <= 0) continue;
      const auto& [p, coeff] = *powers.begin();
      KernelTerm term;
      term.degree = mode;
      term.c = coeff / gamma_over_pi_2d(mode);
      term.pi_pow = p - 1;
      term.exact = inputs_exact;
      u_terms.push_back(term);
    }
    fact.u = CZElement::from_kernel(lam0.real(), KernelSpec(2, std::move(u_terms)));
    fact.exact = inputs_exact;
  } else {
    // Angular degree beyond the kernel-recovery cap (or mixed pi powers):
    // carry the co-factor as a bare circle symbol.
    Symbol sym;
    sym.dim = 2;
    for (const auto& [mode, powers] : acc) {
      if (mode == 0) continue;
      sym.terms[mode] = mode_value(mode);
    }
    CZElement u;
    u.lambda = lam0.real();
    u.raw_symbol = sym;
    fact.u = std::move(u);
    fact.symbol_only = true;
    fact.diagnostic = single_pi
                          ? "co-factor degree exceeds the kernel-recovery cap"
                          : "mixed pi powers in the co-factor expansion";
  }

  // Verify m_RP * m_U == m_T at 64 angles.
  KernelSpec rp(2, {spec.terms().front()});
  const Symbol m_rp = rp.multiplier();
  const Symbol m_t = spec.multiplier();
  double resid = 0.0;
  double scale = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double theta = 2 * std::numbers::pi * k / 64;
    const cplx lhs = m_rp.eval_theta(theta) * fact.u.total_at_theta(theta);
    const cplx rhs = m_t.eval_theta(theta);
    resid = std::max(resid, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(rhs));
  }
  fact.max_product_residual = resid;
  fact.ok = resid <= 1e-10 * std::max(scale, 1.0);
  if (!fact.ok)
    fact.diagnostic = "assembled co-factor fails the product check (residual " +
                      std::to_string(resid) + ")";
  return fact;
}

//------------------------------------------------------------------------------
// Spectral inverse
//------------------------------------------------------------------------------
std::function<GridField(const GridField&)> invert_element(const CZElement& elem) {
  InvertibilityReport report = invertibility(elem);
  if (!report.invertible) {
    std::ostringstream msg;
    msg << "invert_element: symbol minimum " << report.min_abs_symbol
        << " at angle " << report.argmin_angle << " is below the floor "
        << kInvertibilityFloor;
    throw std::domain_error(msg.str());
  }
  // Copy the element into the closure; the multiplier is conjugate-symmetric
  // (real lambda, real kernel), so real input stays real.
  CZElement copy = elem;
  return [copy](const GridField& f) {
    return apply_symbol_map(
        f,
        [&copy](const std::array<double, 2>& xi) {
          return cplx(1, 0) / copy.total_at_xi(xi);
        },
        f.real_valued);
  };
}

//------------------------------------------------------------------------------
// Text forms
//------------------------------------------------------------------------------
std::string division_report_text(const DivisionReport& report) {
  std::ostringstream out;
  out << "division condition: " << (report.holds ? "holds" : "fails") << "\n";
  out << "base degree: " << report.base_degree << "\n";
  if (report.base)
    out << "base: " << report.base->str() << pi_suffix(report.base_pi_pow)
        << "\n";
  for (const auto& [d, q] : report.quotients)
    out << "quotient[" << d << "]: " << q.poly.str() << pi_suffix(q.pi_pow)
        << "\n";
  if (report.failure_degree)
    out << "first failing degree: " << *report.failure_degree << "\n";
  return out.str();
}

std::string invertibility_report_text(const InvertibilityReport& report) {
  std::ostringstream out;
  out << "invertible: " << (report.invertible ? "yes" : "no") << "\n";
  out << "min |symbol|: " << report.min_abs_symbol << "\n";
  out << "attained near angle: " << report.argmin_angle << "\n";
  return out.str();
}

std::string factorization_text(const Factorization& fact) {
  std::ostringstream out;
  out << "factorization: " << (fact.ok ? "ok" : "failed") << "\n";
  out << "base degree: " << fact.base_degree << "\n";
  out << "base coefficient: " << gauss_str(fact.base_coeff)
      << pi_suffix(fact.base_pi_pow) << "\n";
  if (fact.base) out << "base: " << fact.base->str() << "\n";
  out << "co-factor lambda: " << fact.u.lambda << "\n";
  if (fact.u.spec) {
    for (const auto& t : fact.u.spec->terms())
      out << "co-factor term[" << t.degree << "]: " << gauss_str(t.c)
          << pi_suffix(t.pi_pow) << "\n";
  } else if (fact.u.raw_symbol) {
    out << "co-factor: symbol only ("
        << fact.u.raw_symbol->terms.size() << " modes)\n";
  } else {
    out << "co-factor: identity\n";
  }
  out << "exact: " << (fact.exact ? "yes" : "no") << "\n";
  out << "product residual (64 angles): " << fact.max_product_residual << "\n";
  if (!fact.diagnostic.empty()) out << "note: " << fact.diagnostic << "\n";
  return out.str();
}

}  // namespace czsi
