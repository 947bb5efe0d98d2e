#include <czsi/polynomial.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace czsi {

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite");
  Rat q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

Rat rat_parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("rat_parse: empty");

  if (s.find('/') != std::string::npos) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
      throw std::invalid_argument("rat_parse: bad rational '" + text + "'");
    if (q.get_den() == 0)
      throw std::invalid_argument("rat_parse: zero denominator '" + text + "'");
    q.canonicalize();
    return q;
  }

  // Decimal / scientific: mantissa digits become an exact rational scaled by
  // the appropriate power of ten.
  size_t epos = s.find_first_of("eE");
  long expo = 0;
  std::string mant = s;
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    try {
      expo = std::stol(s.substr(epos + 1));
    } catch (...) {
      throw std::invalid_argument("rat_parse: bad exponent '" + text + "'");
    }
  }
  bool neg = false;
  size_t i = 0;
  if (i < mant.size() && (mant[i] == '+' || mant[i] == '-')) {
    neg = mant[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < mant.size(); ++i) {
    char ch = mant[i];
    if (ch == '.') {
      if (seen_dot) throw std::invalid_argument("rat_parse: '" + text + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("rat_parse: '" + text + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("rat_parse: '" + text + "'");
  // Base must be explicit: the GMP string constructor defaults to base 0,
  // which reads a leading zero ("025" from "0.25") as octal.
  mpz_class num(digits.empty() ? "0" : digits, 10);
  if (neg) num = -num;
  Rat q(num);
  long net = expo - frac_digits;
  mpz_class ten10;
  mpz_ui_pow_ui(ten10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  if (net > 0)
    q *= Rat(ten10);
  else if (net < 0)
    q /= Rat(ten10);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

namespace {

// Binomial coefficients as rationals, row n of Pascal's triangle.
std::vector<Rat> binomials(int n) {
  std::vector<Rat> row(static_cast<size_t>(n) + 1);
  row[0] = 1;
  for (int k = 1; k <= n; ++k)
    row[static_cast<size_t>(k)] =
        row[static_cast<size_t>(k - 1)] * Rat(n - k + 1) / Rat(k);
  return row;
}

}  // namespace

HomoPoly::HomoPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw std::invalid_argument("HomoPoly: empty coefficients");
}

HomoPoly HomoPoly::zero(int degree) {
  if (degree < 0) throw std::invalid_argument("HomoPoly: negative degree");
  return HomoPoly(std::vector<Rat>(static_cast<size_t>(degree) + 1, Rat(0)));
}

HomoPoly HomoPoly::from_complex(int degree, const GaussRat& c) {
  if (degree < 1) throw std::invalid_argument("HomoPoly: degree must be >= 1");
  // z^d = sum_j C(d,j) x^(d-j) (iy)^j; take 2*Re(c * z^d).
  auto bin = binomials(degree);
  std::vector<Rat> out(static_cast<size_t>(degree) + 1, Rat(0));
  for (int j = 0; j <= degree; ++j) {
    GaussRat ipow = GaussRat(Rat(1), Rat(0)).times_i_pow(j);
    GaussRat term = c * ipow * bin[static_cast<size_t>(j)];
    out[static_cast<size_t>(j)] = term.re * 2;
  }
  return HomoPoly(std::move(out));
}

HomoPoly HomoPoly::monomial_x() { return HomoPoly({Rat(1), Rat(0)}); }
HomoPoly HomoPoly::monomial_y() { return HomoPoly({Rat(0), Rat(1)}); }
HomoPoly HomoPoly::monomial_xy() { return HomoPoly({Rat(0), Rat(1), Rat(0)}); }

bool HomoPoly::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

double HomoPoly::eval(double x, double y) const {
  // Horner in x with y-powers tracked explicitly; degrees stay small.
  const int d = degree();
  double acc = 0.0;
  for (int i = 0; i <= d; ++i) {
    double mono = 1.0;
    for (int k = 0; k < d - i; ++k) mono *= x;
    for (int k = 0; k < i; ++k) mono *= y;
    acc += to_double(c_[static_cast<size_t>(i)]) * mono;
  }
  return acc;
}

HomoPoly HomoPoly::laplacian() const {
  const int d = degree();
  if (d < 2) return HomoPoly::zero(0);
  HomoPoly out = HomoPoly::zero(d - 2);
  std::vector<Rat> v(out.c_);
  for (int i = 0; i <= d; ++i) {
    const Rat& a = c_[static_cast<size_t>(i)];
    if (a == 0) continue;
    int px = d - i, py = i;
    if (px >= 2) v[static_cast<size_t>(py)] += a * px * (px - 1);
    if (py >= 2) v[static_cast<size_t>(py - 2)] += a * py * (py - 1);
  }
  return HomoPoly(std::move(v));
}

bool HomoPoly::is_harmonic() const { return laplacian().is_zero(); }

HomoPoly HomoPoly::dx() const {
  const int d = degree();
  if (d < 1) return HomoPoly::zero(0);
  std::vector<Rat> v(static_cast<size_t>(d), Rat(0));
  for (int i = 0; i < d; ++i)
    v[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] * (d - i);
  return HomoPoly(std::move(v));
}

HomoPoly HomoPoly::dy() const {
  const int d = degree();
  if (d < 1) return HomoPoly::zero(0);
  std::vector<Rat> v(static_cast<size_t>(d), Rat(0));
  for (int i = 1; i <= d; ++i)
    v[static_cast<size_t>(i - 1)] = c_[static_cast<size_t>(i)] * i;
  return HomoPoly(std::move(v));
}

HomoPoly HomoPoly::operator*(const HomoPoly& o) const {
  const int d = degree() + o.degree();
  std::vector<Rat> v(static_cast<size_t>(d) + 1, Rat(0));
  for (int i = 0; i <= degree(); ++i) {
    if (c_[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j <= o.degree(); ++j)
      v[static_cast<size_t>(i + j)] +=
          c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
  }
  return HomoPoly(std::move(v));
}

HomoPoly HomoPoly::operator*(const Rat& s) const {
  std::vector<Rat> v(c_);
  for (auto& a : v) a *= s;
  return HomoPoly(std::move(v));
}

HomoPoly HomoPoly::operator+(const HomoPoly& o) const {
  if (degree() != o.degree())
    throw std::invalid_argument("HomoPoly: degree mismatch in +");
  std::vector<Rat> v(c_);
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.c_[i];
  return HomoPoly(std::move(v));
}

HomoPoly HomoPoly::operator-(const HomoPoly& o) const {
  if (degree() != o.degree())
    throw std::invalid_argument("HomoPoly: degree mismatch in -");
  std::vector<Rat> v(c_);
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.c_[i];
  return HomoPoly(std::move(v));
}

std::optional<HomoPoly> HomoPoly::divide_into(const HomoPoly& target) const {
  // Solve (*this) * Q = target for homogeneous Q, treating x as the main
  // variable: coefficient of index j in a product is sum_{u+v=j} a_u q_v.
  // The system is triangular once the first nonzero index k of *this is
  // known; indices j < k force target coefficients to vanish, indices
  // j > k + deg(Q) are consistency checks.
  if (is_zero()) throw std::domain_error("HomoPoly: division by zero polynomial");
  const int dp = degree(), dq = target.degree();
  if (dq < dp) return std::nullopt;
  const int m = dq - dp;

  int k = 0;
  while (c_[static_cast<size_t>(k)] == 0) ++k;

  for (int j = 0; j < k; ++j)
    if (target.c_[static_cast<size_t>(j)] != 0) return std::nullopt;

  std::vector<Rat> q(static_cast<size_t>(m) + 1, Rat(0));
  for (int j = k; j <= dq; ++j) {
    Rat acc(0);
    for (int u = k + 1; u <= dp; ++u) {
      int v = j - u;
      if (v < 0 || v > m) continue;
      acc += c_[static_cast<size_t>(u)] * q[static_cast<size_t>(v)];
    }
    Rat need = target.c_[static_cast<size_t>(j)] - acc;
    int v = j - k;
    if (v <= m) {
      q[static_cast<size_t>(v)] = need / c_[static_cast<size_t>(k)];
    } else if (need != 0) {
      return std::nullopt;  // inconsistent tail: not divisible
    }
  }
  HomoPoly quotient{std::move(q)};
  // Exact re-multiplication is structural here, but guard anyway.
  if (!((*this * quotient) - target).is_zero())
    throw std::logic_error("HomoPoly: division postcondition violated");
  return quotient;
}

std::map<int, GaussRat> HomoPoly::circle_coeffs() const {
  // Substitute x = (z + zbar)/2, y = -i (z - zbar)/2 and collect z^a zbar^b;
  // on |z| = 1, z^a zbar^b = e^{i (a-b) t}.
  const int d = degree();
  // zcoef[a] multiplies z^a zbar^(d-a).
  std::vector<GaussRat> zcoef(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    const Rat& a = c_[static_cast<size_t>(i)];
    if (a == 0) continue;
    const int px = d - i, py = i;
    // x^px = 2^-px sum_j C(px,j) z^j zbar^(px-j)
    // y^py = (-i/2)^py sum_l C(py,l) z^l (-zbar)^(py-l)
    // so each term carries 2^-(px+py) = 2^-d and a phase (-i)^py.
    auto bx = binomials(px);
    auto by = binomials(py);
    Rat inv2pow = Rat(1);
    for (int k = 0; k < d; ++k) inv2pow /= 2;
    GaussRat scale =
        GaussRat(a * inv2pow, Rat(0)).times_i_pow(-py);
    for (int j = 0; j <= px; ++j)
      for (int l = 0; l <= py; ++l) {
        Rat mag = bx[static_cast<size_t>(j)] * by[static_cast<size_t>(l)];
        if ((py - l) % 2 == 1) mag = -mag;
        zcoef[static_cast<size_t>(j + l)] =
            zcoef[static_cast<size_t>(j + l)] + scale * mag;
      }
  }
  std::map<int, GaussRat> out;
  for (int a = 0; a <= d; ++a) {
    const GaussRat& g = zcoef[static_cast<size_t>(a)];
    if (!g.is_zero()) out[2 * a - d] = g;
  }
  return out;
}

HomoPoly HomoPoly::diff_apply(const HomoPoly& target) const {
  const int d = degree(), dt = target.degree();
  const int out_deg = dt >= d ? dt - d : 0;
  HomoPoly acc = HomoPoly::zero(out_deg);
  if (dt < d) return acc;
  for (int i = 0; i <= d; ++i) {
    const Rat& a = c_[static_cast<size_t>(i)];
    if (a == 0) continue;
    HomoPoly t = target;
    for (int k = 0; k < d - i; ++k) t = t.dx();
    for (int k = 0; k < i; ++k) t = t.dy();
    acc = acc + t * a;
  }
  return acc;
}

std::string HomoPoly::str() const {
  std::ostringstream os;
  bool first = true;
  const int d = degree();
  for (int i = 0; i <= d; ++i) {
    const Rat& a = c_[static_cast<size_t>(i)];
    if (a == 0) continue;
    if (!first) os << " + ";
    os << rat_str(a) << "*x^" << (d - i) << "*y^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace czsi
