//==============================================================================
// experiments.cpp — the five scripted experiments and their report plumbing.
//
// Numeric conventions:
//   * the odd 1-D closed-form experiment works off the grid entirely: the
//     Hilbert image of the unit indicator is (1/pi) log|y/(y-1)|, and all
//     integrals are done by graded Gauss-Legendre panels with analytic tails;
//   * the maximal function of the unit indicator at x > 1 is 1/(2x)
//     (centered intervals; the optimum radius is r = x), used in closed form;
//   * grid experiments state their grids in the config and echo them back.
//==============================================================================
#include "czsi/experiments.hpp"

#include "czsi/algebra.hpp"
#include "czsi/grid.hpp"
#include "czsi/kernels.hpp"
#include "czsi/operators.hpp"
#include "czsi/serialize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <sstream>

namespace czsi {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

//------------------------------------------------------------------ formatting
std::string num_str(double v) {
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

std::string iso_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

//--------------------------------------------------------------- config access
const json& cfg_at(const json& c, const char* key) {
  if (!c.contains(key))
    throw ConfigError(std::string("missing config key '") + key + "'");
  return c.at(key);
}

double cfg_num(const json& c, const char* key) {
  const json& v = cfg_at(c, key);
  if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

int cfg_int(const json& c, const char* key) {
  const json& v = cfg_at(c, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
  return v.get<int>();
}

bool cfg_bool(const json& c, const char* key) {
  const json& v = cfg_at(c, key);
  if (!v.is_boolean()) throw ConfigError(std::string("config key '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::vector<double> cfg_list(const json& c, const char* key) {
  const json& v = cfg_at(c, key);
  if (!v.is_array()) throw ConfigError(std::string("config key '") + key + "' must be a list");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(std::string("config key '") + key + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::string> cfg_str_list(const json& c, const char* key) {
  const json& v = cfg_at(c, key);
  if (!v.is_array()) throw ConfigError(std::string("config key '") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ConfigError(std::string("config key '") + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

//----------------------------------------------------------------- kernel tags
// Tags used inside experiment configs (files are the command line's business):
//   hilbert | riesz-1d | second-order | riesz:<j> | lambda:<rat> |
//   fourth-order:<rat>,<rat> | quartic-mix
// quartic-mix is the two-term kernel xy/|z|^4 + (x^4+y^4-6x^2y^2)/|z|^6 with
// plain (weight-one) coefficients.
KernelSpec kernel_by_tag(const std::string& tag) {
  auto rat = [](const std::string& s) {
    try {
      return rat_parse(s);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad rational in kernel tag: ") + e.what());
    }
  };
  if (tag == "hilbert") return KernelSpec::hilbert();
  if (tag == "riesz-1d") return KernelSpec::riesz_1d();
  if (tag == "second-order") return KernelSpec::second_order_2d();
  if (tag == "quartic-mix") {
    std::vector<KernelTerm> terms;
    terms.push_back(KernelTerm{2, GaussRat{Rat(0), Rat(-1, 4)}, 0, true});
    terms.push_back(KernelTerm{4, GaussRat{Rat(1, 2), Rat(0)}, 0, true});
    return KernelSpec(2, std::move(terms));
  }
  auto colon = tag.find(':');
  if (colon != std::string::npos) {
    std::string head = tag.substr(0, colon);
    std::string rest = tag.substr(colon + 1);
    if (head == "riesz") {
      int j = std::stoi(rest);
      return KernelSpec::riesz_first_order_2d(j);
    }
    if (head == "lambda") return KernelSpec::lambda_family(rat(rest));
    if (head == "fourth-order") {
      auto comma = rest.find(',');
      if (comma == std::string::npos)
        throw ConfigError("fourth-order tag needs two parameters: " + tag);
      return KernelSpec::fourth_order_family(rat(rest.substr(0, comma)),
                                             rat(rest.substr(comma + 1)));
    }
  }
  throw ConfigError("unknown kernel tag '" + tag + "'");
}

//----------------------------------------------------- quadrature (off-grid)
// 16-point Gauss-Legendre on [-1, 1]; panels are graded geometrically toward
// singular or steep endpoints, so each panel sees a smooth integrand.
constexpr double kGlX[8] = {
    0.0950125098376374401853, 0.2816035507792589132304,
    0.4580167776572273863424, 0.6178762444026437484467,
    0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr double kGlW[8] = {
    0.1894506104550684962854, 0.1826034150449235888667,
    0.1691565193950025381893, 0.1495959888165767320815,
    0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

template <class F>
double gl16(F&& f, double a, double b) {
  double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    acc += kGlW[i] * (f(mid + rad * kGlX[i]) + f(mid - rad * kGlX[i]));
  }
  return acc * rad;
}

// Geometric panels accumulating toward the left endpoint a (64 octaves; the
// skipped sliver next to a has relative width 2^-64 and integrable behavior).
template <class F>
double graded_left(F&& f, double a, double b) {
  double d = b - a, acc = 0.0, hi = 1.0;
  for (int k = 0; k < 64; ++k) {
    double lo = hi * 0.5;
    acc += gl16(f, a + d * lo, a + d * hi);
    hi = lo;
  }
  return acc;
}

template <class F>
double graded_right(F&& f, double a, double b) {
  double d = b - a, acc = 0.0, hi = 1.0;
  for (int k = 0; k < 64; ++k) {
    double lo = hi * 0.5;
    acc += gl16(f, b - d * hi, b - d * lo);
    hi = lo;
  }
  return acc;
}

template <class F>
double segment(F&& f, double a, double b, bool special_a, bool special_b) {
  if (b <= a) return 0.0;
  if (special_a && special_b) {
    double m = 0.5 * (a + b);
    return graded_left(f, a, m) + graded_right(f, m, b);
  }
  if (special_a) return graded_left(f, a, b);
  if (special_b) return graded_right(f, a, b);
  double acc = 0.0, step = (b - a) / 8.0;
  for (int k = 0; k < 8; ++k) acc += gl16(f, a + k * step, a + (k + 1) * step);
  return acc;
}

// (1/pi) log|y / (y-1)|, the full-operator image of the unit indicator,
// clamped away from the two logarithmic poles so a panel node landing within
// 1e-100 of them cannot produce an infinity.
double hilbert_of_indicator(double y) {
  double d0 = std::max(std::fabs(y), 1e-100);
  double d1 = std::max(std::fabs(y - 1.0), 1e-100);
  return (std::log(d0) - std::log(d1)) / kPi;
}

// Truncated second application at x with truncation radius eps:
//   E(x, eps) = (1/pi) \int_{|y-x|>eps} hilbert_of_indicator(y)/(x-y) dy,
// split at the interior log singularities {0, 1} and graded toward those and
// toward the truncation edges; |y| > Y tails handled analytically (the two
// 1/Y corrections cancel to O(x/Y^2) and are included for completeness).
double truncated_second_application(double x, double eps) {
  const double Y = 1e8 * (x + 1.0);
  auto f = [x](double y) { return hilbert_of_indicator(y) / (x - y); };

  auto piece = [&](double lo, double hi, bool steep_lo, bool steep_hi) {
    // Assemble breakpoints: the log singularities that fall strictly inside.
    std::vector<double> pts{lo};
    for (double s : {0.0, 1.0}) {
      if (s > lo + 1e-11 && s < hi - 1e-11) pts.push_back(s);
    }
    pts.push_back(hi);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      bool sa = (i == 0) ? steep_lo : true;              // interior pts singular
      bool sb = (i + 2 == pts.size()) ? steep_hi : true;
      acc += segment(f, pts[i], pts[i + 1], sa, sb);
    }
    return acc;
  };

  double left = piece(-Y, x - eps, false, true);
  double right = piece(x + eps, Y, true, false);
  double tail = -1.0 / Y + 1.0 / Y;  // the two leading tail terms cancel
  double value = (left + right + tail) / kPi;
  if (!std::isfinite(value))
    throw std::runtime_error("quadrature failure in truncated evaluation");
  return value;
}

// Left-tail lower-bound integral in weight-one units:
//   \int_1^inf log(1 + 1/y) / (x + y) dy   (+ analytic 1/Y tail).
double lower_bound_formula(double x) {
  const double Y = 1e12;
  auto f = [x](double y) { return std::log1p(1.0 / y) / (x + y); };
  double v = graded_left(f, 1.0, Y) + 1.0 / Y;
  if (!std::isfinite(v)) throw std::runtime_error("quadrature failure in lower bound");
  return v;
}

// Far-tail integral in weight-one units:
//   \int_{2x+1}^inf log(y/(y-1)) / (y - x) dy   (+ analytic 1/Y tail).
double far_tail_formula(double x) {
  const double Y = 1e12 * (x + 1.0);
  auto f = [x](double y) { return std::log(y / (y - 1.0)) / (y - x); };
  double v = graded_left(f, 2.0 * x + 1.0, Y) + 1.0 / Y;
  if (!std::isfinite(v)) throw std::runtime_error("quadrature failure in far tail");
  return v;
}

// sup over truncation radii of |E(x, eps)|: a dyadic sweep plus a dense band
// around eps = x (where the sup lives), then golden-section refinement in the
// bracketing window of the best candidate.
double maximal_second_application(double x) {
  std::vector<double> cand;
  for (int k = 0; k <= 14; ++k) cand.push_back(x * std::ldexp(1.0, -k));
  for (int j = 0; j <= 16; ++j) cand.push_back(x - 2.0 + 0.25 * j);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  double best = 0.0;
  std::size_t best_i = 0;
  std::vector<double> vals(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) {
    vals[i] = std::fabs(truncated_second_application(x, cand[i]));
    if (vals[i] > best) { best = vals[i]; best_i = i; }
  }

  double lo = (best_i == 0) ? cand[0] * 0.5 : cand[best_i - 1];
  double hi = (best_i + 1 == cand.size()) ? cand[best_i] * 2.0 : cand[best_i + 1];
  const double gr = 0.61803398874989484820;
  double a = lo, b = hi;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = std::fabs(truncated_second_application(x, c1));
  double f2 = std::fabs(truncated_second_application(x, c2));
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      a = c1; c1 = c2; f1 = f2;
      c2 = a + gr * (b - a);
      f2 = std::fabs(truncated_second_application(x, c2));
    } else {
      b = c2; c2 = c1; f2 = f1;
      c1 = b - gr * (b - a);
      f1 = std::fabs(truncated_second_application(x, c1));
    }
  }
  return std::max(best, std::max(f1, f2));
}

//------------------------------------------------------------- grid utilities
std::int64_t nearest_node_1d(const Grid& g, double x) {
  double h = g.cell();
  auto i = static_cast<std::int64_t>(std::llround((x + g.side_length / 2) / h));
  return std::clamp<std::int64_t>(i, 0, g.resolution - 1);
}

std::int64_t nearest_node(const Grid& g, double x, double y) {
  if (g.dim == 1) return nearest_node_1d(g, x);
  return g.flatten(nearest_node_1d(g, x), nearest_node_1d(g, y));
}

// Plain average of field values over grid nodes within distance eps of the
// node at center_idx (closed ball; the boundary shell is O(h/eps) of the mass
// and is part of what the identity's tolerance absorbs).
double ball_average(const GridField& f, std::int64_t center_idx, double eps) {
  const Grid& g = f.grid;
  auto c = g.node(center_idx);
  double acc = 0.0;
  std::int64_t count = 0;
  const double bound = eps * (1.0 + 1e-12);
  for (std::int64_t idx = 0; idx < g.point_count(); ++idx) {
    auto p = g.node(idx);
    double dx = p[0] - c[0], dy = (g.dim == 2) ? p[1] - c[1] : 0.0;
    if (std::hypot(dx, dy) <= bound) {
      acc += f.real_at(idx);
      ++count;
    }
  }
  return acc / static_cast<double>(count);
}

// Empirical pointwise constant sup_x T*f(x) / M(Tf)(x) (or M^2 for odd data)
// over a seeded band-limited suite; points where the denominator sits under
// floor_rel * max are excluded and accounted in the validity fraction.
struct RatioStats {
  double constant = 0.0;
  double min_valid_fraction = 1.0;
};

RatioStats ratio_constant(const KernelSpec& spec, const Grid& grid,
                          int base_seed, int seeds, int max_mode,
                          double floor_rel, bool iterate) {
  RatioStats out;
  for (int s = 0; s < seeds; ++s) {
    GridField f = sample(
        BandLimitedDesc{static_cast<std::uint64_t>(base_seed + s), max_mode, 1.0},
        grid);
    GridField star = apply_maximal_field(spec, f, TruncationConfig::dyadic(grid));
    GridField tf = apply_full(spec, f);
    MaximalConfig mc = MaximalConfig::dyadic(grid);
    GridField denom = iterate ? iterated_maximal_field(tf, mc)
                              : hl_maximal_field(tf, mc);
    double floor = floor_rel * linf_norm(denom);
    double sup = 0.0;
    std::int64_t valid = 0;
    for (std::int64_t idx = 0; idx < grid.point_count(); ++idx) {
      double d = denom.real_at(idx);
      if (d < floor || d <= 0.0) continue;
      ++valid;
      sup = std::max(sup, star.real_at(idx) / d);
    }
    out.constant = std::max(out.constant, sup);
    double frac = static_cast<double>(valid) /
                  static_cast<double>(grid.point_count());
    out.min_valid_fraction = std::min(out.min_valid_fraction, frac);
  }
  return out;
}

double drift(double lo, double hi) {
  double base = std::max(std::fabs(lo), 1e-300);
  return std::fabs(hi - lo) / base;
}

void push_metric(Report& r, const std::string& name, double v) {
  r.metrics.emplace_back(name, v);
}

std::string tag_num(double v) {
  // Compact tag for metric names: integers render without a decimal point.
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  return num_str(v);
}

}  // namespace

//------------------------------------------------------------------ reporting
std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::informational: return "informational";
  }
  return "fail";
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Report::config_hash() const {
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(config.dump());
  return o.str();
}

std::string Report::text() const {
  std::ostringstream o;
  o << "czsi-report v1\n";
  o << "experiment: " << id << "\n";
  o << "config-hash: " << config_hash() << "\n";
  o << "timestamp: " << (timestamp.empty() ? "unset" : timestamp) << "\n";
  o << "verdict: " << verdict_name(verdict) << "\n";
  o << "config: " << config.dump() << "\n";
  for (const auto& [name, value] : metrics)
    o << "metric " << name << " = " << num_str(value) << "\n";
  for (const auto& s : series) {
    o << "series " << s.name << " [";
    for (std::size_t i = 0; i < s.columns.size(); ++i)
      o << (i ? "," : "") << s.columns[i];
    o << "] rows=" << s.rows.size() << "\n";
  }
  for (const auto& n : notes) o << "note: " << n << "\n";
  return o.str();
}

std::string Report::csv() const {
  std::ostringstream o;
  bool first = true;
  for (const auto& s : series) {
    if (!first) o << "\n";
    first = false;
    o << "# series " << s.name << "\n";
    for (std::size_t i = 0; i < s.columns.size(); ++i)
      o << (i ? "," : "") << s.columns[i];
    o << "\n";
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        o << (i ? "," : "") << num_str(row[i]);
      o << "\n";
    }
  }
  return o.str();
}

std::string write_report(const Report& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);
  std::string stem = report.id + "." + report.config_hash();
  fs::path report_path = dir / (stem + ".report");
  atomic_write(report_path.string(), report.text());
  if (!report.series.empty())
    atomic_write((dir / (stem + ".csv")).string(), report.csv());
  return report_path.string();
}

//------------------------------------------------------ experiment: mean-value
// Truncated application at radius eps versus the average of the full image
// over the ball of the same radius — an identity for the even second-order
// kernel, and visibly false for the odd 1-D kernel (informational arm).
Report exp_mean_value(const json& config) {
  Report r;
  r.id = "mean-value";
  r.config = config;

  const int n = cfg_int(config, "grid-n");
  const double L = cfg_num(config, "grid-l");
  auto center = cfg_list(config, "center");
  if (center.size() != 2) throw ConfigError("center must be [x, y]");
  const double width = cfg_num(config, "width");
  auto epsilons = cfg_list(config, "epsilons");
  const double tol = cfg_num(config, "tol-rel");
  const json& pts = cfg_at(config, "sample-points");
  if (!pts.is_array() || pts.empty())
    throw ConfigError("sample-points must be a non-empty list of [x, y]");

  Grid grid = Grid::make(2, L, n);
  KernelSpec spec = KernelSpec::second_order_2d();
  GridField f = sample(GaussianDesc{{center[0], center[1]}, width, 1.0}, grid);
  GridField tf = apply_full(spec, f);
  const double scale = linf_norm(tf);

  MetricSeries table;
  table.name = "identity";
  table.columns = {"x", "y", "eps", "truncated", "ball-average", "residual"};

  double worst = 0.0;
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != 2)
      throw ConfigError("sample-points entries must be [x, y]");
    std::int64_t idx = nearest_node(grid, p[0].get<double>(), p[1].get<double>());
    auto at = grid.node(idx);
    for (double eps : epsilons) {
      double lhs = apply_truncated(spec, f, idx, eps);
      double rhs = ball_average(tf, idx, eps);
      double resid = std::fabs(lhs - rhs) / scale;
      worst = std::max(worst, resid);
      table.rows.push_back({at[0], at[1], eps, lhs, rhs, resid});
    }
  }
  push_metric(r, "max-residual", worst);
  r.series.push_back(std::move(table));
  r.verdict = (worst <= tol) ? Verdict::pass : Verdict::fail;

  if (cfg_bool(config, "odd-arm")) {
    const int on = cfg_int(config, "odd-n");
    const double ol = cfg_num(config, "odd-l");
    Grid og = Grid::make(1, ol, on);
    KernelSpec h = KernelSpec::hilbert();
    GridField of = sample(GaussianDesc{{center[0], 0.0}, width, 1.0}, og);
    GridField otf = apply_full(h, of);
    double oscale = linf_norm(otf);
    std::int64_t oidx = nearest_node(og, 0.0, 0.0);
    double oworst = 0.0;
    for (double eps : epsilons) {
      double lhs = apply_truncated(h, of, oidx, eps);
      double rhs = ball_average(otf, oidx, eps);
      oworst = std::max(oworst, std::fabs(lhs - rhs) / oscale);
    }
    push_metric(r, "odd-arm-residual", oworst);
    r.notes.push_back(
        "odd-arm residual is informational: no ball-average identity holds "
        "for the odd kernel, so a large value here is the expected outcome");
  }
  return r;
}

//------------------------------------------------------- experiment: pointwise
// Empirical pointwise constants over a seeded band-limited suite: the even
// kernel against M(Tf), the odd 1-D kernel against M^2(Tf).  Pass iff both
// constants drift at most drift-tol across the two resolutions and every run
// keeps at least validity-min of its points above the denominator floor.
// A third, informational arm feeds the 1-D kernel its own image of the unit
// indicator and watches the single-M constant grow with the domain size.
Report exp_pointwise(const json& config) {
  Report r;
  r.id = "pointwise";
  r.config = config;

  KernelSpec even = kernel_by_tag(cfg_at(config, "even-kernel").get<std::string>());
  const double L = cfg_num(config, "grid-l");
  auto n_values = cfg_list(config, "n-values");
  if (n_values.size() != 2) throw ConfigError("n-values must list two resolutions");
  const int seeds = cfg_int(config, "seeds");
  const int base_seed = cfg_int(config, "base-seed");
  const int max_mode = cfg_int(config, "max-mode");
  const double floor_rel = cfg_num(config, "validity-floor");
  const double validity_min = cfg_num(config, "validity-min");
  const double drift_tol = cfg_num(config, "drift-tol");
  const double odd_l = cfg_num(config, "odd-l");
  auto odd_n = cfg_list(config, "odd-n-values");
  if (odd_n.size() != 2) throw ConfigError("odd-n-values must list two resolutions");

  bool ok = true;
  MetricSeries table;
  table.name = "constants";
  table.columns = {"arm", "n", "constant", "min-valid-fraction"};

  auto run_arm = [&](const char* name, const KernelSpec& spec, double l,
                     const std::vector<double>& ns, bool iterate) {
    std::vector<double> cs;
    for (double nv : ns) {
      Grid g = Grid::make(spec.dim(), l, static_cast<std::int64_t>(nv));
      RatioStats st = ratio_constant(spec, g, base_seed, seeds, max_mode,
                                     floor_rel, iterate);
      cs.push_back(st.constant);
      table.rows.push_back({static_cast<double>(table.rows.size() / ns.size()),
                            nv, st.constant, st.min_valid_fraction});
      push_metric(r, std::string(name) + "-constant-" + tag_num(nv), st.constant);
      push_metric(r, std::string(name) + "-valid-" + tag_num(nv),
                  st.min_valid_fraction);
      if (st.min_valid_fraction < validity_min) ok = false;
    }
    double d = drift(cs[0], cs[1]);
    push_metric(r, std::string(name) + "-drift", d);
    if (d > drift_tol) ok = false;
  };

  run_arm("even", even, L, n_values, false);
  run_arm("odd", KernelSpec::hilbert(), odd_l, odd_n, true);

  // Growth arm: input = the 1-D kernel's own image of the unit indicator, so
  // the full image is that indicator back (up to sign) and the single-M
  // denominator is explicit.  The sup ratio tracks the log of the domain.
  auto growth_l = cfg_list(config, "growth-l-values");
  const int growth_n = cfg_int(config, "growth-n");
  KernelSpec h = KernelSpec::hilbert();
  std::vector<double> growth_c;
  for (double gl : growth_l) {
    Grid g = Grid::make(1, gl, growth_n);
    double hh = g.cell();
    GridField f{g, std::vector<cplx>(g.point_count()), true};
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
      double y = g.coord(i);
      if (std::fabs(y) < hh / 8 || std::fabs(y - 1.0) < hh / 8) y += hh / 4;
      f.values[i] = hilbert_of_indicator(y);
    }
    GridField star = apply_maximal_field(h, f, TruncationConfig::dyadic(g));
    GridField tf = apply_full(h, f);
    GridField denom = hl_maximal_field(tf, MaximalConfig::dyadic(g));
    double floor = floor_rel * linf_norm(denom);
    double sup = 0.0;
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
      double d = denom.real_at(i);
      if (d < floor || d <= 0.0) continue;
      sup = std::max(sup, star.real_at(i) / d);
    }
    growth_c.push_back(sup);
    push_metric(r, "growth-constant-l-" + tag_num(gl), sup);
  }
  if (growth_c.size() >= 2 && growth_c.front() > 0.0)
    push_metric(r, "growth-ratio", growth_c.back() / growth_c.front());
  r.notes.push_back(
      "growth arm is informational: with a single M the odd-kernel constant "
      "tracks the domain size instead of stabilizing, which is why the odd "
      "arm above uses the iterated maximal function");

  r.series.push_back(std::move(table));
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

//--------------------------------------- experiment: hilbert-counterexample
// Off-grid closed-form evaluation of the maximal second application on the
// unit indicator.  Metrics per sample point x:
//   hstar   = sup_eps |E(x, eps)|          (weight 1/pi in each application)
//   g       = x * hstar / log x
//   rho     = hstar / Mf(x) with Mf(x) = 1/(2x) in closed form
//   lower-bound: the left-tail integral, checked as a lower bound on hstar
// plus the far-tail integral bound at one x.  Pass iff every g sits in the
// configured band, the g-ratio across the sampled span sits in its band,
// rho grows by at least rho-decade-min per decade, the lower-bound
// consistency holds, and the far tail obeys its 1/x bound.
Report exp_hilbert_counterexample(const json& config) {
  Report r;
  r.id = "hilbert-counterexample";
  r.config = config;

  auto xs = cfg_list(config, "x-values");
  if (xs.size() < 2) throw ConfigError("x-values needs at least two points");
  auto g_band = cfg_list(config, "g-band");
  auto g_ratio_band = cfg_list(config, "g-ratio-band");
  if (g_band.size() != 2 || g_ratio_band.size() != 2)
    throw ConfigError("g-band and g-ratio-band must be [lo, hi]");
  const double rho_min = cfg_num(config, "rho-decade-min");
  const double consistency_tol = cfg_num(config, "consistency-tol");
  const double far_tail_x = cfg_num(config, "far-tail-x");

  MetricSeries table;
  table.name = "growth";
  table.columns = {"x", "hstar", "g", "rho", "lower-bound"};

  bool ok = true;
  std::vector<double> gs, rhos;
  for (double x : xs) {
    double hstar = maximal_second_application(x);
    double lower = lower_bound_formula(x) / (kPi * kPi);
    double g = x * hstar / std::log(x);
    double rho = 2.0 * x * hstar;  // Mf(x) = 1/(2x)
    gs.push_back(g);
    rhos.push_back(rho);
    push_metric(r, "hstar-" + tag_num(x), hstar);
    push_metric(r, "g-" + tag_num(x), g);
    push_metric(r, "rho-" + tag_num(x), rho);
    push_metric(r, "lower-bound-" + tag_num(x), lower);
    table.rows.push_back({x, hstar, g, rho, lower});
    if (g < g_band[0] || g > g_band[1]) {
      ok = false;
      r.notes.push_back("g out of band at x = " + tag_num(x));
    }
    if (hstar < (1.0 - consistency_tol) * lower) {
      ok = false;
      r.notes.push_back("lower-bound consistency failed at x = " + tag_num(x));
    }
  }

  double g_ratio = gs.back() / gs.front();
  push_metric(r, "g-span-ratio", g_ratio);
  if (g_ratio < g_ratio_band[0] || g_ratio > g_ratio_band[1]) {
    ok = false;
    r.notes.push_back("g span ratio out of band");
  }

  for (std::size_t k = 0; k + 1 < rhos.size(); ++k) {
    double ratio = rhos[k + 1] / rhos[k];
    push_metric(r, "rho-ratio-" + tag_num(static_cast<double>(k + 1)), ratio);
    if (ratio < rho_min) {
      ok = false;
      r.notes.push_back("rho decade growth below threshold at step " +
                        tag_num(static_cast<double>(k + 1)) + ": ratio " +
                        num_str(ratio) + " < " + num_str(rho_min) +
                        "; the growth is logarithmic, so the per-decade "
                        "ratio decays toward 1 as x grows");
    }
  }

  double far = far_tail_formula(far_tail_x);
  push_metric(r, "far-tail-" + tag_num(far_tail_x), far);
  if (far > 1.0 / far_tail_x) {
    ok = false;
    r.notes.push_back("far-tail integral exceeds its 1/x bound");
  }

  r.notes.push_back(
      "lower-bound metrics are stated in the implementation's weight-one "
      "units divided by pi^2, matching the (1/pi)-per-application kernel "
      "normalization used throughout");
  r.series.push_back(std::move(table));
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

//------------------------------------------------------ experiment: l2-failure
// For a kernel whose factorization co-factor (or full circle symbol) vanishes
// at some direction theta*, concentrating the input's spectrum near theta*
// sends ||Tf||_2 to zero faster than the truncated image, so the ratio
//   r(sigma) = ||T^eps f_sigma||_2 / ||T f_sigma||_2
// blows up as the spectral width sigma shrinks.  The paired control kernel
// must stay flat under the same protocol.
Report exp_l2_failure(const json& config) {
  Report r;
  r.id = "l2-failure";
  r.config = config;

  const int n = cfg_int(config, "grid-n");
  const double L = cfg_num(config, "grid-l");
  auto treatments = cfg_str_list(config, "treatment-kernels");
  const std::string control_tag = cfg_at(config, "control-kernel").get<std::string>();
  const double xi_mag = cfg_num(config, "xi-mag");
  auto sigmas = cfg_list(config, "sigmas");
  const double eps = cfg_num(config, "epsilon");
  const double ratio_min = cfg_num(config, "ratio-min");
  const double control_band = cfg_num(config, "control-band");
  if (sigmas.size() < 2) throw ConfigError("sigmas needs at least two widths");

  Grid grid = Grid::make(2, L, n);
  KernelSpec control = kernel_by_tag(control_tag);

  auto direction_of_interest = [](const KernelSpec& spec) {
    Factorization fact = factorize(spec);
    if (fact.ok) {
      InvertibilityReport inv = invertibility(fact.u);
      if (!inv.invertible) return inv.argmin_angle;
    }
    return invertibility(CZElement::from_kernel(0.0, spec)).argmin_angle;
  };

  auto ratio_for = [&](const KernelSpec& spec, double theta, double sigma) {
    const double step = 2.0 * kPi / L;
    double kx = std::round(xi_mag * std::cos(theta) / step) * step;
    double ky = std::round(xi_mag * std::sin(theta) / step) * step;
    SpectralField sf{grid, std::vector<cplx>(grid.point_count()), true};
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    for (std::int64_t idx = 0; idx < grid.point_count(); ++idx) {
      auto xi = sf.xi(idx);
      double dp = (xi[0] - kx) * (xi[0] - kx) + (xi[1] - ky) * (xi[1] - ky);
      double dm = (xi[0] + kx) * (xi[0] + kx) + (xi[1] + ky) * (xi[1] + ky);
      sf.coeff[idx] = std::exp(-dp * inv2s2) + std::exp(-dm * inv2s2);
    }
    GridField f = dft_inverse(sf);
    double full = l2_norm(apply_full(spec, f));
    double truncated = l2_norm(apply_truncated_field(spec, f, eps));
    return truncated / full;
  };

  bool ok = true;
  for (const auto& tag : treatments) {
    KernelSpec spec = kernel_by_tag(tag);
    double theta = direction_of_interest(spec);
    push_metric(r, "theta-" + tag, theta);

    MetricSeries st, sc;
    st.name = "treatment:" + tag;
    sc.name = "control:" + tag;
    st.columns = sc.columns = {"sigma", "ratio"};
    std::vector<double> rt, rc;
    for (double sigma : sigmas) {
      rt.push_back(ratio_for(spec, theta, sigma));
      rc.push_back(ratio_for(control, theta, sigma));
      st.rows.push_back({sigma, rt.back()});
      sc.rows.push_back({sigma, rc.back()});
    }
    bool increasing = true;
    for (std::size_t i = 0; i + 1 < rt.size(); ++i)
      if (rt[i + 1] <= rt[i]) increasing = false;
    double span = rt.back() / rt.front();
    double control_span = *std::max_element(rc.begin(), rc.end()) /
                          *std::min_element(rc.begin(), rc.end());
    push_metric(r, "span-" + tag, span);
    push_metric(r, "control-span-" + tag, control_span);
    if (!increasing) {
      ok = false;
      r.notes.push_back("treatment ratio not strictly increasing for " + tag);
    }
    if (span < ratio_min) {
      ok = false;
      r.notes.push_back("treatment span below threshold for " + tag);
    }
    if (control_span > control_band) {
      ok = false;
      r.notes.push_back("paired control drifted beyond its band for " + tag);
    }
    r.series.push_back(std::move(st));
    r.series.push_back(std::move(sc));
  }

  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

//------------------------------------------------- experiment: condition-survey
// For each kernel in the list: the polynomial division verdict, the co-factor
// invertibility verdict, their conjunction, and the empirical pointwise
// constant at two resolutions.  Pass iff every kernel whose conjunction holds
// shows a stable constant; the rest are reported as data.
Report exp_condition_survey(const json& config) {
  Report r;
  r.id = "condition-survey";
  r.config = config;

  auto tags = cfg_str_list(config, "kernels");
  const double L = cfg_num(config, "grid-l");
  auto n_values = cfg_list(config, "n-values");
  if (n_values.size() != 2) throw ConfigError("n-values must list two resolutions");
  const int seeds = cfg_int(config, "seeds");
  const int base_seed = cfg_int(config, "base-seed");
  const int max_mode = cfg_int(config, "max-mode");
  const double floor_rel = cfg_num(config, "validity-floor");
  const double drift_tol = cfg_num(config, "drift-tol");

  MetricSeries table;
  table.name = "survey";
  table.columns = {"kernel-index", "division", "invertible", "conjunction",
                   "constant-lo", "constant-hi", "drift"};

  bool ok = true;
  for (std::size_t ki = 0; ki < tags.size(); ++ki) {
    KernelSpec spec = kernel_by_tag(tags[ki]);
    DivisionReport div = division_condition(spec);
    bool invertible = false;
    if (div.holds) {
      Factorization fact = factorize(spec);
      invertible = fact.ok && invertibility(fact.u).invertible;
    }
    bool conjunction = div.holds && invertible;

    std::vector<double> cs;
    for (double nv : n_values) {
      Grid g = Grid::make(spec.dim(), L, static_cast<std::int64_t>(nv));
      cs.push_back(ratio_constant(spec, g, base_seed, seeds, max_mode,
                                  floor_rel, false)
                       .constant);
    }
    double d = drift(cs[0], cs[1]);
    table.rows.push_back({static_cast<double>(ki), div.holds ? 1.0 : 0.0,
                          invertible ? 1.0 : 0.0, conjunction ? 1.0 : 0.0,
                          cs[0], cs[1], d});
    push_metric(r, "division:" + tags[ki], div.holds ? 1.0 : 0.0);
    push_metric(r, "invertible:" + tags[ki], invertible ? 1.0 : 0.0);
    push_metric(r, "conjunction:" + tags[ki], conjunction ? 1.0 : 0.0);
    push_metric(r, "drift:" + tags[ki], d);

    if (conjunction && d > drift_tol) {
      ok = false;
      r.notes.push_back("constant unstable for " + tags[ki] +
                        " despite the algebraic condition holding");
    }
    if (!div.holds)
      r.notes.push_back("division fails for " + tags[ki] +
                        "; no factorization exists (reported as data)");
    else if (!invertible)
      r.notes.push_back("co-factor not invertible for " + tags[ki] +
                        "; constant behavior reported as data");
  }

  r.series.push_back(std::move(table));
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

//------------------------------------------------------------------- dispatch
std::vector<std::string> experiment_ids() {
  return {"mean-value", "pointwise", "hilbert-counterexample", "l2-failure",
          "condition-survey"};
}

json default_config(const std::string& id) {
  if (id == "mean-value") {
    return json{{"grid-n", 512},
                {"grid-l", 8.0},
                {"center", {0.7, 0.3}},
                {"width", 0.8},
                {"epsilons", {0.25, 0.5}},
                {"sample-points", {{0.0, 0.0}, {0.4, 0.2}, {-0.6, 0.3}}},
                {"tol-rel", 1e-2},
                {"odd-arm", true},
                {"odd-n", 4096},
                {"odd-l", 64.0}};
  }
  if (id == "pointwise") {
    return json{{"even-kernel", "second-order"},
                {"grid-l", 16.0},
                {"n-values", {256, 512}},
                {"seeds", 20},
                {"base-seed", 1},
                {"max-mode", 8},
                {"validity-floor", 1e-6},
                {"validity-min", 0.9},
                {"drift-tol", 0.25},
                {"odd-l", 64.0},
                {"odd-n-values", {256, 512}},
                {"growth-l-values", {32.0, 128.0, 512.0}},
                {"growth-n", 4096}};
  }
  if (id == "hilbert-counterexample") {
    return json{{"x-values", {10.0, 100.0, 1000.0, 10000.0}},
                {"g-band", {0.05, 20.0}},
                {"g-ratio-band", {0.5, 2.0}},
                {"rho-decade-min", 1.5},
                {"consistency-tol", 5e-3},
                {"far-tail-x", 100.0}};
  }
  if (id == "l2-failure") {
    return json{{"grid-n", 512},
                {"grid-l", 256.0},
                {"treatment-kernels", {"lambda:1", "quartic-mix"}},
                {"control-kernel", "lambda:1/2"},
                // Bump magnitude: with epsilon = 1 the degree-2 truncated
                // radial factor (the Bessel tail integral) crosses zero near
                // |xi| = 4, which would gut the control arm's truncated norm
                // at off-axis directions; 3 keeps both radial factors well
                // away from their zeros and the bump inside the Nyquist band.
                {"xi-mag", 3.0},
                {"sigmas", {0.5, 0.25, 0.125}},
                {"epsilon", 1.0},
                {"ratio-min", 3.0},
                {"control-band", 1.5}};
  }
  if (id == "condition-survey") {
    return json{{"kernels",
                 {"lambda:0", "lambda:1/2", "lambda:99/100", "lambda:1",
                  "lambda:2", "quartic-mix"}},
                {"grid-l", 16.0},
                {"n-values", {128, 256}},
                {"seeds", 4},
                {"base-seed", 1},
                {"max-mode", 6},
                {"validity-floor", 1e-6},
                {"drift-tol", 0.25}};
  }
  throw ConfigError("unknown experiment id '" + id + "'");
}

Report run_experiment(const std::string& id, const json& overrides) {
  json config = default_config(id);
  if (!overrides.is_null()) {
    if (!overrides.is_object())
      throw ConfigError("experiment config must be a JSON object");
    for (const auto& [key, value] : overrides.items()) {
      if (!config.contains(key))
        throw ConfigError("unknown config key '" + key + "' for experiment " + id);
      config[key] = value;
    }
  }
  Report r;
  if (id == "mean-value") r = exp_mean_value(config);
  else if (id == "pointwise") r = exp_pointwise(config);
  else if (id == "hilbert-counterexample") r = exp_hilbert_counterexample(config);
  else if (id == "l2-failure") r = exp_l2_failure(config);
  else r = exp_condition_survey(config);
  r.timestamp = iso_timestamp();
  return r;
}

}  // namespace czsi
