#include <czsi/operators.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace czsi {

namespace {

// Wrap a raw index difference into [-N/2, N/2).
inline long wrap_disp(long d, long N) { return d < N / 2 ? d : d - N; }

inline long mod_idx(long a, long N) {
    long r = a % N;
    return r < 0 ? r + N : r;
}

void check_real(const GridField& f, const char* who) {
    if (!f.real_valued)
        throw std::invalid_argument(std::string(who) + ": real-valued field required");
}

void check_dim(const KernelSpec& spec, const GridField& f, const char* who) {
    if (spec.dim() != f.grid.dim)
        throw std::invalid_argument(std::string(who) + ": kernel/field dimension mismatch");
}

// Kernel sampled at the wrapped displacement of every raw index; the zero
// displacement and every cell center with |y| <= eps contribute nothing.
std::vector<double> kernel_table(const KernelSpec& spec, const Grid& g, double eps) {
    const long N = g.resolution;
    const double h = g.cell();
    std::vector<double> tab(static_cast<size_t>(g.point_count()), 0.0);
    if (g.dim == 1) {
        for (long d = 0; d < N; ++d) {
            long dd = wrap_disp(d, N);
            if (dd == 0) continue;
            double y = dd * h;
            if (y * y > eps * eps) tab[static_cast<size_t>(d)] = spec.eval(y);
        }
    } else {
        for (long d1 = 0; d1 < N; ++d1) {
            long w1 = wrap_disp(d1, N);
            for (long d2 = 0; d2 < N; ++d2) {
                long w2 = wrap_disp(d2, N);
                if (w1 == 0 && w2 == 0) continue;
                double y1 = w1 * h, y2 = w2 * h;
                if (y1 * y1 + y2 * y2 > eps * eps)
                    tab[static_cast<size_t>(d1 * N + d2)] = spec.eval(y1, y2);
            }
        }
    }
    return tab;
}

// Circular convolution h^n * (tab (*) f) through raw transforms.
GridField convolve_table(const std::vector<double>& tab, const GridField& f) {
    const Grid& g = f.grid;
    std::vector<cplx> fk(f.values);
    raw_dft(g, fk, true);
    std::vector<cplx> kk(tab.begin(), tab.end());
    raw_dft(g, kk, true);
    for (size_t i = 0; i < fk.size(); ++i) fk[i] *= kk[i];
    raw_dft(g, fk, false);
    const double scale =
        std::pow(g.cell(), g.dim) / std::pow(static_cast<double>(g.resolution), g.dim);
    GridField out;
    out.grid = g;
    out.real_valued = f.real_valued;
    out.values.resize(fk.size());
    for (size_t i = 0; i < fk.size(); ++i) {
        cplx v = fk[i] * scale;
        out.values[i] = f.real_valued ? cplx(v.real(), 0.0) : v;
    }
    return out;
}

double resolution_floor(const Grid& g) { return 2.0 * g.cell(); }

}  // namespace

//------------------------------------------------------------------ configs

TruncationConfig TruncationConfig::dyadic(const Grid& g) {
    TruncationConfig c;
    const double cap = g.side_length / 4.0;
    for (double eps = resolution_floor(g); eps <= cap * (1.0 + 1e-12); eps *= 2.0)
        c.epsilon_list.push_back(eps);
    return c;
}

void TruncationConfig::validate(const Grid& g) const {
    if (epsilon_list.empty())
        throw std::invalid_argument("truncation config: empty epsilon list");
    double prev = 0.0;
    for (double e : epsilon_list) {
        if (e < resolution_floor(g) * (1.0 - 1e-12))
            throw std::invalid_argument("truncation config: epsilon below the 2-cell floor");
        if (e <= prev)
            throw std::invalid_argument("truncation config: epsilon list not increasing");
        prev = e;
    }
}

MaximalConfig MaximalConfig::dyadic(const Grid& g) {
    MaximalConfig c;
    const double cap = g.side_length / 4.0;
    for (double r = g.cell(); r <= cap * (1.0 + 1e-12); r *= 2.0)
        c.radius_list.push_back(r);
    return c;
}

void MaximalConfig::validate(const Grid& g) const {
    if (radius_list.empty())
        throw std::invalid_argument("maximal config: empty radius list");
    double prev = 0.0;
    for (double r : radius_list) {
        if (r < g.cell() * (1.0 - 1e-12) ||
            r > g.side_length / 4.0 * (1.0 + 1e-12))
            throw std::invalid_argument("maximal config: radius outside [one cell, L/4]");
        if (r <= prev)
            throw std::invalid_argument("maximal config: radius list not increasing");
        prev = r;
    }
}

//----------------------------------------------------------------- spectral

GridField apply_full(const KernelSpec& spec, const GridField& f) {
    check_dim(spec, f, "apply_full");
    Symbol sym = spec.multiplier();
    SpectralField s = dft_forward(f);
    const std::int64_t n = s.grid.point_count();
    for (std::int64_t k = 1; k < n; ++k)
        s.coeff[static_cast<size_t>(k)] *= sym.eval_xi(s.xi(k));
    s.coeff[0] = cplx(0.0, 0.0);  // p.v. convolution annihilates constants
    return dft_inverse(s);
}

GridField apply_symbol_map(const GridField& f,
                           const std::function<cplx(const std::array<double, 2>&)>& fn,
                           bool real_output) {
    SpectralField s = dft_forward(f);
    const std::int64_t n = s.grid.point_count();
    for (std::int64_t k = 1; k < n; ++k)
        s.coeff[static_cast<size_t>(k)] *= fn(s.xi(k));
    s.coeff[0] = cplx(0.0, 0.0);
    s.hermitian = real_output && f.real_valued;
    return dft_inverse(s);
}

//---------------------------------------------------------------- truncated

double apply_truncated(const KernelSpec& spec, const GridField& f,
                       std::int64_t index, double eps) {
    check_dim(spec, f, "apply_truncated");
    check_real(f, "apply_truncated");
    const Grid& g = f.grid;
    if (index < 0 || index >= g.point_count())
        throw std::invalid_argument("apply_truncated: node index out of range");
    if (eps < resolution_floor(g) * (1.0 - 1e-12))
        throw std::invalid_argument("apply_truncated: epsilon below the 2-cell floor");
    const long N = g.resolution;
    const double h = g.cell();
    double acc = 0.0;
    if (g.dim == 1) {
        const long i = static_cast<long>(index);
        for (long d = 0; d < N; ++d) {
            long dd = wrap_disp(d, N);
            if (dd == 0) continue;
            double y = dd * h;
            if (!(y * y > eps * eps)) continue;
            acc += spec.eval(y) * f.values[static_cast<size_t>(mod_idx(i - dd, N))].real();
        }
        return acc * h;
    }
    const auto [i1, i2] = g.unflatten(index);
    for (long d1 = 0; d1 < N; ++d1) {
        long w1 = wrap_disp(d1, N);
        long j1 = mod_idx(i1 - w1, N);
        for (long d2 = 0; d2 < N; ++d2) {
            long w2 = wrap_disp(d2, N);
            if (w1 == 0 && w2 == 0) continue;
            double y1 = w1 * h, y2 = w2 * h;
            if (!(y1 * y1 + y2 * y2 > eps * eps)) continue;
            acc += spec.eval(y1, y2) *
                   f.values[static_cast<size_t>(j1 * N + mod_idx(i2 - w2, N))].real();
        }
    }
    return acc * h * h;
}

GridField apply_truncated_field(const KernelSpec& spec, const GridField& f,
                                double eps) {
    check_dim(spec, f, "apply_truncated_field");
    if (eps < resolution_floor(f.grid) * (1.0 - 1e-12))
        throw std::invalid_argument("apply_truncated_field: epsilon below the 2-cell floor");
    return convolve_table(kernel_table(spec, f.grid, eps), f);
}

double apply_maximal(const KernelSpec& spec, const GridField& f,
                     std::int64_t index, const TruncationConfig& config) {
    config.validate(f.grid);
    double best = 0.0;
    for (double eps : config.epsilon_list)
        best = std::max(best, std::abs(apply_truncated(spec, f, index, eps)));
    return best;
}

GridField apply_maximal_field(const KernelSpec& spec, const GridField& f,
                              const TruncationConfig& config) {
    check_dim(spec, f, "apply_maximal_field");
    check_real(f, "apply_maximal_field");
    config.validate(f.grid);
    const Grid& g = f.grid;
    // Untruncated kernel table once; each pass re-masks instead of re-evaluating.
    std::vector<double> base = kernel_table(spec, g, 0.0);
    const long N = g.resolution;
    const double h = g.cell();
    GridField out;
    out.grid = g;
    out.real_valued = true;
    out.values.assign(static_cast<size_t>(g.point_count()), cplx(0.0, 0.0));
    std::vector<double> masked(base.size());
    for (double eps : config.epsilon_list) {
        if (g.dim == 1) {
            for (long d = 0; d < N; ++d) {
                double y = wrap_disp(d, N) * h;
                masked[static_cast<size_t>(d)] =
                    (y * y > eps * eps) ? base[static_cast<size_t>(d)] : 0.0;
            }
        } else {
            for (long d1 = 0; d1 < N; ++d1)
                for (long d2 = 0; d2 < N; ++d2) {
                    double y1 = wrap_disp(d1, N) * h, y2 = wrap_disp(d2, N) * h;
                    masked[static_cast<size_t>(d1 * N + d2)] =
                        (y1 * y1 + y2 * y2 > eps * eps)
                            ? base[static_cast<size_t>(d1 * N + d2)]
                            : 0.0;
                }
        }
        GridField t = convolve_table(masked, f);
        for (size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = cplx(
                std::max(out.values[i].real(), std::abs(t.values[i].real())), 0.0);
    }
    return out;
}

//------------------------------------------------------------------ maximal

namespace {

// Cube half-width in cells: centers with |y - x|_inf < r, i.e. |d| <= m.
long cells_for_radius(double r, double h) {
    long m = static_cast<long>(std::ceil(r / h - 1e-12)) - 1;
    return std::max<long>(m, 0);
}

std::vector<long> distinct_halfwidths(const MaximalConfig& c, const Grid& g) {
    std::vector<long> ms;
    for (double r : c.radius_list) ms.push_back(cells_for_radius(r, g.cell()));
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    return ms;
}

// Circular prefix-sum window machinery: P has N+1 entries, window of width
// w <= N starting at raw index lo.
inline double window_sum(const std::vector<double>& P, long lo, long w, long N) {
    lo = mod_idx(lo, N);
    if (lo + w <= N) return P[static_cast<size_t>(lo + w)] - P[static_cast<size_t>(lo)];
    return (P[static_cast<size_t>(N)] - P[static_cast<size_t>(lo)]) +
           P[static_cast<size_t>(lo + w - N)];
}

std::vector<double> abs_values(const GridField& f) {
    std::vector<double> a(f.values.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.values[i]);
    return a;
}

// Mean of |f| over every centered cube of half-width m cells, via separable
// circular box filters.
std::vector<double> box_mean(const std::vector<double>& absf, const Grid& g, long m) {
    const long N = g.resolution;
    const long w = 2 * m + 1;
    if (w > N) throw std::invalid_argument("box_mean: window exceeds the torus");
    if (g.dim == 1) {
        std::vector<double> P(static_cast<size_t>(N) + 1, 0.0);
        for (long t = 0; t < N; ++t) P[static_cast<size_t>(t + 1)] = P[static_cast<size_t>(t)] + absf[static_cast<size_t>(t)];
        std::vector<double> out(static_cast<size_t>(N));
        for (long j = 0; j < N; ++j)
            out[static_cast<size_t>(j)] = window_sum(P, j - m, w, N) / static_cast<double>(w);
        return out;
    }
    std::vector<double> rows(absf.size());
    std::vector<double> P(static_cast<size_t>(N) + 1, 0.0);
    for (long i = 0; i < N; ++i) {
        const double* src = absf.data() + i * N;
        for (long t = 0; t < N; ++t) P[static_cast<size_t>(t + 1)] = P[static_cast<size_t>(t)] + src[t];
        for (long j = 0; j < N; ++j)
            rows[static_cast<size_t>(i * N + j)] = window_sum(P, j - m, w, N);
    }
    std::vector<double> out(absf.size());
    std::vector<double> col(static_cast<size_t>(N));
    const double denom = static_cast<double>(w) * static_cast<double>(w);
    for (long j = 0; j < N; ++j) {
        for (long t = 0; t < N; ++t) col[static_cast<size_t>(t)] = rows[static_cast<size_t>(t * N + j)];
        for (long t = 0; t < N; ++t) P[static_cast<size_t>(t + 1)] = P[static_cast<size_t>(t)] + col[static_cast<size_t>(t)];
        for (long i = 0; i < N; ++i)
            out[static_cast<size_t>(i * N + j)] = window_sum(P, i - m, w, N) / denom;
    }
    return out;
}

// Values of |f| in the centered window at one node, row-major order.
std::vector<double> gather_window(const GridField& f, std::int64_t index, long m) {
    const Grid& g = f.grid;
    const long N = g.resolution;
    std::vector<double> vals;
    if (g.dim == 1) {
        vals.reserve(static_cast<size_t>(2 * m + 1));
        for (long d = -m; d <= m; ++d)
            vals.push_back(std::abs(f.values[static_cast<size_t>(mod_idx(index + d, N))]));
        return vals;
    }
    const auto [i1, i2] = g.unflatten(index);
    vals.reserve(static_cast<size_t>((2 * m + 1) * (2 * m + 1)));
    for (long d1 = -m; d1 <= m; ++d1) {
        long r = mod_idx(i1 + d1, N);
        for (long d2 = -m; d2 <= m; ++d2)
            vals.push_back(std::abs(f.values[static_cast<size_t>(r * N + mod_idx(i2 + d2, N))]));
    }
    return vals;
}

}  // namespace

double hl_maximal(const GridField& f, std::int64_t index, const MaximalConfig& config) {
    config.validate(f.grid);
    if (index < 0 || index >= f.grid.point_count())
        throw std::invalid_argument("hl_maximal: node index out of range");
    double best = 0.0;
    for (long m : distinct_halfwidths(config, f.grid)) {
        std::vector<double> w = gather_window(f, index, m);
        double acc = 0.0;
        for (double v : w) acc += v;
        best = std::max(best, acc / static_cast<double>(w.size()));
    }
    return best;
}

GridField hl_maximal_field(const GridField& f, const MaximalConfig& config) {
    config.validate(f.grid);
    std::vector<double> absf = abs_values(f);
    GridField out;
    out.grid = f.grid;
    out.real_valued = true;
    out.values.assign(absf.size(), cplx(0.0, 0.0));
    for (long m : distinct_halfwidths(config, f.grid)) {
        std::vector<double> mean = box_mean(absf, f.grid, m);
        for (size_t i = 0; i < mean.size(); ++i)
            out.values[i] = cplx(std::max(out.values[i].real(), mean[i]), 0.0);
    }
    return out;
}

double iterated_maximal(const GridField& f, std::int64_t index,
                        const MaximalConfig& config) {
    return hl_maximal(hl_maximal_field(f, config), index, config);
}

GridField iterated_maximal_field(const GridField& f, const MaximalConfig& config) {
    return hl_maximal_field(hl_maximal_field(f, config), config);
}

//------------------------------------------------------------------- L logL

double llogl_norm(const std::vector<double>& cell_values) {
    const size_t n = cell_values.size();
    if (n == 0) return 0.0;
    std::vector<double> a(n);
    for (size_t i = 0; i < n; ++i) a[i] = std::abs(cell_values[i]);
    std::sort(a.begin(), a.end(), std::greater<double>());
    if (a[0] == 0.0) return 0.0;
    // Prefix sums of a and a*log(a) over the descending order; entries with
    // a_i > lambda are exactly a prefix.
    std::vector<double> S1(n + 1, 0.0), SL(n + 1, 0.0);
    for (size_t i = 0; i < n; ++i) {
        S1[i + 1] = S1[i] + a[i];
        SL[i + 1] = SL[i] + (a[i] > 0.0 ? a[i] * std::log(a[i]) : 0.0);
    }
    const double nn = static_cast<double>(n);
    auto phi = [&](double lam) {
        // count of a_i > lam (descending order => prefix length)
        size_t j = static_cast<size_t>(
            std::upper_bound(a.begin(), a.end(), lam, std::greater<double>()) - a.begin());
        return (S1[n] + SL[j] - S1[j] * std::log(lam)) / (nn * lam);
    };
    double lo = S1[n] / nn;  // phi(avg) >= 1
    double hi = a[0];        // phi(max) <= 1
    if (lo >= hi) return hi;
    while (hi - lo > 1e-12 * hi) {
        double mid = 0.5 * (lo + hi);
        if (phi(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double llogl_norm_field(const GridField& f) {
    return llogl_norm(abs_values(f));
}

double llogl_maximal(const GridField& f, std::int64_t index,
                     const MaximalConfig& config) {
    config.validate(f.grid);
    if (index < 0 || index >= f.grid.point_count())
        throw std::invalid_argument("llogl_maximal: node index out of range");
    double best = 0.0;
    for (long m : distinct_halfwidths(config, f.grid))
        best = std::max(best, llogl_norm(gather_window(f, index, m)));
    return best;
}

}  // namespace czsi
