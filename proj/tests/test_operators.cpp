#include <doctest.h>

#include "czsi/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace czsi;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs_diff(const GridField& a, const GridField& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

// Literal re-implementation of the cube-average maximal function, used as a
// cross-check for the production sweep.  Offsets d run over the whole torus;
// a cell participates iff its wrapped center displacement satisfies
// |d*h|_inf < r.
GridField brute_hl(const GridField& f, const MaximalConfig& cfg) {
  const Grid& g = f.grid;
  const int n = g.resolution;
  GridField out{g, std::vector<cplx>(f.values.size(), cplx{0, 0}), true};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double best = 0.0;
      for (double r : cfg.radius_list) {
        double acc = 0.0;
        long cnt = 0;
        for (int da = -n / 2; da < n / 2; ++da) {
          for (int db = -n / 2; db < n / 2; ++db) {
            if (std::abs(da) * g.cell() >= r || std::abs(db) * g.cell() >= r) continue;
            const int ia = ((a + da) % n + n) % n;
            const int ib = ((b + db) % n + n) % n;
            acc += std::abs(f.real_at(g.flatten(ia, ib)));
            ++cnt;
          }
        }
        if (cnt > 0) best = std::max(best, acc / static_cast<double>(cnt));
      }
      out.values[static_cast<size_t>(g.flatten(a, b))] = cplx{best, 0};
    }
  }
  return out;
}
}  // namespace

TEST_SUITE("operators") {

TEST_CASE("Hilbert transform squares to minus the identity on mean-free input") {
  Grid g = Grid::make(1, 64.0, 1024);
  GridField f = sample(BandLimitedDesc{7, 12, 1.0}, g);  // zero-mean by construction
  GridField hhf = apply_full(KernelSpec::hilbert(), apply_full(KernelSpec::hilbert(), f));
  double err = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i)
    err = std::max(err, std::abs(hhf.values[i] + f.values[i]));
  CHECK(err < 1e-10 * linf_norm(f));
}

TEST_CASE("truncated transform of an indicator matches the log oracle") {
  // T^eps chi_[0,1) at x = -1 under the (1/pi)/x kernel: every contributing
  // y lies in (-2, -1], all beyond eps = 1/2, so the value is
  // (1/pi) int_{-2}^{-1} dy/y = -log(2)/pi.  Midpoint-rule edge error is
  // (h/2)*(1 - 1/2)/pi ~ 3.1e-4 at h = 1/256.
  Grid g = Grid::make(1, 64.0, 16384);
  GridField f = sample(IntervalDesc{0.0, 1.0, 1.0}, g);
  std::int64_t idx = -1;
  for (std::int64_t i = 0; i < g.point_count(); ++i)
    if (g.node(i)[0] == -1.0) idx = i;
  REQUIRE(idx >= 0);
  const double got = apply_truncated(KernelSpec::hilbert(), f, idx, 0.5);
  CHECK(std::abs(got - (-std::log(2.0) / kPi)) < 1e-3);
}

TEST_CASE("field-wide truncation agrees with the per-point sum") {
  Grid g = Grid::make(2, 8.0, 64);
  GridField f = sample(BandLimitedDesc{3, 5, 1.0}, g);
  KernelSpec k = KernelSpec::lambda_family(Rat(1, 2));
  const double eps = 0.75;
  GridField whole = apply_truncated_field(k, f, eps);
  const double scale = 1.0 + linf_norm(f);
  for (std::int64_t idx : {0L, 77L, 1000L, 2049L, 4095L}) {
    CHECK(std::abs(whole.real_at(idx) - apply_truncated(k, f, idx, eps)) < 1e-10 * scale);
  }
}

TEST_CASE("full application equals a generic multiplier map of the same symbol") {
  Grid g = Grid::make(2, 8.0, 64);
  GridField f = sample(BandLimitedDesc{11, 6, 1.0}, g);
  KernelSpec k = KernelSpec::riesz_first_order_2d(1);
  Symbol s = k.multiplier();
  GridField a = apply_full(k, f);
  GridField b = apply_symbol_map(
      f, [&](const std::array<double, 2>& xi) { return s.eval_xi(xi); }, true);
  CHECK(max_abs_diff(a, b) < 1e-12 * (1.0 + linf_norm(f)));
  CHECK(a.real_valued);
}

TEST_CASE("maximal sweep is the max of the ladder") {
  Grid g = Grid::make(2, 8.0, 64);
  GridField f = sample(GaussianDesc{{0.5, -0.25}, 0.8, 1.0}, g);
  KernelSpec k = KernelSpec::second_order_2d();
  TruncationConfig cfg = TruncationConfig::dyadic(g);
  REQUIRE(cfg.epsilon_list.size() >= 3);
  for (std::int64_t idx : {5L, 600L, 2100L}) {
    double by_hand = 0.0;
    for (double eps : cfg.epsilon_list)
      by_hand = std::max(by_hand, std::abs(apply_truncated(k, f, idx, eps)));
    const double swept = apply_maximal(k, f, idx, cfg);
    CHECK(swept == doctest::Approx(by_hand).epsilon(1e-12));
    for (double eps : cfg.epsilon_list)
      CHECK(swept >= std::abs(apply_truncated(k, f, idx, eps)) - 1e-12);
  }
  GridField mf = apply_maximal_field(k, f, cfg);
  for (std::int64_t idx : {5L, 600L, 2100L})
    CHECK(std::abs(mf.real_at(idx) - apply_maximal(k, f, idx, cfg)) < 1e-10);
}

TEST_CASE("cube maximal function matches a brute-force rewrite") {
  Grid g = Grid::make(2, 4.0, 32);
  GridField f = sample(BandLimitedDesc{9, 4, 1.0}, g);
  MaximalConfig cfg = MaximalConfig::dyadic(g);
  GridField fast = hl_maximal_field(f, cfg);
  GridField slow = brute_hl(f, cfg);
  CHECK(max_abs_diff(fast, slow) < 1e-10);
  for (std::int64_t idx : {0L, 31L, 512L})
    CHECK(std::abs(hl_maximal(f, idx, cfg) - fast.real_at(idx)) < 1e-12);
}

TEST_CASE("maximal function of a constant is the constant") {
  Grid g = Grid::make(1, 16.0, 128);
  GridField f{g, std::vector<cplx>(128, cplx{-3.5, 0}), true};
  MaximalConfig cfg = MaximalConfig::dyadic(g);
  GridField mf = hl_maximal_field(f, cfg);
  for (std::int64_t i = 0; i < g.point_count(); ++i)
    CHECK(mf.real_at(i) == doctest::Approx(3.5).epsilon(1e-14));
}

TEST_CASE("maximal function is sublinear and iterates as M(Mf)") {
  Grid g = Grid::make(2, 4.0, 32);
  GridField a = sample(BandLimitedDesc{1, 4, 1.0}, g);
  GridField b = sample(GaussianDesc{{-1.0, 0.5}, 0.6, 2.0}, g);
  GridField ab{g, std::vector<cplx>(a.values.size()), true};
  for (size_t i = 0; i < ab.values.size(); ++i) ab.values[i] = a.values[i] + b.values[i];
  MaximalConfig cfg = MaximalConfig::dyadic(g);
  GridField ma = hl_maximal_field(a, cfg);
  GridField mb = hl_maximal_field(b, cfg);
  GridField mab = hl_maximal_field(ab, cfg);
  for (std::int64_t i = 0; i < g.point_count(); ++i)
    CHECK(mab.real_at(i) <= ma.real_at(i) + mb.real_at(i) + 1e-12);
  GridField twice = hl_maximal_field(ma, cfg);
  GridField iter = iterated_maximal_field(a, cfg);
  CHECK(max_abs_diff(twice, iter) < 1e-12);
  for (std::int64_t idx : {3L, 700L})
    CHECK(std::abs(iterated_maximal(a, idx, cfg) - iter.real_at(idx)) < 1e-12);
}

TEST_CASE("Luxemburg norm: constants, homogeneity, mean domination") {
  CHECK(llogl_norm(std::vector<double>(64, 3.25)) == 3.25);
  CHECK(std::abs(llogl_norm(std::vector<double>(10, 0.7)) - 0.7) < 1e-10);
  CHECK(llogl_norm({}) == 0.0);
  CHECK(llogl_norm(std::vector<double>(5, 0.0)) == 0.0);

  std::vector<double> v{0.3, -1.7, 2.5, 0.0, 4.0, 1.1, -0.2, 3.3};
  const double base = llogl_norm(v);
  std::vector<double> scaled = v;
  for (double& x : scaled) x *= 3.7;
  CHECK(std::abs(llogl_norm(scaled) - 3.7 * base) < 1e-9 * base);

  double mean_abs = 0.0;
  for (double x : v) mean_abs += std::abs(x);
  mean_abs /= static_cast<double>(v.size());
  CHECK(base >= mean_abs - 1e-12);
}

TEST_CASE("Luxemburg maximal dominates the cube maximal function") {
  Grid g = Grid::make(2, 4.0, 32);
  GridField f = sample(BandLimitedDesc{13, 4, 1.0}, g);
  MaximalConfig cfg = MaximalConfig::dyadic(g);
  for (std::int64_t idx : {0L, 100L, 515L, 1023L})
    CHECK(llogl_maximal(f, idx, cfg) >= hl_maximal(f, idx, cfg) - 1e-9);
}

TEST_CASE("configuration validation") {
  Grid g = Grid::make(2, 8.0, 64);
  TruncationConfig t = TruncationConfig::dyadic(g);
  CHECK_NOTHROW(t.validate(g));
  CHECK(t.epsilon_list.front() >= 2 * g.cell());
  CHECK(t.epsilon_list.back() <= g.side_length / 4 + 1e-12);
  TruncationConfig bad1{{g.cell() * 0.5}};
  CHECK_THROWS_AS(bad1.validate(g), std::invalid_argument);
  TruncationConfig bad2{{1.0, 0.5}};  // not increasing
  CHECK_THROWS_AS(bad2.validate(g), std::invalid_argument);

  MaximalConfig m = MaximalConfig::dyadic(g);
  CHECK_NOTHROW(m.validate(g));
  MaximalConfig bad3{{g.side_length}};  // beyond L/4
  CHECK_THROWS_AS(bad3.validate(g), std::invalid_argument);
  MaximalConfig bad4{{}};
  CHECK_THROWS_AS(bad4.validate(g), std::invalid_argument);
}

}  // TEST_SUITE
