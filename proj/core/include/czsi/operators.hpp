//==============================================================================
// operators.hpp — three routes to a singular integral and the maximal layer.
//
//   apply_full        spectral multiplier application (principal value limit)
//   apply_truncated   literal midpoint-rule sum over |y| > eps (per point)
//   apply_truncated_field
//                     the same sums for every point at once via an FFT
//                     circular convolution (identical terms, reordered)
//   apply_maximal     sup over a truncation ladder of |T^eps f|
//   hl_maximal        centered-cube Hardy-Littlewood maximal function
//   iterated_maximal  M(Mf)
//   llogl_norm        Luxemburg functional for t + t log+ t, by bisection
//   llogl_maximal     sup over centered cubes of the local Luxemburg norm
//
// Truncations use the midpoint rule over grid cells: the cell with center y
// contributes K(y) f(x - y) h^n iff |y| > eps, distances measured after
// periodic wrap of the displacement into [-L/2, L/2)^n.  Cube averages use
// the cells whose centers satisfy |y - x|_inf < r, again with wrap.
//==============================================================================
#pragma once

#include <czsi/grid.hpp>
#include <czsi/kernels.hpp>

#include <functional>
#include <vector>

namespace czsi {

struct TruncationConfig {
    std::vector<double> epsilon_list;  // strictly increasing, each >= 2 cells

    /// 2h * {1, 2, 4, ...} capped at L/4.
    static TruncationConfig dyadic(const Grid& g);
    void validate(const Grid& g) const;
};

struct MaximalConfig {
    std::vector<double> radius_list;  // cube half-widths in [h, L/4], increasing

    /// h * {1, 2, 4, ...} capped at L/4.
    static MaximalConfig dyadic(const Grid& g);
    void validate(const Grid& g) const;
};

//--------------------------------------------------------------------- spectral

/// dft_inverse(m(xi) * f_hat(xi)) with the DC coefficient mapped to 0.
GridField apply_full(const KernelSpec& spec, const GridField& f);

/// Generic multiplier application: coefficient at frequency xi is scaled by
/// fn(xi); DC -> 0.  `real_output` marks the result as real-valued (caller
/// asserts the multiplier is conjugate-symmetric).
GridField apply_symbol_map(const GridField& f,
                           const std::function<cplx(const std::array<double, 2>&)>& fn,
                           bool real_output);

//-------------------------------------------------------------------- truncated

/// Midpoint-rule T^eps f at one node (flat index).  Real fields only.
double apply_truncated(const KernelSpec& spec, const GridField& f,
                       std::int64_t index, double eps);

/// T^eps f at every node via FFT circular convolution; term-for-term equal to
/// apply_truncated up to floating-point reassociation.
GridField apply_truncated_field(const KernelSpec& spec, const GridField& f,
                                double eps);

/// max over the ladder of |T^eps f| at one node.
double apply_maximal(const KernelSpec& spec, const GridField& f,
                     std::int64_t index, const TruncationConfig& config);

/// The same sweep for every node at once.
GridField apply_maximal_field(const KernelSpec& spec, const GridField& f,
                              const TruncationConfig& config);

//---------------------------------------------------------------------- maximal

/// Centered-cube maximal function of |f| at one node.
double hl_maximal(const GridField& f, std::int64_t index,
                  const MaximalConfig& config);

GridField hl_maximal_field(const GridField& f, const MaximalConfig& config);

/// M(Mf): the full Mf field is formed first, then averaged again.
double iterated_maximal(const GridField& f, std::int64_t index,
                        const MaximalConfig& config);

GridField iterated_maximal_field(const GridField& f, const MaximalConfig& config);

//----------------------------------------------------------------------- L logL

/// Luxemburg norm of the sample set under t + t log+ t: the infimum of
/// lambda > 0 with avg(|g|/lambda + (|g|/lambda) log+(|g|/lambda)) <= 1,
/// located by bisection; the functional at the returned lambda lies in
/// [1 - 1e-8, 1].  Returns 0 for an all-zero set.
double llogl_norm(const std::vector<double>& cell_values);

/// Whole-torus Luxemburg norm of a field.
double llogl_norm_field(const GridField& f);

/// sup over centered cubes (config's radius ladder) of the local Luxemburg
/// norm at one node.
double llogl_maximal(const GridField& f, std::int64_t index,
                     const MaximalConfig& config);

}  // namespace czsi
