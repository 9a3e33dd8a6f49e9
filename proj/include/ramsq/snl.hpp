// Sub-shot-noise analysis of the shaped x quadrature.
//
// The shaped variance drops below the shot-noise level iff
//
//   sin(theta) (1 + a) + 2 sin(phi - theta) - 2 sin(phi) < 0,
//
// with theta = l/La, phi = L/La and a = e^{-2r} the input squeezed variance.
// At fixed theta this reduces to a quadratic inequality in M = sin(phi),
// giving the closed-form bound phi < arcsin(M+). Along a scan at fixed L/l,
// theta = phi / (L/l) moves with phi, so region boundaries are found by
// bisection of the margin itself and the closed form serves only as a
// fixed-point cross-check.

#pragma once

#include "ramsq/core.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ramsq {

inline constexpr double kBisectionTolerance = 1e-12;
inline constexpr int kBisectionMaxIterations = 200;
// Scans stay this far below the laser threshold.
inline constexpr double kThresholdGuard = 1e-6;

/// Bisection on [lo, hi]. Returns nullopt unless f(lo) and f(hi) have
/// opposite signs (a zero endpoint counts as a root).
template <typename F>
std::optional<double> bisect_root(F&& f, double lo, double hi,
                                  double tol = kBisectionTolerance,
                                  int max_iter = kBisectionMaxIterations) {
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi)) return std::nullopt;
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct SnlThreshold {
    double p = 0.0;       // sin(l/La)
    double m = 0.0;       // (1 - sqrt(1 - p^2)) / p = tan(l / 2La)
    double n = 0.0;       // 1 + e^{-2r}
    double m_plus = 0.0;  // upper root of (m^2+1) M^2 - m n M - (4 - n^2)/4
    double m_minus = 0.0; // lower root; < 0 for r > 0, == 0 at r = 0
    double gain_max = 0.0; // arcsin(m_plus), principal branch
};

/// Left-hand side of the sub-SNL inequality expressed through the squeezed
/// input variance a = e^{-2r}. Evaluated in a cancellation-free product form.
double snl_margin(double thickness_ratio, double gain_ratio, double squeezed_var);

/// Validated margin for (spec, input). Negative iff the shaped x variance is
/// below the shot-noise level. Requires gain_ratio > 0.
double snl_condition(const MediumSpec& spec, const InputState& input);

/// Closed-form threshold at fixed l/La in (0, pi/2).
SnlThreshold threshold_closed_form(double l_over_La, const InputState& input);
/// Same, parameterized by a = e^{-2r} in [0, 1]; a = 0 is the infinite-squeezing limit.
SnlThreshold threshold_closed_form_var(double l_over_La, double squeezed_var);

/// Bisects the margin in L/La with l/La held fixed; bracket (l/La, pi).
std::optional<double> boundary_fixed_mfp_gain(double l_over_La, double squeezed_var);

/// Solves gain = arcsin(M+(gain / thickness_ratio)) by fixed-point iteration.
/// nullopt if the iteration does not converge.
std::optional<double> boundary_fixed_point(double thickness_ratio, double squeezed_var);

struct BoundaryPoint {
    double thickness_ratio = 0.0;
    std::optional<double> gain;             // bisection boundary, if any
    std::optional<double> fixed_point_gain; // closed-form cross-check
    int sign_changes = 0;                   // along the fine gain scan
};

struct RegionScan {
    std::vector<double> thickness_grid;
    std::vector<double> gain_grid;
    double squeezed_var = 1.0;
    // below_snl[i][j] for thickness_grid[i], gain_grid[j]
    std::vector<std::vector<bool>> below_snl;
    std::vector<BoundaryPoint> boundary;
    // Rows where the single-sign-change property failed, or where the
    // closed-form cross-check disagrees with bisection.
    std::vector<std::string> anomalies;
};

/// Sub-SNL matrix over the grids plus one boundary point per thickness.
/// Grids must be ascending; gains must lie in [0, pi - 1e-6].
RegionScan region_scan(std::span<const double> thickness_grid,
                       std::span<const double> gain_grid, const InputState& input);
RegionScan region_scan_var(std::span<const double> thickness_grid,
                           std::span<const double> gain_grid, double squeezed_var);

}  // namespace ramsq
