// Closed-form ensemble averages for squeezed light through a RAM.
//
// With theta = l/La and phi = L/La the channel-summed mean coefficients are
//
//   T = sin(theta) / sin(phi)
//   R = sin(phi - theta) / sin(phi)
//   V = T + R - 1
//
// and every averaged quadrature variance is affine in (T, V):
//
//   x, shaped     2V + 1 - T (1 - e^{-2r})
//   x, unshaped   2V + 1 + T (cosh 2r - 1)
//   p, shaped     2V + 1 + T (e^{2r} - 1)
//   p, unshaped   same as x, unshaped
//
// "Shaped" means the incident wavefront is phase-conjugated so that every
// transmission coefficient t is replaced by |t|.

#pragma once

#include "ramsq/core.hpp"

namespace ramsq {

enum class Shaping { Shaped, Unshaped };

struct VarianceReport {
    double x_wfs = 0.0;
    double x_nowfs = 0.0;
    double p_wfs = 0.0;
    double p_nowfs = 0.0;
    double coherent_baseline = 0.0;
    double snl = kShotNoiseLevel;

    bool x_wfs_below_snl() const { return x_wfs < snl; }
};

/// Validates `spec` and returns its ensemble-mean coefficients. A zero gain
/// ratio is routed to mean_coefficients_linear instead of evaluating 0/0.
EnsembleCoefficients mean_coefficients(const MediumSpec& spec);

/// Passive-medium coefficients T = l/L, R = 1 - l/L, V = 0 (gain ignored).
EnsembleCoefficients mean_coefficients_linear(const MediumSpec& spec);

double variance_x_wfs(const EnsembleCoefficients& coef, const InputState& input);
double variance_x_nowfs(const EnsembleCoefficients& coef, const InputState& input);
double variance_p_wfs(const EnsembleCoefficients& coef, const InputState& input);
// Same value as variance_x_nowfs: random transmission phases mix both
// quadratures equally.
double variance_p_nowfs(const EnsembleCoefficients& coef, const InputState& input);

/// x_nowfs - x_wfs = T sinh 2r, the noise removed by shaping.
double wfs_gain(const EnsembleCoefficients& coef, const InputState& input);

/// x-quadrature variance divided by the coherent-input baseline 2V + 1.
double rescaled_fluctuation(const EnsembleCoefficients& coef, const InputState& input,
                            Shaping shaping);

VarianceReport full_report(const MediumSpec& spec, const InputState& input);

}  // namespace ramsq
