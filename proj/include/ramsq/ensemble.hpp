// Monte Carlo disorder-averaging oracle.
//
// Each draw produces one realization of the channel coefficients seen by an
// output mode b: N transmission magnitudes/phases, N reflection
// magnitudes/phases, and one aggregated spontaneous-emission weight with its
// phase (all spontaneous modes are vacuum, so only their summed weight
// enters any variance). Per-realization variances are evaluated from the
// rotated-quadrature second moments of each input mode, then averaged.
//
// Reductions run over fixed-size blocks of consecutive draws and are merged
// in block order, so estimates are bit-identical for any worker count.

#pragma once

#include "ramsq/analytic.hpp"
#include "ramsq/core.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ramsq {

enum class SamplerMode {
    // Magnitudes fixed at their ensemble means; only phases are random.
    MeanMagnitudes,
    // Per-channel magnitudes exponential (speckle intensity statistics),
    // normalized within each group to the ensemble-mean total.
    ExponentialMagnitudes,
};

const char* to_string(SamplerMode mode);

struct SamplerConfig {
    SamplerMode mode = SamplerMode::MeanMagnitudes;
    std::size_t realizations = 10000;
    std::uint64_t seed = 42;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample std / sqrt(K)
    std::size_t realizations = 0;

    /// |mean - reference| in units of std_error; +inf if std_error is zero
    /// and the values differ by more than `exact_tolerance`.
    double sigma_distance(double reference, double exact_tolerance = 1e-12) const;
};

struct DisorderRealization {
    std::vector<double> trans_mags;
    std::vector<double> trans_phases;
    std::vector<double> refl_mags;
    std::vector<double> refl_phases;
    double spont_mag = 0.0;
    double spont_phase = 0.0;

    double flux_residual() const;
};

/// Second moments of one input mode's quadratures.
struct ModeMoments {
    double var_x = 1.0;
    double var_p = 1.0;
    double cov_xp = 0.0;

    static ModeMoments vacuum() { return {}; }
    static ModeMoments squeezed(const InputState& input) {
        return {input.var_x(), input.var_p(), 0.0};
    }
};

enum class Quantity { XWfs, XNoWfs, PWfs, PNoWfs };
inline constexpr std::array<Quantity, 4> kAllQuantities{
    Quantity::XWfs, Quantity::XNoWfs, Quantity::PWfs, Quantity::PNoWfs};

const char* to_string(Quantity q);

/// Closed-form value of `q` for comparison with Monte Carlo estimates.
double analytic_value(const EnsembleCoefficients& coef, const InputState& input, Quantity q);

DisorderRealization sample_realization(const MediumSpec& spec, const SamplerConfig& config,
                                       std::uint64_t draw_index);

// Variant taking precomputed coefficients; avoids re-validating per draw.
DisorderRealization sample_realization(const EnsembleCoefficients& coef,
                                       const SamplerConfig& config, std::uint64_t draw_index);

double variance_x_wfs_single(const DisorderRealization& real, const InputState& input);
double variance_x_nowfs_single(const DisorderRealization& real, const InputState& input);
double variance_p_single(const DisorderRealization& real, const InputState& input,
                         Shaping shaping);
double variance_single(const DisorderRealization& real, const InputState& input, Quantity q);

/// Worker count from RAMSQ_THREADS, else hardware concurrency (at least 1).
unsigned default_worker_count();

McEstimate mc_average(const MediumSpec& spec, const InputState& input,
                      const SamplerConfig& config, Quantity which, unsigned workers = 0);

/// All four quantities from one shared set of draws; element i matches
/// mc_average(..., kAllQuantities[i]) bit for bit.
std::array<McEstimate, 4> mc_average_all(const MediumSpec& spec, const InputState& input,
                                         const SamplerConfig& config, unsigned workers = 0);

/// Mean output quadratures (<x_b^w>, <p_b^w>) under shaping. The input mean
/// is taken as <x> = 2 Re(alpha), <p> = 2 Im(alpha): the displacement acts
/// after the squeezer, so r does not shift the mean.
std::pair<double, double> mean_amplitude_check(const DisorderRealization& real,
                                               const InputState& input);

}  // namespace ramsq
