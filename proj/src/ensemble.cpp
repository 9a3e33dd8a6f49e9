#include "ramsq/ensemble.hpp"

#include "ramsq/counter_rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace ramsq {
namespace {

constexpr std::size_t kBlockSize = 1024;

// Welford running moments; merge() is Chan's pairwise update.
struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double n_a = static_cast<double>(count);
        const double n_b = static_cast<double>(other.count);
        const double n = n_a + n_b;
        const double delta = other.mean - mean;
        mean += delta * n_b / n;
        m2 += other.m2 + delta * delta * n_a * n_b / n;
        count += other.count;
    }

    McEstimate estimate() const {
        McEstimate est;
        est.mean = mean;
        est.realizations = count;
        if (count >= 2) {
            const double variance = std::max(m2, 0.0) / static_cast<double>(count - 1);
            est.std_error = std::sqrt(variance / static_cast<double>(count));
        }
        return est;
    }
};

// Variance of cos(phi) x - sin(phi) p for one mode.
double rotated_var_x(const ModeMoments& m, double phase) {
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    return c * c * m.var_x + s * s * m.var_p - 2.0 * c * s * m.cov_xp;
}

// Variance of sin(phi) x + cos(phi) p for one mode.
double rotated_var_p(const ModeMoments& m, double phase) {
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    return s * s * m.var_x + c * c * m.var_p + 2.0 * c * s * m.cov_xp;
}

// Reflection and spontaneous-emission contributions; all those inputs are
// vacuum.
double ancilla_x(const DisorderRealization& real) {
    const auto vac = ModeMoments::vacuum();
    double sum = 0.0;
    for (std::size_t i = 0; i < real.refl_mags.size(); ++i) {
        sum += real.refl_mags[i] * rotated_var_x(vac, real.refl_phases[i]);
    }
    return sum + real.spont_mag * rotated_var_x(vac, real.spont_phase);
}

double ancilla_p(const DisorderRealization& real) {
    const auto vac = ModeMoments::vacuum();
    double sum = 0.0;
    for (std::size_t i = 0; i < real.refl_mags.size(); ++i) {
        sum += real.refl_mags[i] * rotated_var_p(vac, real.refl_phases[i]);
    }
    return sum + real.spont_mag * rotated_var_p(vac, real.spont_phase);
}

void fill_normalized_exponential(DrawStream& rng, double total, std::vector<double>& out) {
    double sum = 0.0;
    for (auto& v : out) {
        v = rng.exponential();
        sum += v;
    }
    if (sum <= 0.0) {
        std::fill(out.begin(), out.end(), total / static_cast<double>(out.size()));
        return;
    }
    for (auto& v : out) v *= total / sum;
}

void sample_into(const EnsembleCoefficients& coef, const SamplerConfig& config,
                 std::uint64_t draw_index, DisorderRealization& real) {
    const auto n = static_cast<std::size_t>(coef.channels);
    real.trans_mags.resize(n);
    real.trans_phases.resize(n);
    real.refl_mags.resize(n);
    real.refl_phases.resize(n);

    DrawStream rng(config.seed, draw_index);
    for (auto& p : real.trans_phases) p = rng.phase();
    for (auto& p : real.refl_phases) p = rng.phase();
    real.spont_phase = rng.phase();

    switch (config.mode) {
    case SamplerMode::MeanMagnitudes:
        std::fill(real.trans_mags.begin(), real.trans_mags.end(),
                  coef.per_channel_transmission());
        std::fill(real.refl_mags.begin(), real.refl_mags.end(), coef.per_channel_reflection());
        break;
    case SamplerMode::ExponentialMagnitudes:
        // Normalizing i.i.d. exponentials to a fixed group total keeps every
        // per-channel mean at total/N and the flux identity exact.
        fill_normalized_exponential(rng, coef.t_bar, real.trans_mags);
        fill_normalized_exponential(rng, coef.r_bar, real.refl_mags);
        break;
    }
    real.spont_mag = coef.v_bar;
}

void validate_config(const SamplerConfig& config) {
    if (config.realizations < 1) {
        throw ParameterError(ParameterError::Kind::DomainError,
                             "DomainError: realizations must be >= 1");
    }
}

// Accumulates one Moments per requested quantity over all draws.
template <std::size_t Q>
std::array<Moments, Q> run_blocks(const EnsembleCoefficients& coef, const InputState& input,
                                  const SamplerConfig& config,
                                  const std::array<Quantity, Q>& which, unsigned workers) {
    const std::size_t total = config.realizations;
    const std::size_t n_blocks = (total + kBlockSize - 1) / kBlockSize;
    std::vector<std::array<Moments, Q>> blocks(n_blocks);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        DisorderRealization real;
        for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
            const std::size_t begin = b * kBlockSize;
            const std::size_t end = std::min(total, begin + kBlockSize);
            auto& acc = blocks[b];
            for (std::size_t d = begin; d < end; ++d) {
                sample_into(coef, config, d, real);
                for (std::size_t q = 0; q < Q; ++q) {
                    acc[q].add(variance_single(real, input, which[q]));
                }
            }
        }
    };

    if (workers == 0) workers = default_worker_count();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_blocks));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    std::array<Moments, Q> result{};
    for (const auto& block : blocks) {
        for (std::size_t q = 0; q < Q; ++q) result[q].merge(block[q]);
    }
    return result;
}

}  // namespace

const char* to_string(SamplerMode mode) {
    return mode == SamplerMode::MeanMagnitudes ? "mean" : "exponential";
}

const char* to_string(Quantity q) {
    switch (q) {
    case Quantity::XWfs: return "x_wfs";
    case Quantity::XNoWfs: return "x_nowfs";
    case Quantity::PWfs: return "p_wfs";
    case Quantity::PNoWfs: return "p_nowfs";
    }
    return "unknown";
}

double McEstimate::sigma_distance(double reference, double exact_tolerance) const {
    const double diff = std::abs(mean - reference);
    // Estimators that are exact per draw carry a rounding-level spread, which
    // would turn a 1e-16 discrepancy into thousands of sigma.
    if (diff <= exact_tolerance * std::max(1.0, std::abs(reference))) return 0.0;
    if (std_error > 0.0) return diff / std_error;
    return std::numeric_limits<double>::infinity();
}

double DisorderRealization::flux_residual() const {
    const double t = std::accumulate(trans_mags.begin(), trans_mags.end(), 0.0);
    const double r = std::accumulate(refl_mags.begin(), refl_mags.end(), 0.0);
    return t + r - spont_mag - 1.0;
}

double analytic_value(const EnsembleCoefficients& coef, const InputState& input, Quantity q) {
    switch (q) {
    case Quantity::XWfs: return variance_x_wfs(coef, input);
    case Quantity::XNoWfs: return variance_x_nowfs(coef, input);
    case Quantity::PWfs: return variance_p_wfs(coef, input);
    case Quantity::PNoWfs: return variance_p_nowfs(coef, input);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

DisorderRealization sample_realization(const MediumSpec& spec, const SamplerConfig& config,
                                       std::uint64_t draw_index) {
    return sample_realization(mean_coefficients(spec), config, draw_index);
}

DisorderRealization sample_realization(const EnsembleCoefficients& coef,
                                       const SamplerConfig& config, std::uint64_t draw_index) {
    DisorderRealization real;
    sample_into(coef, config, draw_index, real);
    return real;
}

double variance_x_wfs_single(const DisorderRealization& real, const InputState& input) {
    // Shaping removes the transmission phases, so each left-hand input
    // contributes its unrotated x variance.
    const auto in = ModeMoments::squeezed(input);
    double sum = 0.0;
    for (double t : real.trans_mags) sum += t * in.var_x;
    return sum + ancilla_x(real);
}

double variance_x_nowfs_single(const DisorderRealization& real, const InputState& input) {
    const auto in = ModeMoments::squeezed(input);
    double sum = 0.0;
    for (std::size_t i = 0; i < real.trans_mags.size(); ++i) {
        sum += real.trans_mags[i] * rotated_var_x(in, real.trans_phases[i]);
    }
    return sum + ancilla_x(real);
}

double variance_p_single(const DisorderRealization& real, const InputState& input,
                         Shaping shaping) {
    const auto in = ModeMoments::squeezed(input);
    double sum = 0.0;
    for (std::size_t i = 0; i < real.trans_mags.size(); ++i) {
        sum += real.trans_mags[i] * (shaping == Shaping::Shaped
                                         ? in.var_p
                                         : rotated_var_p(in, real.trans_phases[i]));
    }
    return sum + ancilla_p(real);
}

double variance_single(const DisorderRealization& real, const InputState& input, Quantity q) {
    switch (q) {
    case Quantity::XWfs: return variance_x_wfs_single(real, input);
    case Quantity::XNoWfs: return variance_x_nowfs_single(real, input);
    case Quantity::PWfs: return variance_p_single(real, input, Shaping::Shaped);
    case Quantity::PNoWfs: return variance_p_single(real, input, Shaping::Unshaped);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

unsigned default_worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RAMSQ_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) hw = std::min(hw, static_cast<unsigned>(cap));
    }
    return hw;
}

McEstimate mc_average(const MediumSpec& spec, const InputState& input,
                      const SamplerConfig& config, Quantity which, unsigned workers) {
    validate_input(input);
    validate_config(config);
    const auto coef = mean_coefficients(spec);
    const std::array<Quantity, 1> one{which};
    return run_blocks(coef, input, config, one, workers)[0].estimate();
}

std::array<McEstimate, 4> mc_average_all(const MediumSpec& spec, const InputState& input,
                                         const SamplerConfig& config, unsigned workers) {
    validate_input(input);
    validate_config(config);
    const auto coef = mean_coefficients(spec);
    const auto moments = run_blocks(coef, input, config, kAllQuantities, workers);
    std::array<McEstimate, 4> out;
    for (std::size_t q = 0; q < out.size(); ++q) out[q] = moments[q].estimate();
    return out;
}

std::pair<double, double> mean_amplitude_check(const DisorderRealization& real,
                                               const InputState& input) {
    const double mean_x = 2.0 * input.amplitude.real();
    const double mean_p = 2.0 * input.amplitude.imag();
    double x = 0.0;
    double p = 0.0;
    for (double t : real.trans_mags) {
        const double amp = std::sqrt(t);
        x += amp * mean_x;
        p += amp * mean_p;
    }
    return {x, p};
}

}  // namespace ramsq
