// Domain types shared by every part of the ramsq library.
//
// A random amplifying medium (RAM) below the laser threshold is described
// only through dimensionless transport ratios:
//
//   thickness_ratio  L/l    thickness in units of the transport mean free path
//   gain_ratio       L/La   thickness in units of the amplification length
//   channels         N      number of transmission channels
//
// gain_ratio == 0 encodes a linear (passive) medium. The ensemble-averaged
// coefficients diverge at gain_ratio == pi, which is the random-laser
// threshold; nothing in this library is evaluated at or above it.
//
// Quadratures follow x = a^dag + a, p = i (a^dag - a), so vacuum has unit
// variance and the shot-noise level is 1.

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace ramsq {

inline constexpr double kLaserThreshold = std::numbers::pi;
inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kLimitTolerance = 1e-6;
inline constexpr double kShotNoiseLevel = 1.0;

/// Parameter-validation failure. kind() tells which bound was violated.
class ParameterError : public std::invalid_argument {
public:
    enum class Kind {
        GainAboveThreshold,
        ThinMedium,
        BadChannels,
        DomainError,
    };

    ParameterError(Kind kind, const std::string& what)
        : std::invalid_argument(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

const char* to_string(ParameterError::Kind kind);

struct MediumSpec {
    double thickness_ratio = 10.0;  // L/l
    double gain_ratio = 0.0;        // L/La
    int channels = 1;               // N

    /// l/La, the amplification phase accumulated over one mean free path.
    double mfp_gain_ratio() const { return gain_ratio / thickness_ratio; }
    bool is_linear() const { return gain_ratio == 0.0; }
};

/// Product input [D(alpha) S(r)|0>]^N on the left-hand modes.
struct InputState {
    double squeeze_r = 0.0;
    // Only the mean output quadratures depend on the displacement; the
    // variances never do.
    std::complex<double> amplitude{0.0, 0.0};

    double var_x() const;  // e^{-2r}
    double var_p() const;  // e^{+2r}
    bool is_coherent() const { return squeeze_r == 0.0; }
};

/// Channel-summed ensemble means T_b, R_b, V_b of one output mode.
struct EnsembleCoefficients {
    double t_bar = 0.0;
    double r_bar = 0.0;
    double v_bar = 0.0;
    int channels = 1;

    double per_channel_transmission() const { return t_bar / channels; }
    double per_channel_reflection() const { return r_bar / channels; }

    /// T + R - V - 1; zero up to rounding for any consistent triple.
    double flux_residual() const { return t_bar + r_bar - v_bar - 1.0; }

    /// Output variance for a coherent-state input, 2V + 1.
    double coherent_baseline() const { return 2.0 * v_bar + 1.0; }
};

struct PhysicalUnits {
    double diffusion_const = 1.0;  // D
    double amp_time = 1.0;         // tau_a
    double mfp = 1.0;              // l
    double thickness = 1.0;        // L
    double light_speed = 1.0;      // c, only used by diffusion_from_light_speed
};

/// Returns `spec` unchanged when it describes a diffusive medium below the
/// laser threshold; throws ParameterError naming the violated bound otherwise.
MediumSpec validate_medium(const MediumSpec& spec);

void validate_input(const InputState& input);

/// D = c l / 3 for a diffusive medium.
double diffusion_from_light_speed(double light_speed, double mfp);

/// Converts raw lengths and times into (L/l, L/La) with La = sqrt(D tau_a).
/// The result is not validated; pass it through validate_medium.
std::pair<double, double> units_to_spec(const PhysicalUnits& units);

}  // namespace ramsq
