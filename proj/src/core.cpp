#include "ramsq/core.hpp"

#include <cmath>
#include <sstream>

namespace ramsq {

const char* to_string(ParameterError::Kind kind) {
    switch (kind) {
    case ParameterError::Kind::GainAboveThreshold: return "GainAboveThreshold";
    case ParameterError::Kind::ThinMedium: return "ThinMedium";
    case ParameterError::Kind::BadChannels: return "BadChannels";
    case ParameterError::Kind::DomainError: return "DomainError";
    }
    return "Unknown";
}

double InputState::var_x() const { return std::exp(-2.0 * squeeze_r); }
double InputState::var_p() const { return std::exp(2.0 * squeeze_r); }

MediumSpec validate_medium(const MediumSpec& spec) {
    using Kind = ParameterError::Kind;
    if (!std::isfinite(spec.thickness_ratio) || !std::isfinite(spec.gain_ratio)) {
        throw ParameterError(Kind::DomainError, "medium parameters must be finite");
    }
    if (spec.thickness_ratio <= 1.0) {
        std::ostringstream os;
        os << "ThinMedium: L/l = " << spec.thickness_ratio
           << " must exceed 1 (diffusive regime)";
        throw ParameterError(Kind::ThinMedium, os.str());
    }
    if (spec.gain_ratio < 0.0) {
        std::ostringstream os;
        os << "DomainError: L/La = " << spec.gain_ratio << " must be >= 0";
        throw ParameterError(Kind::DomainError, os.str());
    }
    if (spec.gain_ratio >= kLaserThreshold) {
        std::ostringstream os;
        os << "GainAboveThreshold: L/La = " << spec.gain_ratio
           << " must stay below the laser threshold pi";
        throw ParameterError(Kind::GainAboveThreshold, os.str());
    }
    if (spec.channels < 1) {
        std::ostringstream os;
        os << "BadChannels: N = " << spec.channels << " must be >= 1";
        throw ParameterError(Kind::BadChannels, os.str());
    }
    return spec;
}

void validate_input(const InputState& input) {
    if (!std::isfinite(input.squeeze_r) || input.squeeze_r < 0.0) {
        throw ParameterError(ParameterError::Kind::DomainError,
                             "DomainError: squeezing parameter r must be finite and >= 0");
    }
}

double diffusion_from_light_speed(double light_speed, double mfp) {
    if (!(light_speed > 0.0) || !(mfp > 0.0)) {
        throw ParameterError(ParameterError::Kind::DomainError,
                             "DomainError: light speed and mean free path must be positive");
    }
    return light_speed * mfp / 3.0;
}

std::pair<double, double> units_to_spec(const PhysicalUnits& units) {
    if (!(units.diffusion_const > 0.0) || !(units.amp_time > 0.0) || !(units.mfp > 0.0) ||
        !(units.thickness > 0.0) || !(units.light_speed > 0.0)) {
        throw ParameterError(ParameterError::Kind::DomainError,
                             "DomainError: physical units must be strictly positive");
    }
    const double amp_length = std::sqrt(units.diffusion_const * units.amp_time);
    return {units.thickness / units.mfp, units.thickness / amp_length};
}

}  // namespace ramsq
