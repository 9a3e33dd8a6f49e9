#include "ramsq/analytic.hpp"

#include <cmath>

namespace ramsq {

EnsembleCoefficients mean_coefficients(const MediumSpec& spec) {
    validate_medium(spec);
    if (spec.is_linear()) {
        return mean_coefficients_linear(spec);
    }
    const double phi = spec.gain_ratio;
    const double theta = spec.mfp_gain_ratio();
    const double denom = std::sin(phi);

    EnsembleCoefficients coef;
    coef.channels = spec.channels;
    coef.t_bar = std::sin(theta) / denom;
    coef.r_bar = std::sin(phi - theta) / denom;
    // T + R - 1 rewritten with sum-to-product identities:
    //   V = 2 sin((phi - theta)/2) sin(theta/2) / cos(phi/2)
    // which stays non-negative and accurate as phi -> 0.
    coef.v_bar = 2.0 * std::sin(0.5 * (phi - theta)) * std::sin(0.5 * theta) /
                 std::cos(0.5 * phi);
    return coef;
}

EnsembleCoefficients mean_coefficients_linear(const MediumSpec& spec) {
    EnsembleCoefficients coef;
    coef.channels = spec.channels;
    coef.t_bar = 1.0 / spec.thickness_ratio;
    coef.r_bar = 1.0 - coef.t_bar;
    coef.v_bar = 0.0;
    return coef;
}

double variance_x_wfs(const EnsembleCoefficients& coef, const InputState& input) {
    // 1 - e^{-2r} without cancellation for small r
    const double squeezed_loss = -std::expm1(-2.0 * input.squeeze_r);
    return coef.coherent_baseline() - coef.t_bar * squeezed_loss;
}

double variance_x_nowfs(const EnsembleCoefficients& coef, const InputState& input) {
    // cosh 2r - 1 = 2 sinh^2 r
    const double s = std::sinh(input.squeeze_r);
    return coef.coherent_baseline() + coef.t_bar * 2.0 * s * s;
}

double variance_p_wfs(const EnsembleCoefficients& coef, const InputState& input) {
    return coef.coherent_baseline() + coef.t_bar * std::expm1(2.0 * input.squeeze_r);
}

double variance_p_nowfs(const EnsembleCoefficients& coef, const InputState& input) {
    const double s = std::sinh(input.squeeze_r);
    return coef.coherent_baseline() + coef.t_bar * 2.0 * s * s;
}

double wfs_gain(const EnsembleCoefficients& coef, const InputState& input) {
    return coef.t_bar * std::sinh(2.0 * input.squeeze_r);
}

double rescaled_fluctuation(const EnsembleCoefficients& coef, const InputState& input,
                            Shaping shaping) {
    const double numerator = shaping == Shaping::Shaped ? variance_x_wfs(coef, input)
                                                        : variance_x_nowfs(coef, input);
    return numerator / coef.coherent_baseline();
}

VarianceReport full_report(const MediumSpec& spec, const InputState& input) {
    validate_input(input);
    const auto coef = mean_coefficients(spec);
    VarianceReport report;
    report.x_wfs = variance_x_wfs(coef, input);
    report.x_nowfs = variance_x_nowfs(coef, input);
    report.p_wfs = variance_p_wfs(coef, input);
    report.p_nowfs = variance_p_nowfs(coef, input);
    report.coherent_baseline = coef.coherent_baseline();
    return report;
}

}  // namespace ramsq
