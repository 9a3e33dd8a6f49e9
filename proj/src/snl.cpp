#include "ramsq/snl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ramsq {
namespace {

constexpr int kScanSamples = 2048;
constexpr double kFixedPointTolerance = 1e-15;
constexpr int kFixedPointMaxIterations = 2000;
constexpr double kCrossCheckTolerance = 1e-9;

// 2V sin(phi) = 8 sin(phi/2) sin((phi - theta)/2) sin(theta/2), so the
// margin sin(theta)(1 + a) + 2 sin(phi - theta) - 2 sin(phi) equals
// 2V sin(phi) - T sin(phi) (1 - a) without subtracting nearly equal sines.
double margin_from_loss(double thickness_ratio, double gain_ratio, double loss) {
    const double phi = gain_ratio;
    const double theta = phi / thickness_ratio;
    return 8.0 * std::sin(0.5 * phi) * std::sin(0.5 * (phi - theta)) * std::sin(0.5 * theta) -
           std::sin(theta) * loss;
}

void check_squeezed_var(double squeezed_var) {
    if (!(squeezed_var >= 0.0 && squeezed_var <= 1.0)) {
        throw ParameterError(ParameterError::Kind::DomainError,
                             "DomainError: squeezed variance e^{-2r} must lie in [0, 1]");
    }
}

void check_grid(std::span<const double> grid, const char* name) {
    if (grid.empty()) {
        throw ParameterError(ParameterError::Kind::DomainError,
                             std::string("DomainError: empty ") + name + " grid");
    }
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw ParameterError(ParameterError::Kind::DomainError,
                             std::string("DomainError: ") + name + " grid must be ascending");
    }
}

}  // namespace

double snl_margin(double thickness_ratio, double gain_ratio, double squeezed_var) {
    return margin_from_loss(thickness_ratio, gain_ratio, 1.0 - squeezed_var);
}

double snl_condition(const MediumSpec& spec, const InputState& input) {
    validate_medium(spec);
    validate_input(input);
    if (!(spec.gain_ratio > 0.0)) {
        throw ParameterError(ParameterError::Kind::DomainError,
                             "DomainError: the SNL margin needs L/La > 0; use the linear-medium "
                             "variance for L/La = 0");
    }
    return margin_from_loss(spec.thickness_ratio, spec.gain_ratio,
                            -std::expm1(-2.0 * input.squeeze_r));
}

SnlThreshold threshold_closed_form(double l_over_La, const InputState& input) {
    validate_input(input);
    return threshold_closed_form_var(l_over_La, input.var_x());
}

SnlThreshold threshold_closed_form_var(double l_over_La, double squeezed_var) {
    check_squeezed_var(squeezed_var);
    if (!(l_over_La > 0.0 && l_over_La < 0.5 * std::numbers::pi)) {
        std::ostringstream os;
        os << "DomainError: l/La = " << l_over_La << " must lie in (0, pi/2)";
        throw ParameterError(ParameterError::Kind::DomainError, os.str());
    }
    SnlThreshold th;
    th.p = std::sin(l_over_La);
    // (1 - sqrt(1 - p^2)) / p, rationalized
    th.m = th.p / (1.0 + std::sqrt(1.0 - th.p * th.p));
    th.n = 1.0 + squeezed_var;
    const double disc = std::sqrt(4.0 * th.m * th.m - th.n * th.n + 4.0);
    const double denom = 2.0 * (th.m * th.m + 1.0);
    th.m_plus = (th.m * th.n + disc) / denom;
    th.m_minus = (th.m * th.n - disc) / denom;
    th.gain_max = std::asin(std::min(th.m_plus, 1.0));
    return th;
}

std::optional<double> boundary_fixed_mfp_gain(double l_over_La, double squeezed_var) {
    check_squeezed_var(squeezed_var);
    const double loss = 1.0 - squeezed_var;
    // Same product form as margin_from_loss with theta pinned.
    auto margin = [&](double phi) {
        return 8.0 * std::sin(0.5 * phi) * std::sin(0.5 * (phi - l_over_La)) *
                   std::sin(0.5 * l_over_La) -
               std::sin(l_over_La) * loss;
    };
    return bisect_root(margin, l_over_La, std::numbers::pi - kThresholdGuard);
}

std::optional<double> boundary_fixed_point(double thickness_ratio, double squeezed_var) {
    check_squeezed_var(squeezed_var);
    const double n = 1.0 + squeezed_var;
    // theta -> 0 limit of arcsin(M+)
    double gain = std::asin(0.5 * std::sqrt(4.0 - n * n));
    for (int i = 0; i < kFixedPointMaxIterations; ++i) {
        const double theta = gain / thickness_ratio;
        if (!(theta > 0.0 && theta < 0.5 * std::numbers::pi)) return std::nullopt;
        const double next = threshold_closed_form_var(theta, squeezed_var).gain_max;
        if (std::abs(next - gain) <= kFixedPointTolerance * std::max(1.0, gain)) return next;
        gain = next;
    }
    return std::nullopt;
}

RegionScan region_scan(std::span<const double> thickness_grid,
                       std::span<const double> gain_grid, const InputState& input) {
    validate_input(input);
    return region_scan_var(thickness_grid, gain_grid, input.var_x());
}

RegionScan region_scan_var(std::span<const double> thickness_grid,
                           std::span<const double> gain_grid, double squeezed_var) {
    check_squeezed_var(squeezed_var);
    check_grid(thickness_grid, "L/l");
    check_grid(gain_grid, "L/La");
    for (double k : thickness_grid) validate_medium({k, 0.0, 1});
    for (double g : gain_grid) {
        validate_medium({2.0, g, 1});
        if (g > std::numbers::pi - kThresholdGuard) {
            throw ParameterError(ParameterError::Kind::GainAboveThreshold,
                                 "GainAboveThreshold: scan gains must stay at least 1e-6 "
                                 "below the laser threshold pi");
        }
    }

    const double loss = 1.0 - squeezed_var;
    RegionScan scan;
    scan.thickness_grid.assign(thickness_grid.begin(), thickness_grid.end());
    scan.gain_grid.assign(gain_grid.begin(), gain_grid.end());
    scan.squeezed_var = squeezed_var;

    const double scan_hi = std::numbers::pi - kThresholdGuard;
    for (double k : thickness_grid) {
        std::vector<bool> row;
        row.reserve(gain_grid.size());
        for (double g : gain_grid) {
            if (g == 0.0) {
                // Passive medium: shaped variance is 1 - T (1 - a).
                row.push_back(loss > 0.0);
            } else {
                row.push_back(margin_from_loss(k, g, loss) < 0.0);
            }
        }
        scan.below_snl.push_back(std::move(row));

        BoundaryPoint point;
        point.thickness_ratio = k;
        auto margin = [&](double phi) { return margin_from_loss(k, phi, loss); };

        double prev_phi = scan_hi / kScanSamples;
        bool prev_negative = margin(prev_phi) < 0.0;
        std::optional<std::pair<double, double>> bracket;
        for (int i = 2; i <= kScanSamples; ++i) {
            const double phi = scan_hi * i / kScanSamples;
            const bool negative = margin(phi) < 0.0;
            if (negative != prev_negative) {
                ++point.sign_changes;
                if (prev_negative && !bracket) bracket.emplace(prev_phi, phi);
            }
            prev_negative = negative;
            prev_phi = phi;
        }
        if (bracket) point.gain = bisect_root(margin, bracket->first, bracket->second);
        point.fixed_point_gain = boundary_fixed_point(k, squeezed_var);

        std::ostringstream note;
        if (point.sign_changes > 1) {
            note << "L/l=" << k << ": margin changes sign " << point.sign_changes
                 << " times along L/La";
        } else if (point.gain && *point.gain >= 0.5 * std::numbers::pi) {
            note << "L/l=" << k << ": boundary L/La=" << *point.gain
                 << " lies beyond pi/2 where the arcsin closed form does not apply";
        } else if (point.gain && point.fixed_point_gain &&
                   std::abs(*point.gain - *point.fixed_point_gain) > kCrossCheckTolerance) {
            note << "L/l=" << k << ": bisection boundary " << *point.gain
                 << " disagrees with closed-form fixed point " << *point.fixed_point_gain;
        }
        if (!note.str().empty()) scan.anomalies.push_back(note.str());
        scan.boundary.push_back(point);
    }
    return scan;
}

}  // namespace ramsq
