#include "ramsq/analytic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace ramsq;

namespace {

// Reference values from a 40-digit mpmath evaluation of the sine-ratio
// coefficients at L/l = 10, L/La = 2.5, r = 1.
constexpr double kT = 0.41339260597490412789;
constexpr double kR = 1.30009926870174843011;
constexpr double kV = 0.71349187467665255800;
constexpr double kXWfs = 2.06953774879593606647;
constexpr double kXNoWfs = 3.56885502430301877921;
constexpr double kPWfs = 5.06817229981010149195;
constexpr double kGain = 1.49931727550708271274;
constexpr double kRatioNoWfs = 1.47048987256465028114;
// Passive medium, L/l = 2, r = 1.
constexpr double kLinXWfs = 0.56766764161830634595;
constexpr double kLinXNoWfs = 2.38109784554181572978;

const EnsembleCoefficients kRef{kT, kR, kV, 1};

const std::vector<double> kThickness{2.0, 5.0, 10.0, 20.0};
const std::vector<double> kGains{0.0, 0.5, 1.0, 2.0, 2.5, 3.0};
const std::vector<double> kSqueeze{0.0, 0.5, 1.0, 1.5, 2.0};

}  // namespace

TEST(MeanCoefficients, ReferencePoint) {
    const auto c = mean_coefficients({10.0, 2.5, 4});
    EXPECT_NEAR(c.t_bar, kT, 1e-14);
    EXPECT_NEAR(c.r_bar, kR, 1e-14);
    EXPECT_NEAR(c.v_bar, kV, 1e-14);
    // V directly as T + R - 1
    EXPECT_NEAR(c.v_bar, c.t_bar + c.r_bar - 1.0, 1e-14);
    EXPECT_EQ(c.channels, 4);
}

TEST(MeanCoefficients, HalfThicknessSymmetry) {
    for (double g : {0.3, 1.0, 2.0, 3.0}) {
        const auto c = mean_coefficients({2.0, g, 1});
        EXPECT_NEAR(c.t_bar, c.r_bar, 1e-15) << g;
    }
}

TEST(MeanCoefficients, ZeroGainUsesLinearBranch) {
    const auto c = mean_coefficients({2.0, 0.0, 1});
    EXPECT_EQ(c.t_bar, 0.5);
    EXPECT_EQ(c.r_bar, 0.5);
    EXPECT_EQ(c.v_bar, 0.0);
}

TEST(MeanCoefficients, PropagatesValidationErrors) {
    EXPECT_THROW(mean_coefficients({10.0, 3.2, 1}), ParameterError);
}

TEST(MeanCoefficientsLinear, DirectSubstitution) {
    auto c = mean_coefficients_linear({10.0, 1.7, 1});
    EXPECT_DOUBLE_EQ(c.t_bar, 0.1);
    EXPECT_DOUBLE_EQ(c.r_bar, 0.9);
    EXPECT_EQ(c.v_bar, 0.0);
    c = mean_coefficients_linear({1.0 + 1e-9, 0.0, 1});
    EXPECT_NEAR(c.t_bar, 1.0, 1e-8);
    EXPECT_NEAR(c.r_bar, 0.0, 1e-8);
}

TEST(Variances, ReferencePoint) {
    const InputState in{1.0, {}};
    EXPECT_NEAR(variance_x_wfs(kRef, in), kXWfs, 1e-13);
    EXPECT_NEAR(variance_x_nowfs(kRef, in), kXNoWfs, 1e-13);
    EXPECT_NEAR(variance_p_wfs(kRef, in), kPWfs, 1e-13);
    EXPECT_NEAR(variance_p_nowfs(kRef, in), kXNoWfs, 1e-13);
    EXPECT_NEAR(wfs_gain(kRef, in), kGain, 1e-13);
    EXPECT_NEAR(rescaled_fluctuation(kRef, in, Shaping::Unshaped), kRatioNoWfs, 1e-13);
}

TEST(Variances, CoherentInputGivesBaseline) {
    const InputState coh{0.0, {}};
    for (double k : kThickness) {
        for (double g : kGains) {
            const auto c = mean_coefficients({k, g, 1});
            const double base = 2.0 * c.v_bar + 1.0;
            EXPECT_EQ(variance_x_wfs(c, coh), base);
            EXPECT_EQ(variance_x_nowfs(c, coh), base);
            EXPECT_EQ(variance_p_wfs(c, coh), base);
            EXPECT_EQ(variance_p_nowfs(c, coh), base);
            EXPECT_EQ(wfs_gain(c, coh), 0.0);
            EXPECT_EQ(rescaled_fluctuation(c, coh, Shaping::Shaped), 1.0);
            EXPECT_EQ(rescaled_fluctuation(c, coh, Shaping::Unshaped), 1.0);
        }
    }
}

TEST(Variances, LinearMediumReference) {
    const EnsembleCoefficients lin{0.5, 0.5, 0.0, 1};
    const InputState in{1.0, {}};
    EXPECT_NEAR(variance_x_wfs(lin, in), kLinXWfs, 1e-15);
    EXPECT_NEAR(variance_x_nowfs(lin, in), kLinXNoWfs, 1e-15);
    EXPECT_NEAR(variance_p_nowfs(lin, in), kLinXNoWfs, 1e-15);
}

TEST(Variances, PerfectTransmissionKeepsAntiSqueezing) {
    const EnsembleCoefficients ideal{1.0, 0.0, 0.0, 1};
    for (double r : kSqueeze) {
        EXPECT_NEAR(variance_p_wfs(ideal, {r, {}}), std::exp(2.0 * r), 1e-12 * std::exp(2 * r));
        EXPECT_NEAR(variance_x_wfs(ideal, {r, {}}), std::exp(-2.0 * r), 1e-15);
    }
}

TEST(Variances, ShapedRatioBelowOneForSqueezedInput) {
    for (double r : {0.1, 1.0, 2.0}) {
        EXPECT_LT(rescaled_fluctuation(kRef, {r, {}}, Shaping::Shaped), 1.0);
        EXPECT_GT(rescaled_fluctuation(kRef, {r, {}}, Shaping::Unshaped), 1.0);
    }
}

// Identity suite over the standard grid.
TEST(Variances, IdentitySuite) {
    for (double k : kThickness) {
        for (double g : kGains) {
            const auto c = mean_coefficients({k, g, 1});
            const double base = 2.0 * c.v_bar + 1.0;
            for (double r : kSqueeze) {
                const InputState in{r, {}};
                const double xw = variance_x_wfs(c, in);
                const double xn = variance_x_nowfs(c, in);
                const double pw = variance_p_wfs(c, in);
                const double pn = variance_p_nowfs(c, in);
                SCOPED_TRACE(testing::Message() << "k=" << k << " g=" << g << " r=" << r);

                EXPECT_LE(std::abs(xn - xw - c.t_bar * std::sinh(2 * r)), kIdentityTolerance);
                EXPECT_EQ(xn, pn);
                const double sum = 2 * base + c.t_bar * (std::exp(2 * r) + std::exp(-2 * r) - 2);
                EXPECT_NEAR(xw + pw, sum, 1e-12 * sum);
                EXPECT_GE(xw + pw, 2 * base - 1e-12);
                EXPECT_GE(xw * pw, 1.0 - 1e-9);
                EXPECT_LE(xw, base);
                EXPECT_LE(base, xn);
                if (r > 0) {
                    EXPECT_LT(xw, xn);
                    EXPECT_GT(pw, pn);
                    EXPECT_GT(wfs_gain(c, in), 0.0);
                }
            }
        }
    }
}

TEST(Variances, MonotoneInSqueezing) {
    for (double k : kThickness) {
        for (double g : kGains) {
            const auto c = mean_coefficients({k, g, 1});
            for (std::size_t i = 1; i < kSqueeze.size(); ++i) {
                const InputState lo{kSqueeze[i - 1], {}};
                const InputState hi{kSqueeze[i], {}};
                EXPECT_LT(variance_x_wfs(c, hi), variance_x_wfs(c, lo));
                EXPECT_GT(variance_x_nowfs(c, hi), variance_x_nowfs(c, lo));
            }
        }
    }
}

TEST(Variances, MonotoneInGain) {
    for (double k : kThickness) {
        for (double r : kSqueeze) {
            const InputState in{r, {}};
            for (std::size_t j = 1; j < kGains.size(); ++j) {
                const auto lo = full_report({k, kGains[j - 1], 1}, in);
                const auto hi = full_report({k, kGains[j], 1}, in);
                SCOPED_TRACE(testing::Message() << "k=" << k << " r=" << r << " g=" << kGains[j]);
                EXPECT_GT(hi.x_wfs, lo.x_wfs);
                EXPECT_GT(hi.x_nowfs, lo.x_nowfs);
                EXPECT_GT(hi.p_wfs, lo.p_wfs);
                EXPECT_GT(hi.p_nowfs, lo.p_nowfs);
            }
        }
    }
}

TEST(Variances, AmplifyingExceedsLinear) {
    for (double k : kThickness) {
        for (double r : kSqueeze) {
            const InputState in{r, {}};
            const auto lin = full_report({k, 0.0, 1}, in);
            for (double g : {0.5, 1.0, 2.0, 3.0}) {
                const auto amp = full_report({k, g, 1}, in);
                EXPECT_GT(amp.x_wfs, lin.x_wfs);
                EXPECT_GT(amp.x_nowfs, lin.x_nowfs);
                EXPECT_GT(amp.p_wfs, lin.p_wfs);
                EXPECT_GT(amp.p_nowfs, lin.p_nowfs);
            }
        }
    }
}

TEST(FullReport, ReferenceAndLimits) {
    auto rep = full_report({10.0, 2.5, 4}, {1.0, {}});
    EXPECT_NEAR(rep.x_wfs, kXWfs, 1e-13);
    EXPECT_NEAR(rep.x_nowfs, kXNoWfs, 1e-13);
    EXPECT_EQ(rep.snl, 1.0);

    rep = full_report({2.0, 0.0, 1}, {0.0, {}});
    EXPECT_EQ(rep.x_wfs, 1.0);
    EXPECT_EQ(rep.x_nowfs, 1.0);
    EXPECT_EQ(rep.p_wfs, 1.0);
    EXPECT_EQ(rep.p_nowfs, 1.0);

    rep = full_report({2.0, 0.0, 1}, {1.0, {}});
    EXPECT_NEAR(rep.x_wfs, kLinXWfs, 1e-15);
    EXPECT_TRUE(rep.x_wfs_below_snl());
}

TEST(FullReport, LinearLimitMatchesPassiveFormulas) {
    for (double k : kThickness) {
        for (double r : kSqueeze) {
            const auto rep = full_report({k, 0.0, 1}, {r, {}});
            const double t = 1.0 / k;
            EXPECT_NEAR(rep.x_wfs, 1.0 - t * (1.0 - std::exp(-2 * r)), 1e-14);
            EXPECT_NEAR(rep.x_nowfs, 1.0 + t * (std::cosh(2 * r) - 1.0), 1e-13);
        }
    }
}

TEST(FullReport, RejectsNegativeSqueezing) {
    EXPECT_THROW(full_report({10.0, 1.0, 1}, {-0.5, {}}), ParameterError);
}
