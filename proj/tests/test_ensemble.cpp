#include "ramsq/counter_rng.hpp"
#include "ramsq/ensemble.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

using namespace ramsq;

namespace {

const MediumSpec kRefSpec{10.0, 2.5, 4};
const InputState kSqueezed{1.0, {}};

// Composite Simpson rule for the average of f over a uniform phase.
template <typename F>
double phase_average(F&& f, int intervals = 512) {
    const double h = 2.0 * std::numbers::pi / intervals;
    double sum = f(0.0) + f(2.0 * std::numbers::pi);
    for (int i = 1; i < intervals; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0 / (2.0 * std::numbers::pi);
}

}  // namespace

TEST(CounterRng, PureFunctionOfSeedAndDraw) {
    DrawStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
}

TEST(CounterRng, UniformAndPhaseRanges) {
    DrawStream rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double p = rng.phase();
        ASSERT_GE(p, 0.0);
        ASSERT_LT(p, 2.0 * std::numbers::pi);
        ASSERT_GE(rng.exponential(), 0.0);
    }
}

TEST(SampleRealization, MeanMagnitudesUseEnsembleMeans) {
    const auto coef = mean_coefficients(kRefSpec);
    const auto real = sample_realization(kRefSpec, {SamplerMode::MeanMagnitudes, 10, 42}, 3);
    ASSERT_EQ(real.trans_mags.size(), 4u);
    ASSERT_EQ(real.refl_mags.size(), 4u);
    for (double t : real.trans_mags) EXPECT_NEAR(t, 0.41339260597490412789 / 4, 1e-15);
    for (double r : real.refl_mags) EXPECT_DOUBLE_EQ(r, coef.r_bar / 4);
    EXPECT_DOUBLE_EQ(real.spont_mag, coef.v_bar);
    EXPECT_LE(std::abs(real.flux_residual()), 1e-10);
}

TEST(SampleRealization, ExponentialMagnitudesKeepFluxIdentity) {
    for (double g : {0.0, 1.0, 2.5, 3.0}) {
        const MediumSpec spec{2.0, g, 6};
        const SamplerConfig cfg{SamplerMode::ExponentialMagnitudes, 1, 99};
        for (std::uint64_t d = 0; d < 2000; ++d) {
            const auto real = sample_realization(spec, cfg, d);
            ASSERT_LE(std::abs(real.flux_residual()), 1e-10) << g << " " << d;
            for (double t : real.trans_mags) ASSERT_GE(t, 0.0);
            for (double r : real.refl_mags) ASSERT_GE(r, 0.0);
            ASSERT_GE(real.spont_mag, 0.0);
        }
    }
}

TEST(SampleRealization, ExponentialMagnitudesPreserveChannelMeans) {
    const auto coef = mean_coefficients(kRefSpec);
    const SamplerConfig cfg{SamplerMode::ExponentialMagnitudes, 1, 5};
    const int draws = 20000;
    double sum_t0 = 0.0;
    double sum_sq = 0.0;
    for (int d = 0; d < draws; ++d) {
        const double t0 = sample_realization(coef, cfg, d).trans_mags[0];
        sum_t0 += t0;
        sum_sq += t0 * t0;
    }
    const double mean = sum_t0 / draws;
    const double sd = std::sqrt(sum_sq / draws - mean * mean);
    EXPECT_NEAR(mean, coef.t_bar / 4, 5.0 * sd / std::sqrt(draws));
    EXPECT_GT(sd, 0.0);
}

TEST(SampleRealization, Deterministic) {
    for (auto mode : {SamplerMode::MeanMagnitudes, SamplerMode::ExponentialMagnitudes}) {
        const SamplerConfig cfg{mode, 1, 1234};
        const auto a = sample_realization(kRefSpec, cfg, 77);
        const auto b = sample_realization(kRefSpec, cfg, 77);
        EXPECT_EQ(a.trans_mags, b.trans_mags);
        EXPECT_EQ(a.trans_phases, b.trans_phases);
        EXPECT_EQ(a.refl_mags, b.refl_mags);
        EXPECT_EQ(a.refl_phases, b.refl_phases);
        EXPECT_EQ(a.spont_mag, b.spont_mag);
        EXPECT_EQ(a.spont_phase, b.spont_phase);
    }
}

TEST(SingleVariance, ShapedCollapsesToAnalytic) {
    const auto coef = mean_coefficients(kRefSpec);
    const auto real = sample_realization(kRefSpec, {SamplerMode::MeanMagnitudes, 1, 42}, 0);
    EXPECT_NEAR(variance_x_wfs_single(real, kSqueezed), variance_x_wfs(coef, kSqueezed), 1e-13);
    EXPECT_NEAR(variance_p_single(real, kSqueezed, Shaping::Shaped),
                variance_p_wfs(coef, kSqueezed), 1e-13);
    EXPECT_NEAR(variance_x_wfs_single(real, {0.0, {}}), 1.0 + 2.0 * coef.v_bar, 1e-14);
}

TEST(SingleVariance, VacuumThroughLinearMediumStaysAtVacuum) {
    const MediumSpec spec{3.0, 0.0, 5};
    const auto real = sample_realization(spec, {SamplerMode::ExponentialMagnitudes, 1, 3}, 11);
    const InputState vac{0.0, {}};
    EXPECT_NEAR(variance_x_wfs_single(real, vac), 1.0, 1e-14);
    EXPECT_NEAR(variance_x_nowfs_single(real, vac), 1.0, 1e-14);
    EXPECT_NEAR(variance_p_single(real, vac, Shaping::Unshaped), 1.0, 1e-14);
}

TEST(SingleVariance, ShapedInvariantUnderAncillaPhases) {
    auto real = sample_realization(kRefSpec, {SamplerMode::ExponentialMagnitudes, 1, 8}, 2);
    const double before = variance_x_wfs_single(real, kSqueezed);
    const double p_before = variance_p_single(real, kSqueezed, Shaping::Shaped);
    DrawStream rng(555, 0);
    for (int trial = 0; trial < 100; ++trial) {
        for (auto& p : real.refl_phases) p = rng.phase();
        real.spont_phase = rng.phase();
        std::rotate(real.refl_mags.begin(), real.refl_mags.begin() + 1, real.refl_mags.end());
        ASSERT_NEAR(variance_x_wfs_single(real, kSqueezed), before, 1e-14);
        ASSERT_NEAR(variance_p_single(real, kSqueezed, Shaping::Shaped), p_before, 1e-14);
    }
}

TEST(SingleVariance, TransmissionPhaseLimits) {
    auto real = sample_realization(kRefSpec, {SamplerMode::MeanMagnitudes, 1, 42}, 4);
    const double sum_t = std::accumulate(real.trans_mags.begin(), real.trans_mags.end(), 0.0);
    const double sum_r = std::accumulate(real.refl_mags.begin(), real.refl_mags.end(), 0.0);

    std::fill(real.trans_phases.begin(), real.trans_phases.end(), 0.0);
    EXPECT_NEAR(variance_x_nowfs_single(real, kSqueezed), variance_x_wfs_single(real, kSqueezed),
                1e-14);

    std::fill(real.trans_phases.begin(), real.trans_phases.end(), 0.5 * std::numbers::pi);
    EXPECT_NEAR(variance_x_nowfs_single(real, kSqueezed),
                sum_t * std::exp(2.0) + sum_r + real.spont_mag, 1e-13);
}

TEST(SingleVariance, CoherentPQuadratureMatchesX) {
    const InputState coh{0.0, {}};
    const auto real = sample_realization(kRefSpec, {SamplerMode::ExponentialMagnitudes, 1, 9}, 1);
    EXPECT_NEAR(variance_p_single(real, coh, Shaping::Shaped), variance_x_wfs_single(real, coh),
                1e-14);
    EXPECT_NEAR(variance_p_single(real, coh, Shaping::Unshaped),
                variance_x_nowfs_single(real, coh), 1e-14);
}

// Deterministic dual route: integrate the per-realization unshaped variance
// over a uniform transmission phase by quadrature.
TEST(SingleVariance, PhaseQuadratureReproducesUnshapedAverage) {
    const MediumSpec spec{5.0, 1.0, 1};
    const auto coef = mean_coefficients(spec);
    auto real = sample_realization(spec, {SamplerMode::MeanMagnitudes, 1, 0}, 0);
    for (double r : {0.3, 1.0, 1.7}) {
        const InputState in{r, {}};
        auto x_of = [&](double phase) {
            real.trans_phases[0] = phase;
            return variance_x_nowfs_single(real, in);
        };
        auto p_of = [&](double phase) {
            real.trans_phases[0] = phase;
            return variance_p_single(real, in, Shaping::Unshaped);
        };
        EXPECT_NEAR(phase_average(x_of), variance_x_nowfs(coef, in), 1e-12);
        EXPECT_NEAR(phase_average(p_of), variance_p_nowfs(coef, in), 1e-12);
    }
}

TEST(PhaseStatistics, TrigonometricAveragesConverge) {
    const SamplerConfig cfg{SamplerMode::MeanMagnitudes, 1, 42};
    const int draws = 50000;
    double c2 = 0.0, s2 = 0.0, cs = 0.0;
    long count = 0;
    for (int d = 0; d < draws; ++d) {
        const auto real = sample_realization(kRefSpec, cfg, d);
        auto add = [&](double p) {
            c2 += std::cos(p) * std::cos(p);
            s2 += std::sin(p) * std::sin(p);
            cs += std::sin(p) * std::cos(p);
            ++count;
        };
        for (double p : real.refl_phases) add(p);
        add(real.spont_phase);
    }
    const double tol = 5.0 / std::sqrt(static_cast<double>(count));
    EXPECT_NEAR(c2 / count, 0.5, tol);
    EXPECT_NEAR(s2 / count, 0.5, tol);
    EXPECT_NEAR(cs / count, 0.0, tol);
}

TEST(McAverage, UnshapedConvergesToClosedForm) {
    const auto coef = mean_coefficients(kRefSpec);
    for (auto mode : {SamplerMode::MeanMagnitudes, SamplerMode::ExponentialMagnitudes}) {
        const auto est = mc_average(kRefSpec, kSqueezed, {mode, 100000, 42}, Quantity::XNoWfs);
        EXPECT_EQ(est.realizations, 100000u);
        EXPECT_GT(est.std_error, 0.0);
        EXPECT_LE(std::abs(est.mean - variance_x_nowfs(coef, kSqueezed)), 3.0 * est.std_error)
            << to_string(mode) << " mean=" << est.mean << " se=" << est.std_error;
        const auto p = mc_average(kRefSpec, kSqueezed, {mode, 100000, 42}, Quantity::PNoWfs);
        EXPECT_LE(std::abs(p.mean - variance_p_nowfs(coef, kSqueezed)), 3.0 * p.std_error);
    }
}

// Draws are shared across grid points, so one seed says little about the
// error bars. Across independent seeds the squared z-scores should average 1.
TEST(McAverage, StandardErrorIsCalibratedAcrossSeeds) {
    const InputState in{1.0, {}};
    const double ref = variance_x_nowfs(mean_coefficients(kRefSpec), in);
    for (SamplerMode mode : {SamplerMode::MeanMagnitudes, SamplerMode::ExponentialMagnitudes}) {
        double z2 = 0.0;
        constexpr int kSeeds = 60;
        for (int seed = 1; seed <= kSeeds; ++seed) {
            const auto est = mc_average(kRefSpec, in, {mode, 2000, std::uint64_t(seed)},
                                        Quantity::XNoWfs);
            const double z = (est.mean - ref) / est.std_error;
            z2 += z * z;
        }
        z2 /= kSeeds;
        // chi^2_60 / 60 has standard deviation 0.18
        EXPECT_GT(z2, 0.5) << to_string(mode);
        EXPECT_LT(z2, 1.6) << to_string(mode);
    }
}

TEST(McAverage, ShapedMeanMagnitudesHasNoSpread) {
    const auto coef = mean_coefficients(kRefSpec);
    for (std::size_t k : {1u, 2u, 5000u}) {
        const auto est =
            mc_average(kRefSpec, kSqueezed, {SamplerMode::MeanMagnitudes, k, 7}, Quantity::XWfs);
        EXPECT_LE(est.std_error, 1e-14);
        EXPECT_NEAR(est.mean, variance_x_wfs(coef, kSqueezed), 1e-13);
    }
}

TEST(McAverage, IndependentOfWorkerCount) {
    const SamplerConfig cfg{SamplerMode::ExponentialMagnitudes, 20000, 42};
    const auto one = mc_average(kRefSpec, kSqueezed, cfg, Quantity::XNoWfs, 1);
    const auto three = mc_average(kRefSpec, kSqueezed, cfg, Quantity::XNoWfs, 3);
    const auto eight = mc_average(kRefSpec, kSqueezed, cfg, Quantity::XNoWfs, 8);
    EXPECT_EQ(one.mean, three.mean);
    EXPECT_EQ(one.std_error, three.std_error);
    EXPECT_EQ(one.mean, eight.mean);
    EXPECT_EQ(one.std_error, eight.std_error);
}

TEST(McAverage, SharedDrawsMatchSingleQuantityRuns) {
    const SamplerConfig cfg{SamplerMode::ExponentialMagnitudes, 5000, 3};
    const auto all = mc_average_all(kRefSpec, kSqueezed, cfg, 2);
    for (std::size_t q = 0; q < kAllQuantities.size(); ++q) {
        const auto single = mc_average(kRefSpec, kSqueezed, cfg, kAllQuantities[q], 1);
        EXPECT_EQ(all[q].mean, single.mean);
        EXPECT_EQ(all[q].std_error, single.std_error);
    }
}

TEST(McAverage, RejectsZeroRealizations) {
    EXPECT_THROW(
        mc_average(kRefSpec, kSqueezed, {SamplerMode::MeanMagnitudes, 0, 1}, Quantity::XWfs),
        ParameterError);
}

TEST(McEstimate, SigmaDistance) {
    McEstimate e{1.0, 0.1, 10};
    EXPECT_DOUBLE_EQ(e.sigma_distance(1.25), 2.5);
    McEstimate exact{2.0, 0.0, 10};
    EXPECT_EQ(exact.sigma_distance(2.0), 0.0);
    EXPECT_TRUE(std::isinf(exact.sigma_distance(2.1)));
    McEstimate rounded{3.0 + 4e-16, 1e-17, 10};
    EXPECT_EQ(rounded.sigma_distance(3.0), 0.0);
    EXPECT_NEAR(rounded.sigma_distance(3.0 - 1e-9), 100000000.0, 1e3);
}

TEST(MeanAmplitude, ZeroForSqueezedVacuum) {
    const auto real = sample_realization(kRefSpec, {SamplerMode::MeanMagnitudes, 1, 1}, 0);
    const auto [x, p] = mean_amplitude_check(real, {1.0, {0.0, 0.0}});
    EXPECT_EQ(x, 0.0);
    EXPECT_EQ(p, 0.0);
}

TEST(MeanAmplitude, IdentityChannelCarriesDisplacement) {
    DisorderRealization real;
    real.trans_mags = {1.0};
    real.trans_phases = {0.3};
    real.refl_mags = {0.0};
    real.refl_phases = {0.0};
    for (double r : {0.0, 0.8}) {
        const auto [x, p] = mean_amplitude_check(real, {r, {0.75, -0.25}});
        EXPECT_DOUBLE_EQ(x, 1.5);
        EXPECT_DOUBLE_EQ(p, -0.5);
    }
}

TEST(MeanAmplitude, OnlyTransmittedModesMatter) {
    auto real = sample_realization(kRefSpec, {SamplerMode::ExponentialMagnitudes, 1, 4}, 0);
    const InputState in{0.5, {1.0, 2.0}};
    const auto before = mean_amplitude_check(real, in);
    for (auto& r : real.refl_mags) r *= 3.0;
    real.spont_mag += 10.0;
    EXPECT_EQ(mean_amplitude_check(real, in), before);
}
