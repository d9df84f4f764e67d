#include "homsim/correlators.hpp"

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "homsim/errors.hpp"
#include "oracles.hpp"

namespace homsim {
namespace {

constexpr double kPi = std::numbers::pi;
const double kPump = kSpeedOfLight / 405e-9;

SpdcEnsembleConfig spdc_cfg(std::int64_t n, std::uint64_t seed = 1, double sigma = 1.0) {
    return {n, sigma, kPump, seed};
}

CorrelationScan scan_of(const std::vector<double>& xs, const std::vector<double>& ys) {
    CorrelationScan s;
    s.variable_name = "phi_rad";
    s.result_name = "y";
    for (std::size_t i = 0; i < xs.size(); ++i) s.points.push_back({xs[i], ys[i]});
    return s;
}

CorrelationScan periodic_scan(std::size_t n, double (*f)(double)) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(2.0 * kPi * double(i) / double(n));
        ys.push_back(f(xs.back()));
    }
    return scan_of(xs, ys);
}

TEST(PairwiseSum, MatchesLongDoubleReference) {
    std::vector<double> v;
    long double ref = 0.0L;
    for (int i = 0; i < 10'007; ++i) {
        v.push_back(1.0 / (1.0 + i));
        ref += v.back();
    }
    EXPECT_NEAR(pairwise_sum(v), static_cast<double>(ref), 1e-12);
    EXPECT_EQ(pairwise_sum(std::span<const double>{}), 0.0);
}

TEST(HomG2Ensemble, ExactZeroAtCoincidence) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const auto e = sample_spdc_ensemble(spdc_cfg(5000, seed, 0.5 + double(seed)));
        EXPECT_EQ(hom_g2_ensemble(e, 0.0), 0.0);
    }
}

TEST(HomG2Ensemble, SinglePairFullSplit) {
    const std::vector<SpdcPair> one{{0.25, 0.0, 0}};
    EXPECT_NEAR(hom_g2_ensemble(one, 0.5), 2.0, 1e-12);
}

TEST(HomG2Ensemble, BaselineFarOutsideDip) {
    const auto cfg = spdc_cfg(100'000, 4);
    const auto e = sample_spdc_ensemble(cfg);
    const double t_c = spectrum_stats(cfg).coherence_time;
    EXPECT_NEAR(hom_g2_ensemble(e, 10.0 * t_c), 1.0, 0.02);
}

TEST(HomG2Ensemble, EvenInDelayAndNonNegative) {
    const auto e = sample_spdc_ensemble(spdc_cfg(2000, 9));
    for (double tau : {0.01, 0.05, 0.3, 1.7}) {
        EXPECT_EQ(hom_g2_ensemble(e, tau), hom_g2_ensemble(e, -tau));
        EXPECT_GE(hom_g2_ensemble(e, tau), 0.0);
    }
}

TEST(HomG2Ensemble, EmptyEnsembleIsDomainError) {
    EXPECT_THROW(hom_g2_ensemble(std::span<const SpdcPair>{}, 0.1), DomainError);
}

TEST(HomG2Analytic, Limits) {
    EXPECT_EQ(hom_g2_analytic(1.0, 0.0), 0.0);
    EXPECT_NEAR(hom_g2_analytic(1.0, 50.0), 1.0, 1e-15);
    EXPECT_NEAR(hom_g2_analytic(1.0, hom_half_depth_delay(1.0)), 0.5, 1e-14);
    EXPECT_NEAR(hom_half_depth_delay(1.0), 0.0468476562823194, 1e-15);
    EXPECT_NEAR(hom_g2_analytic(2.0f, 0.01f), 1.0f - std::exp(-32.0f * 4.0f * kPi * kPi * 1e-4f), 1e-6f);
}

TEST(HomG2Analytic, AgreesWithBruteForceMonteCarlo) {
    const oracle::HomMonteCarlo mc(1.0, 1'000'000, 31415);
    const double half = hom_half_depth_delay(1.0);
    for (double tau : {0.0, 0.5 * half, half, 2.0 * half, 0.2}) {
        // Per-draw variance of 2 sin^2 is at most 1, so 5 / sqrt(1e6) is generous.
        EXPECT_NEAR(mc.g2(tau), hom_g2_analytic(1.0, tau), 5e-3) << "tau=" << tau;
    }
    EXPECT_NEAR(mc.crossing(0.5, 0.0, 0.1) / half, 1.0, 0.01);
}

TEST(HomDipScan, MatchesOracleWithinMonteCarloBound) {
    const auto cfg = spdc_cfg(10'000, 17);
    const double t_c = spectrum_stats(cfg).coherence_time;
    const auto scan = hom_dip_scan(cfg, -3.0 * t_c, 3.0 * t_c, 2001);

    ASSERT_EQ(scan.points.size(), 2001u);
    EXPECT_EQ(scan.variable_name, "tau_s");
    EXPECT_EQ(scan.points[1000].value, 0.0);
    EXPECT_EQ(scan.points[1000].result, 0.0);
    EXPECT_EQ(std::get<double>(scan.meta.at("t_c")), t_c);
    EXPECT_TRUE(std::is_sorted(scan.points.begin(), scan.points.end(),
                               [](const ScanPoint& a, const ScanPoint& b) { return a.value < b.value; }));

    double worst = 0.0;
    std::vector<double> tail;
    for (const auto& p : scan.points) {
        ASSERT_GE(p.result, 0.0);
        worst = std::max(worst, std::abs(p.result - hom_g2_analytic(1.0, p.value)));
        if (std::abs(p.value) > 2.0 * t_c) tail.push_back(p.result);
    }
    EXPECT_LE(worst, 5.0 / std::sqrt(1e4));
    EXPECT_LE(oracle::moments(tail).stddev, 3.0 / std::sqrt(1e4));
}

TEST(HomDipScan, ThreadCountDoesNotChangeResults) {
    const auto cfg = spdc_cfg(3000, 5);
    const auto one = hom_dip_scan(cfg, -1.0, 1.0, 301, 1);
    const auto many = hom_dip_scan(cfg, -1.0, 1.0, 301, 7);
    EXPECT_EQ(one, many);
}

TEST(HomDipScan, RejectsBadGrid) {
    EXPECT_THROW(hom_dip_scan(spdc_cfg(10), 1.0, -1.0, 11), DomainError);
    EXPECT_THROW(hom_dip_scan(spdc_cfg(10), -1.0, 1.0, 1), DomainError);
    EXPECT_THROW(hom_dip_scan(spdc_cfg(0), -1.0, 1.0, 11), ConfigError);
}

TEST(MziIntensities, Values) {
    auto r = mzi_intensities(0.0, 1.0);
    EXPECT_NEAR(r.i_a, 0.0, 1e-15);
    EXPECT_NEAR(r.i_b, 1.0, 1e-15);
    r = mzi_intensities(kPi, 1.0);
    EXPECT_NEAR(r.i_a, 1.0, 1e-15);
    EXPECT_NEAR(r.i_b, 0.0, 1e-15);
    r = mzi_intensities(kPi / 2, 1.0);
    EXPECT_NEAR(r.i_a, 0.5, 1e-15);
    EXPECT_NEAR(r.i_b, 0.5, 1e-15);
    EXPECT_THROW(mzi_intensities(0.0, -1.0), DomainError);
}

TEST(MziIntensities, ConservationAndSwap) {
    for (int k = 0; k < 1000; ++k) {
        const double phi = -7.0 + 0.0141 * k;
        const auto a = mzi_intensities(phi, 2.5);
        const auto b = mzi_intensities(phi + kPi, 2.5);
        ASSERT_NEAR(a.i_a + a.i_b, 2.5, 1e-12);
        ASSERT_NEAR(a.i_a, b.i_b, 1e-12);
        ASSERT_NEAR(a.i_b, b.i_a, 1e-12);
    }
}

TEST(CoincidenceRate, ValuesAndSymmetries) {
    EXPECT_EQ(coincidence_rate(0.0), 0.0);
    EXPECT_NEAR(coincidence_rate(kPi / 2), 1.0, 1e-15);
    EXPECT_NEAR(coincidence_rate(kPi / 4), 0.5, 1e-15);
    for (double phi : {0.1, 0.9, 2.0, 4.4}) {
        EXPECT_EQ(coincidence_rate(phi), coincidence_rate(-phi));
        EXPECT_NEAR(coincidence_rate(phi), coincidence_rate(kPi - phi), 1e-15);
        EXPECT_NEAR(coincidence_rate(phi), 1.0 - std::cos(phi) * std::cos(phi), 1e-15);
    }
}

TEST(MziG2, EqualsCoincidenceRateIncludingDarkPorts) {
    EXPECT_NEAR(mzi_g2(0.0), 0.0, 1e-15);
    EXPECT_NEAR(mzi_g2(kPi / 2), 1.0, 1e-15);
    EXPECT_TRUE(std::isfinite(mzi_g2(kPi)));
    for (int k = 0; k < 100; ++k) {
        const double phi = 2.0 * kPi * k / 99.0;
        ASSERT_NEAR(mzi_g2(phi), coincidence_rate(phi), 1e-12) << "phi=" << phi;
    }
}

TEST(MziFringeScan, IntensityFringe) {
    const auto ia = mzi_fringe_scan(0.0, 2.0 * kPi, 1000, MziQuantity::i_a);
    const auto ib = mzi_fringe_scan(0.0, 2.0 * kPi, 1000, MziQuantity::i_b);
    const auto [lo, hi] = std::minmax_element(ia.points.begin(), ia.points.end(),
        [](const ScanPoint& a, const ScanPoint& b) { return a.result < b.result; });
    EXPECT_NEAR(lo->result, 0.0, 1e-12);
    EXPECT_NEAR(hi->result, 1.0, 1e-5);  // grid lands within (pi/999)^2 of the peak
    for (std::size_t i = 0; i < ia.points.size(); ++i)
        ASSERT_NEAR(ia.points[i].result + ib.points[i].result, 1.0, 1e-12);
    EXPECT_NEAR(fringe_visibility(ia), 1.0, 1e-12);
}

TEST(MziFringeScan, CoincidenceRateDoublesFringeFrequency) {
    const auto ia = mzi_fringe_scan(0.0, 2.0 * kPi, 1000, MziQuantity::i_a);
    const auto rab = mzi_fringe_scan(0.0, 2.0 * kPi, 1000, MziQuantity::r_ab);
    EXPECT_EQ(dominant_fringe_bin(ia), 1u);
    EXPECT_EQ(dominant_fringe_bin(rab), 2u);
    EXPECT_EQ(rab.result_name, "r_ab");
}

TEST(DominantFringeFrequency, CosineAndSquaredSine) {
    const auto c = periodic_scan(64, [](double x) { return std::cos(x); });
    EXPECT_EQ(dominant_fringe_bin(c), 1u);
    EXPECT_NEAR(dominant_fringe_frequency(c), 1.0 / (2.0 * kPi), 1e-12);

    const auto s2 = periodic_scan(64, [](double x) { return std::sin(x) * std::sin(x); });
    EXPECT_EQ(dominant_fringe_bin(s2), 2u);
    EXPECT_NEAR(dominant_fringe_frequency(s2), 2.0 * dominant_fringe_frequency(c), 1e-12);
}

TEST(DominantFringeFrequency, ConstantScanHasNoFringe) {
    const auto k = periodic_scan(64, [](double) { return 0.37; });
    EXPECT_EQ(dominant_fringe_bin(k), 0u);
    EXPECT_EQ(dominant_fringe_frequency(k), 0.0);
}

TEST(DominantFringeFrequency, AgreesWithBruteForceDft) {
    const auto s = periodic_scan(
        101, [](double x) { return 1.0 + 0.3 * std::cos(3.0 * x) + 0.8 * std::sin(7.0 * x + 0.2); });
    EXPECT_EQ(dominant_fringe_bin(s), oracle::brute_force_dominant_bin(s.results()));
    EXPECT_EQ(dominant_fringe_bin(s), 7u);
}

TEST(DominantFringeFrequency, Preconditions) {
    auto s = periodic_scan(64, [](double x) { return std::cos(x); });
    s.points[10].value += 0.01;
    EXPECT_THROW(dominant_fringe_frequency(s), DomainError);
    EXPECT_THROW(dominant_fringe_bin(periodic_scan(7, [](double x) { return x; })), DomainError);
}

TEST(FringeVisibility, Values) {
    EXPECT_EQ(fringe_visibility(scan_of({0, 1, 2}, {0.4, 0.4, 0.4})), 0.0);
    EXPECT_EQ(fringe_visibility(scan_of({0, 1, 2}, {0.0, 0.0, 0.0})), 0.0);
    EXPECT_NEAR(fringe_visibility(scan_of({0, 1}, {1.0, 3.0})), 0.5, 1e-15);
    EXPECT_THROW(fringe_visibility(CorrelationScan{}), DomainError);
}

TEST(SpdcWashoutScan, RandomBirthPhaseRemovesFringe) {
    const auto cfg = spdc_cfg(10'000, 12);
    const double lambda = 2.0 * kSpeedOfLight / cfg.f0;
    const auto scan = spdc_washout_scan(cfg, 0.0, 10.0 * lambda, 1001);
    EXPECT_LT(fringe_visibility(scan), 0.05);
    ASSERT_EQ(scan.footer.size(), 1u);
    EXPECT_EQ(scan.footer[0].first, "visibility");
    EXPECT_EQ(scan.footer[0].second, fringe_visibility(scan));

    double mean = 0.0;
    for (const auto& p : scan.points) mean += p.result;
    mean /= double(scan.points.size());
    EXPECT_NEAR(mean, 1.0, 3.0 / std::sqrt(1e4));
}

TEST(SpdcWashoutScan, SingleCoherentPairShowsCarrierFringe) {
    const std::vector<SpdcPair> one{{0.0, 0.0, 0}};
    const double lambda = 2.0 * kSpeedOfLight / kPump;
    const auto scan = spdc_washout_scan(one, kPump, 0.0, 8.0 * lambda, 801, 1.0);
    EXPECT_GT(fringe_visibility(scan), 0.999);
    EXPECT_NEAR(scan.points[0].result, 0.0, 1e-12);
    // 8 wavelengths over 801 of the 801 * dx record: bin 8.
    EXPECT_EQ(dominant_fringe_bin(scan), 8u);
    EXPECT_NEAR(dominant_fringe_frequency(scan), 1.0 / lambda, 0.01 / lambda);
}

TEST(SpdcWashoutScan, ThreadInvariantAndRangeChecked) {
    const auto cfg = spdc_cfg(500, 2);
    const double lambda = 2.0 * kSpeedOfLight / cfg.f0;
    EXPECT_EQ(spdc_washout_scan(cfg, 0.0, 4.0 * lambda, 101, 1.0, 1),
              spdc_washout_scan(cfg, 0.0, 4.0 * lambda, 101, 1.0, 3));
    EXPECT_THROW(spdc_washout_scan(cfg, 0.0, 2.0 * lambda, 101), DomainError);
}

}  // namespace
}  // namespace homsim
