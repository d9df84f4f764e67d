#include "homsim/sources.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "homsim/counter_rng.hpp"
#include "homsim/errors.hpp"

namespace homsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Below this mean the plain sequential search from k = 0 is used.
constexpr double kSequentialPoissonLimit = 30.0;

std::int64_t poisson_sequential(double mean, double u) {
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    while (u >= cdf) {
        ++k;
        p *= mean / static_cast<double>(k);
        if (p == 0.0) break;  // cdf rounded short of u; k is already deep in the tail
        cdf += p;
    }
    return k;
}

// Search outward from the mode so exp(-mean) never underflows.
std::int64_t poisson_from_mode(double mean, double u) {
    const auto mode = static_cast<std::int64_t>(std::floor(mean));
    const double p_mode = std::exp(-mean + static_cast<double>(mode) * std::log(mean) -
                                   std::lgamma(static_cast<double>(mode) + 1.0));

    double cdf = 0.0;
    {
        double p = p_mode;
        for (std::int64_t k = mode; k >= 0 && p > 1e-300; --k) {
            cdf += p;
            p *= static_cast<double>(k) / mean;
        }
    }

    std::int64_t k = mode;
    double p = p_mode;
    if (u < cdf) {
        while (k > 0 && cdf - p > u) {
            cdf -= p;
            p *= static_cast<double>(k) / mean;
            --k;
        }
        return k;
    }
    while (cdf <= u) {
        ++k;
        p *= mean / static_cast<double>(k);
        if (p == 0.0) break;
        cdf += p;
    }
    return k;
}

}  // namespace

void SpdcEnsembleConfig::validate() const {
    if (n_pairs < 1) throw ConfigError("n_pairs", "n_pairs must be >= 1, got " + std::to_string(n_pairs));
    if (!(sigma_f > 0.0) || !std::isfinite(sigma_f))
        throw ConfigError("sigma_f", "sigma_f must be finite and > 0");
    if (!(f0 > 0.0) || !std::isfinite(f0)) throw ConfigError("f0", "f0 must be finite and > 0");
}

void CoherentSourceConfig::validate() const {
    if (!(f > 0.0) || !std::isfinite(f)) throw ConfigError("f", "carrier frequency f must be finite and > 0");
    if (!(mean_n > 0.0) || !std::isfinite(mean_n))
        throw ConfigError("mean_n", "mean_n must be finite and > 0");
    if (!(coherence_time >= 0.0) || !std::isfinite(coherence_time))
        throw ConfigError("coherence_time", "coherence_time must be finite and >= 0");
}

SpdcPair sample_spdc_pair(const SpdcEnsembleConfig& cfg, std::uint64_t pair_index) {
    const CounterRng rng(cfg.seed);
    SpdcPair pair;
    pair.pair_index = pair_index;
    pair.delta_f = cfg.sigma_f * rng.normal(Stream::spdc_detuning, pair_index);
    pair.psi = kTwoPi * rng.uniform(Stream::spdc_birth_phase, pair_index);
    if (pair.psi >= kTwoPi) pair.psi = 0.0;  // u close to 1 may round up to 2 pi
    return pair;
}

std::vector<SpdcPair> sample_spdc_range(const SpdcEnsembleConfig& cfg, std::uint64_t first,
                                        std::uint64_t count) {
    cfg.validate();
    std::vector<SpdcPair> out;
    out.reserve(count);
    for (std::uint64_t j = first; j < first + count; ++j) out.push_back(sample_spdc_pair(cfg, j));
    return out;
}

std::vector<SpdcPair> sample_spdc_ensemble(const SpdcEnsembleConfig& cfg) {
    cfg.validate();
    return sample_spdc_range(cfg, 0, static_cast<std::uint64_t>(cfg.n_pairs));
}

FieldPaird pair_fields(const SpdcPair& /*pair*/, ComplexAmplituded e0) {
    return make_field_pair(e0, ComplexAmplituded(0.0, 1.0) * e0);
}

double reduced_pair_phase(const SpdcPair& pair, double tau) {
    return kTwoPi * (2.0 * pair.delta_f) * tau;
}

double full_pair_phase(const SpdcPair& pair, double x, double f0) {
    return (kTwoPi / kSpeedOfLight) * (0.5 * f0 + 2.0 * pair.delta_f) * x + pair.psi;
}

std::int64_t poisson_inverse_cdf(double mean, double u) {
    if (!(mean > 0.0)) throw DomainError("Poisson mean must be > 0");
    return mean < kSequentialPoissonLimit ? poisson_sequential(mean, u) : poisson_from_mode(mean, u);
}

std::int64_t poisson_pulse_count(const CoherentSourceConfig& cfg, std::uint64_t pulse_index) {
    const CounterRng rng(cfg.seed);
    return poisson_inverse_cdf(cfg.mean_n, rng.uniform(Stream::pulse_photon_count, pulse_index));
}

double bunching_ratio(double mean_n) {
    if (!(mean_n > 0.0)) throw DomainError("bunching_ratio requires mean_n > 0");
    return mean_n / 2.0;
}

double gaussian_fwhm(double sigma) {
    return 2.0 * std::sqrt(2.0 * std::numbers::ln2) * sigma;
}

SpectrumStats spectrum_stats(const SpdcEnsembleConfig& cfg) {
    cfg.validate();
    SpectrumStats s;
    s.fwhm = gaussian_fwhm(cfg.sigma_f);
    s.coherence_time = 1.0 / s.fwhm;
    s.coherence_length = kSpeedOfLight / s.fwhm;
    return s;
}

}  // namespace homsim
