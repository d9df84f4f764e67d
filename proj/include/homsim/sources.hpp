#pragma once

// Photon sources: SPDC pair ensembles (signed Gaussian detuning about the line
// center, uniform birth phase, idler leading the signal by pi/2) and
// attenuated coherent light with Poisson photon number per pulse.

#include <cstdint>
#include <span>
#include <vector>

#include "homsim/fields.hpp"

namespace homsim {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

struct SpdcPair {
    double delta_f = 0.0;       // Hz, signed
    double psi = 0.0;           // rad, [0, 2 pi)
    std::uint64_t pair_index = 0;

    friend bool operator==(const SpdcPair&, const SpdcPair&) = default;
};

struct SpdcEnsembleConfig {
    std::int64_t n_pairs = 10'000;
    double sigma_f = 1.0;       // Hz, Gaussian detuning std
    double f0 = 0.0;            // Hz, pump frequency
    std::uint64_t seed = 0;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;

    friend bool operator==(const SpdcEnsembleConfig&, const SpdcEnsembleConfig&) = default;
};

struct SpectrumStats {
    double fwhm = 0.0;              // Hz
    double coherence_time = 0.0;    // s
    double coherence_length = 0.0;  // m
};

struct CoherentSourceConfig {
    double f = 0.0;                 // Hz, carrier
    double mean_n = 0.0;            // mean photons per pulse
    double coherence_time = 0.0;    // s
    std::uint64_t seed = 0;

    void validate() const;

    friend bool operator==(const CoherentSourceConfig&, const CoherentSourceConfig&) = default;
};

/// Pair j of the ensemble defined by cfg.seed; independent of every other pair.
SpdcPair sample_spdc_pair(const SpdcEnsembleConfig& cfg, std::uint64_t pair_index);

/// Pairs [first, first + count); concatenating chunks reproduces the full ensemble.
std::vector<SpdcPair> sample_spdc_range(const SpdcEnsembleConfig& cfg, std::uint64_t first,
                                        std::uint64_t count);

std::vector<SpdcPair> sample_spdc_ensemble(const SpdcEnsembleConfig& cfg);

/// (E_s, E_i) = (e0, i e0).
FieldPaird pair_fields(const SpdcPair& pair, ComplexAmplituded e0);

/// Ensemble-averaged relative phase at delay tau: 2 pi (2 delta_f) tau.
double reduced_pair_phase(const SpdcPair& pair, double tau);

/// Full idler phase for path-length change x:
/// (2 pi / c)(f0/2 + 2 delta_f) x + psi.
double full_pair_phase(const SpdcPair& pair, double x, double f0);

/// Poisson(mean_n) photon number of pulse `pulse_index`.
std::int64_t poisson_pulse_count(const CoherentSourceConfig& cfg, std::uint64_t pulse_index);

/// Inverse-CDF Poisson sample for a given uniform u in [0, 1).
std::int64_t poisson_inverse_cdf(double mean, double u);

/// P(2)/P(1) for Poisson light, i.e. mean_n / 2. Throws DomainError if mean_n <= 0.
double bunching_ratio(double mean_n);

SpectrumStats spectrum_stats(const SpdcEnsembleConfig& cfg);

/// Gaussian FWHM 2 sqrt(2 ln 2) sigma.
double gaussian_fwhm(double sigma);

}  // namespace homsim
