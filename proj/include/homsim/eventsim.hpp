#pragma once

// Event-level Monte Carlo on a slotted pulse train: per-pulse photon numbers,
// stochastic routing to detectors A and B, and windowed coincidence counting.
// Detectors are ideal (unit efficiency, no dark counts, no dead time).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "homsim/sources.hpp"

namespace homsim {

enum class Detector : std::uint8_t { A, B };

struct DetectionEvent {
    Detector detector = Detector::A;
    std::uint64_t pulse_index = 0;
    double time = 0.0;  // pulse_index * pulse_period

    friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

struct EventSimConfig {
    std::int64_t n_pulses = 0;
    double pulse_period = 1e-8;        // s
    CoherentSourceConfig source;
    double phi = 0.0;                  // MZI phase, rad
    double coincidence_window = 1e-9;  // s, 0 < window <= pulse_period / 2
    std::uint64_t seed = 0;
    unsigned threads = 1;              // does not affect results

    void validate() const;
};

struct CoincidenceCounts {
    std::int64_t n_a = 0;
    std::int64_t n_b = 0;
    std::int64_t n_ab = 0;
    std::int64_t n_pulses_used = 0;
    /// Pulses that produced exactly two clicks, and how many of those were A-B coincidences.
    std::int64_t n_two_photon = 0;
    std::int64_t n_ab_two_photon = 0;

    friend bool operator==(const CoincidenceCounts&, const CoincidenceCounts&) = default;
};

/// Probability that one coherent photon exits towards A: (1 - cos phi) / 2.
double route_probability_a(double phi);

/// Poisson photons per pulse, each routed independently to A with route_probability_a(phi).
std::vector<DetectionEvent> simulate_coherent_stream(const EventSimConfig& cfg);

/// One pair per pulse, cycling through the ensemble. The pair splits (A and B)
/// with probability sin^2(phi_j) / 2, otherwise both photons exit the same
/// port, A-A or B-B with equal probability.
std::vector<DetectionEvent> simulate_spdc_stream(std::span<const SpdcPair> ensemble, double tau,
                                                 const EventSimConfig& cfg);

/// Singles and per-pulse coincidences (at most one per pulse) between A and B
/// clicks no further apart than `window`. `n_pulses` sets n_pulses_used; when
/// absent it is taken from the highest pulse index seen.
/// Throws DomainError if the events are not time-sorted.
CoincidenceCounts count_coincidences(std::span<const DetectionEvent> events, double window,
                                     std::optional<std::int64_t> n_pulses = std::nullopt);

enum class NormalizationMode { mzi_coherent, hom_spdc };

struct NormalizedCoincidence {
    enum class Status { ok, insufficient_statistics };

    Status status = Status::insufficient_statistics;
    double value = 0.0;
    double std_error = 0.0;

    bool ok() const noexcept { return status == Status::ok; }
};

/// mzi_coherent: two-photon-pulse coincidences over half the two-photon pulses
///   (1 at phi = pi/2 in expectation).
/// hom_spdc: n_ab(tau) / n_ab(baseline), baseline taken far outside the dip.
NormalizedCoincidence estimate_normalized_coincidence(
    const CoincidenceCounts& counts, NormalizationMode mode,
    const std::optional<CoincidenceCounts>& baseline = std::nullopt);

}  // namespace homsim
