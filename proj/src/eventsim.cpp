#include "homsim/eventsim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "homsim/counter_rng.hpp"
#include "homsim/errors.hpp"
#include "homsim/parallel.hpp"

namespace homsim {

namespace {

// Pulses are simulated in fixed-size blocks so the partition never depends on
// the worker count.
constexpr std::uint64_t kPulseBlock = 1u << 16;

template <typename PulseFn>
std::vector<DetectionEvent> simulate_blocks(const EventSimConfig& cfg, PulseFn&& pulse_fn) {
    const auto n_pulses = static_cast<std::uint64_t>(cfg.n_pulses);
    const std::size_t n_blocks = (n_pulses + kPulseBlock - 1) / kPulseBlock;
    std::vector<std::vector<DetectionEvent>> blocks(n_blocks);

    parallel_chunks(n_blocks, cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t b = begin; b < end; ++b) {
            const std::uint64_t first = b * kPulseBlock;
            const std::uint64_t last = std::min(n_pulses, first + kPulseBlock);
            auto& out = blocks[b];
            for (std::uint64_t p = first; p < last; ++p) pulse_fn(p, out);
        }
    });

    std::size_t total = 0;
    for (const auto& b : blocks) total += b.size();
    std::vector<DetectionEvent> events;
    events.reserve(total);
    for (const auto& b : blocks) events.insert(events.end(), b.begin(), b.end());
    return events;
}

}  // namespace

void EventSimConfig::validate() const {
    if (n_pulses < 1) throw ConfigError("n_pulses", "n_pulses must be >= 1, got " + std::to_string(n_pulses));
    if (!(pulse_period > 0.0) || !std::isfinite(pulse_period))
        throw ConfigError("pulse_period", "pulse_period must be finite and > 0");
    if (!(coincidence_window > 0.0) || !(coincidence_window <= 0.5 * pulse_period))
        throw ConfigError("coincidence_window", "coincidence_window must satisfy 0 < window <= pulse_period / 2");
    if (!std::isfinite(phi)) throw ConfigError("phi", "phi must be finite");
}

double route_probability_a(double phi) {
    return 0.5 * (1.0 - std::cos(phi));
}

std::vector<DetectionEvent> simulate_coherent_stream(const EventSimConfig& cfg) {
    cfg.validate();
    cfg.source.validate();
    const CounterRng rng(cfg.seed);
    const double p_a = route_probability_a(cfg.phi);

    return simulate_blocks(cfg, [&](std::uint64_t pulse, std::vector<DetectionEvent>& out) {
        const auto n = poisson_pulse_count(cfg.source, pulse);
        const double t = static_cast<double>(pulse) * cfg.pulse_period;
        for (std::int64_t slot = 0; slot < n; ++slot) {
            const double u = rng.uniform(Stream::photon_routing, pulse, static_cast<std::uint32_t>(slot));
            out.push_back({u < p_a ? Detector::A : Detector::B, pulse, t});
        }
    });
}

std::vector<DetectionEvent> simulate_spdc_stream(std::span<const SpdcPair> ensemble, double tau,
                                                 const EventSimConfig& cfg) {
    if (ensemble.empty()) throw DomainError("SPDC stream requires a non-empty ensemble");
    cfg.validate();
    const CounterRng rng(cfg.seed);

    return simulate_blocks(cfg, [&](std::uint64_t pulse, std::vector<DetectionEvent>& out) {
        const auto& pair = ensemble[pulse % ensemble.size()];
        const double s = std::sin(reduced_pair_phase(pair, tau));
        const double p_split = 0.5 * s * s;
        const double t = static_cast<double>(pulse) * cfg.pulse_period;
        if (rng.uniform(Stream::pair_split, pulse) < p_split) {
            out.push_back({Detector::A, pulse, t});
            out.push_back({Detector::B, pulse, t});
        } else {
            const Detector d = rng.uniform(Stream::bunch_side, pulse) < 0.5 ? Detector::A : Detector::B;
            out.push_back({d, pulse, t});
            out.push_back({d, pulse, t});
        }
    });
}

CoincidenceCounts count_coincidences(std::span<const DetectionEvent> events, double window,
                                     std::optional<std::int64_t> n_pulses) {
    for (std::size_t i = 1; i < events.size(); ++i)
        if (events[i].time < events[i - 1].time)
            throw DomainError("coincidence counting requires time-sorted events (index " +
                              std::to_string(i) + ")");

    CoincidenceCounts c;
    std::uint64_t max_pulse = 0;
    std::size_t i = 0;
    while (i < events.size()) {
        std::size_t j = i;
        while (j < events.size() && events[j].pulse_index == events[i].pulse_index) ++j;

        bool coincident = false;
        for (std::size_t a = i; a < j; ++a) {
            if (events[a].detector == Detector::A) ++c.n_a; else ++c.n_b;
            for (std::size_t b = a + 1; b < j && !coincident; ++b)
                coincident = events[a].detector != events[b].detector &&
                             std::abs(events[b].time - events[a].time) <= window;
        }
        if (coincident) ++c.n_ab;
        if (j - i == 2) {
            ++c.n_two_photon;
            if (coincident) ++c.n_ab_two_photon;
        }
        max_pulse = std::max(max_pulse, events[i].pulse_index);
        i = j;
    }
    c.n_pulses_used = n_pulses ? *n_pulses
                               : (events.empty() ? 0 : static_cast<std::int64_t>(max_pulse) + 1);
    return c;
}

NormalizedCoincidence estimate_normalized_coincidence(const CoincidenceCounts& counts,
                                                      NormalizationMode mode,
                                                      const std::optional<CoincidenceCounts>& baseline) {
    NormalizedCoincidence r;
    if (mode == NormalizationMode::mzi_coherent) {
        if (counts.n_two_photon == 0) return r;
        const double n2 = static_cast<double>(counts.n_two_photon);
        const double p = static_cast<double>(counts.n_ab_two_photon) / n2;
        r.status = NormalizedCoincidence::Status::ok;
        r.value = 2.0 * p;
        r.std_error = 2.0 * std::sqrt(p * (1.0 - p) / n2);
        return r;
    }

    if (!baseline) throw DomainError("hom_spdc normalization requires a baseline run");
    if (baseline->n_ab == 0) return r;
    const double n = static_cast<double>(counts.n_ab);
    const double nb = static_cast<double>(baseline->n_ab);
    r.status = NormalizedCoincidence::Status::ok;
    r.value = n / nb;
    r.std_error = n > 0.0 ? r.value * std::sqrt(1.0 / n + 1.0 / nb) : 1.0 / nb;
    return r;
}

}  // namespace homsim
