#pragma once

// Run configuration: a line-oriented `key = value` document with `#`
// comments. Keys outside the schema are rejected; keys the selected mode
// does not use are ignored. Omitted optional keys resolve to mode defaults
// at parse time, so a RunConfig always holds concrete values.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homsim/sources.hpp"

namespace homsim {

enum class RunMode { hom_analytic, hom_ensemble, hom_event, mzi_scan, mzi_event, washout_scan };

std::string_view to_string(RunMode mode);
std::optional<RunMode> parse_run_mode(std::string_view text);

struct ScanRange {
    double min = 0.0;
    double max = 0.0;
    std::int64_t steps = 2;

    friend bool operator==(const ScanRange&, const ScanRange&) = default;
};

struct EventParams {
    std::int64_t n_pulses = 0;
    double pulse_period = 1e-8;
    double coincidence_window = 2.5e-9;
    double baseline_tau = 0.0;  // hom-event only

    friend bool operator==(const EventParams&, const EventParams&) = default;
};

struct RunConfig {
    RunMode mode = RunMode::hom_analytic;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string output_path;

    SpdcEnsembleConfig spdc;        // hom-*, washout-scan
    CoherentSourceConfig coherent;  // mzi-event
    ScanRange scan;
    EventParams event;              // *-event
    double i0 = 1.0;                // mzi-scan, washout-scan
    bool phase_locked = false;      // washout-scan: psi = 0 and delta_f = 0 for every pair

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Default pump: 405 nm.
inline constexpr double kDefaultPumpFrequency = kSpeedOfLight / 405e-9;
/// Default attenuated-laser carrier: 810 nm.
inline constexpr double kDefaultCarrierFrequency = kSpeedOfLight / 810e-9;

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Parse a config document; `overrides` (key, value) take precedence over
/// file values. Throws ConfigSyntaxError, MissingKeyError, TypeMismatchError
/// or ValidationError.
RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

/// Read and parse a config file. Throws IoError if it cannot be read.
RunConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

/// Raw value of `key` in a config document, if present. Syntax errors throw.
std::optional<std::string> config_value(std::string_view text, std::string_view key);

/// Emit every key the mode uses; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& cfg);

/// Keys accepted by the parser.
const std::vector<std::string>& config_keys();

}  // namespace homsim
