// homsim command-line driver.
//
//   homsim hom-scan     [--mode hom-analytic|hom-ensemble|hom-event] ...
//   homsim mzi-scan     ...
//   homsim event-sim    [--mode mzi-event|hom-event] ...
//   homsim washout-scan ...
//
// Exit codes: 0 success, 1 config/validation error, 2 runtime or I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homsim/config.hpp"
#include "homsim/errors.hpp"
#include "homsim/harness.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Subcommand {
    CLI::App* app = nullptr;
    std::vector<std::string> modes;  // first entry is the default
};

// Flag name -> config key. Every flag is registered on every subcommand;
// keys the resolved mode does not use are ignored by the parser.
const std::vector<std::pair<std::string, std::string>> kNumericFlags{
    {"--sigma-f", "sigma_f"},       {"--f0", "f0"},
    {"--n-pairs", "n_pairs"},       {"--tau-min", "tau_min"},
    {"--tau-max", "tau_max"},       {"--phi-min", "phi_min"},
    {"--phi-max", "phi_max"},       {"--x-min", "x_min"},
    {"--x-max", "x_max"},           {"--steps", "steps"},
    {"--i0", "i0"},                 {"--n-pulses", "n_pulses"},
    {"--pulse-period", "pulse_period"}, {"--window", "coincidence_window"},
    {"--baseline-tau", "baseline_tau"}, {"--mean-n", "mean_n"},
    {"--carrier-f", "carrier_f"},   {"--coherence-time", "coherence_time"},
    {"--threads", "threads"},
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw homsim::IoError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon correlation simulator: HOM dip, MZI fringes, event-level coincidences"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::string mode_flag;
    std::optional<std::uint64_t> seed;
    bool phase_locked = false;
    std::vector<std::string> flag_values(kNumericFlags.size());

    std::vector<Subcommand> subs{
        {app.add_subcommand("hom-scan", "HOM dip g2(tau): analytic, ensemble or event-level"),
         {"hom-ensemble", "hom-analytic", "hom-event"}},
        {app.add_subcommand("mzi-scan", "MZI intensities, R_AB and g2 versus phase"), {"mzi-scan"}},
        {app.add_subcommand("event-sim", "Event-level coincidence simulation"), {"mzi-event", "hom-event"}},
        {app.add_subcommand("washout-scan", "Carrier-wavelength fringe of <I_A> under random birth phase"),
         {"washout-scan"}},
    };

    for (auto& sub : subs) {
        auto* s = sub.app;
        s->add_option("--config", config_path, "Config file (key = value)");
        s->add_option("--output", output_path, "CSV output path (default: stdout)");
        s->add_option("--seed", seed, "64-bit seed");
        s->add_option("--mode", mode_flag, "Run mode")->check(CLI::IsMember(sub.modes));
        for (std::size_t i = 0; i < kNumericFlags.size(); ++i)
            s->add_option(kNumericFlags[i].first, flag_values[i], "Overrides config key " + kNumericFlags[i].second);
        if (sub.modes.front() == "washout-scan")
            s->add_flag("--phase-locked", phase_locked, "Set psi = 0 and delta_f = 0 for every pair");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const Subcommand* active = nullptr;
    for (const auto& sub : subs)
        if (sub.app->parsed()) active = &sub;

    try {
        const std::string text = config_path.empty() ? std::string{} : read_file(config_path);

        std::string mode = mode_flag;
        if (mode.empty()) mode = homsim::config_value(text, "mode").value_or(active->modes.front());
        if (std::find(active->modes.begin(), active->modes.end(), mode) == active->modes.end()) {
            std::cerr << "error: mode '" << mode << "' is not available under '" << active->app->get_name()
                      << "'\n";
            return kExitConfig;
        }

        homsim::ConfigOverrides overrides{{"mode", mode}};
        if (seed) overrides.emplace_back("seed", std::to_string(*seed));
        if (!output_path.empty()) overrides.emplace_back("output", output_path);
        if (phase_locked) overrides.emplace_back("phase_locked", "true");
        for (std::size_t i = 0; i < kNumericFlags.size(); ++i)
            if (!flag_values[i].empty()) overrides.emplace_back(kNumericFlags[i].second, flag_values[i]);

        const auto cfg = homsim::parse_config(text, overrides);
        const auto scan = homsim::run(cfg);
        if (cfg.output_path.empty()) homsim::write_csv(scan, std::cout);
        return 0;
    } catch (const homsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const homsim::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
