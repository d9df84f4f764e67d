#include "homsim/harness.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "homsim/correlators.hpp"
#include "homsim/errors.hpp"
#include "homsim/eventsim.hpp"

namespace homsim {

namespace {

EventSimConfig event_config(const RunConfig& cfg) {
    EventSimConfig e;
    e.n_pulses = cfg.event.n_pulses;
    e.pulse_period = cfg.event.pulse_period;
    e.coincidence_window = cfg.event.coincidence_window;
    e.source = cfg.coherent;
    e.seed = cfg.seed;
    e.threads = cfg.threads;
    return e;
}

void add_common_meta(CorrelationScan& scan, const RunConfig& cfg) {
    scan.meta["mode"] = std::string(to_string(cfg.mode));
    scan.meta["seed"] = cfg.seed;
}

std::vector<double> analytic_column(const CorrelationScan& scan, double sigma_f) {
    std::vector<double> v;
    v.reserve(scan.points.size());
    for (const auto& p : scan.points) v.push_back(hom_g2_analytic(sigma_f, p.value));
    return v;
}

CorrelationScan run_hom_analytic(const RunConfig& cfg) {
    CorrelationScan scan;
    scan.variable_name = "tau_s";
    scan.result_name = "g2";
    for (double tau : uniform_grid(cfg.scan.min, cfg.scan.max, cfg.scan.steps))
        scan.points.push_back({tau, hom_g2_analytic(cfg.spdc.sigma_f, tau)});
    scan.meta["sigma_f"] = cfg.spdc.sigma_f;
    scan.meta["t_c"] = spectrum_stats(cfg.spdc).coherence_time;
    return scan;
}

CorrelationScan run_hom_ensemble(const RunConfig& cfg) {
    auto scan = hom_dip_scan(cfg.spdc, cfg.scan.min, cfg.scan.max, cfg.scan.steps, cfg.threads);
    scan.extra_columns.push_back({"g2_analytic", analytic_column(scan, cfg.spdc.sigma_f)});
    return scan;
}

NormalizedCoincidence checked(const NormalizedCoincidence& r, const std::string& where) {
    if (!r.ok()) throw Error("insufficient statistics for " + where + "; increase n_pulses");
    return r;
}

CorrelationScan run_hom_event(const RunConfig& cfg) {
    const auto ensemble = sample_spdc_ensemble(cfg.spdc);
    const auto ev = event_config(cfg);

    const auto baseline_events = simulate_spdc_stream(ensemble, cfg.event.baseline_tau, ev);
    const auto baseline = count_coincidences(baseline_events, ev.coincidence_window, ev.n_pulses);

    CorrelationScan scan;
    scan.variable_name = "tau_s";
    scan.result_name = "g2";
    for (double tau : uniform_grid(cfg.scan.min, cfg.scan.max, cfg.scan.steps)) {
        const auto events = simulate_spdc_stream(ensemble, tau, ev);
        const auto counts = count_coincidences(events, ev.coincidence_window, ev.n_pulses);
        const auto est = checked(
            estimate_normalized_coincidence(counts, NormalizationMode::hom_spdc, baseline), "baseline run");
        scan.points.push_back({tau, est.value});
    }
    scan.extra_columns.push_back({"g2_analytic", analytic_column(scan, cfg.spdc.sigma_f)});
    scan.meta["sigma_f"] = cfg.spdc.sigma_f;
    scan.meta["n_pairs"] = cfg.spdc.n_pairs;
    scan.meta["n_pulses"] = cfg.event.n_pulses;
    scan.meta["baseline_tau"] = cfg.event.baseline_tau;
    scan.meta["baseline_n_ab"] = baseline.n_ab;
    return scan;
}

CorrelationScan run_mzi_scan(const RunConfig& cfg) {
    auto scan = mzi_fringe_scan(cfg.scan.min, cfg.scan.max, cfg.scan.steps, MziQuantity::i_a, cfg.i0);
    for (auto q : {MziQuantity::i_b, MziQuantity::r_ab, MziQuantity::g2}) {
        const auto s = mzi_fringe_scan(cfg.scan.min, cfg.scan.max, cfg.scan.steps, q, cfg.i0);
        scan.extra_columns.push_back({to_string(q), s.results()});
    }
    return scan;
}

CorrelationScan run_mzi_event(const RunConfig& cfg) {
    CorrelationScan scan;
    scan.variable_name = "phi_rad";
    scan.result_name = "r_ab_event";
    ScanColumn analytic{"r_ab", {}};
    ScanColumn error{"std_error", {}};
    for (double phi : uniform_grid(cfg.scan.min, cfg.scan.max, cfg.scan.steps)) {
        auto ev = event_config(cfg);
        ev.phi = phi;
        const auto events = simulate_coherent_stream(ev);
        const auto counts = count_coincidences(events, ev.coincidence_window, ev.n_pulses);
        const auto est = checked(
            estimate_normalized_coincidence(counts, NormalizationMode::mzi_coherent), "two-photon pulses");
        scan.points.push_back({phi, est.value});
        analytic.values.push_back(coincidence_rate(phi));
        error.values.push_back(est.std_error);
    }
    scan.extra_columns.push_back(std::move(analytic));
    scan.extra_columns.push_back(std::move(error));
    scan.meta["mean_n"] = cfg.coherent.mean_n;
    scan.meta["n_pulses"] = cfg.event.n_pulses;
    return scan;
}

CorrelationScan run_washout(const RunConfig& cfg) {
    if (!cfg.phase_locked)
        return spdc_washout_scan(cfg.spdc, cfg.scan.min, cfg.scan.max, cfg.scan.steps, cfg.i0, cfg.threads);
    std::vector<SpdcPair> locked(static_cast<std::size_t>(cfg.spdc.n_pairs));
    for (std::size_t j = 0; j < locked.size(); ++j) locked[j].pair_index = j;
    auto scan = spdc_washout_scan(locked, cfg.spdc.f0, cfg.scan.min, cfg.scan.max, cfg.scan.steps,
                                  cfg.i0, cfg.threads);
    scan.meta["phase_locked"] = std::int64_t{1};
    return scan;
}

}  // namespace

CorrelationScan run(const RunConfig& cfg) {
    CorrelationScan scan;
    switch (cfg.mode) {
        case RunMode::hom_analytic: scan = run_hom_analytic(cfg); break;
        case RunMode::hom_ensemble: scan = run_hom_ensemble(cfg); break;
        case RunMode::hom_event: scan = run_hom_event(cfg); break;
        case RunMode::mzi_scan: scan = run_mzi_scan(cfg); break;
        case RunMode::mzi_event: scan = run_mzi_event(cfg); break;
        case RunMode::washout_scan: scan = run_washout(cfg); break;
    }
    add_common_meta(scan, cfg);
    if (!cfg.output_path.empty()) write_csv(scan, cfg.output_path);
    return scan;
}

std::string format_csv_real(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), ptr);
}

void write_csv(const CorrelationScan& scan, std::ostream& out) {
    out << scan.variable_name << ',' << scan.result_name;
    for (const auto& c : scan.extra_columns) out << ',' << c.name;
    out << '\n';
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        out << format_csv_real(scan.points[i].value) << ',' << format_csv_real(scan.points[i].result);
        for (const auto& c : scan.extra_columns) out << ',' << format_csv_real(c.values.at(i));
        out << '\n';
    }
    for (const auto& [key, value] : scan.footer) out << "# " << key << '=' << format_csv_real(value) << '\n';
}

std::string format_csv(const CorrelationScan& scan) {
    std::ostringstream out;
    write_csv(scan, out);
    return out.str();
}

void write_csv(const CorrelationScan& scan, const std::string& path) {
    const auto text = format_csv(scan);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open output file for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError(path, "error writing output file");
}

}  // namespace homsim
