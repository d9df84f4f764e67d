#include "homsim/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "homsim/errors.hpp"

namespace homsim {

namespace {

constexpr std::array<std::pair<RunMode, std::string_view>, 6> kModeNames{{
    {RunMode::hom_analytic, "hom-analytic"},
    {RunMode::hom_ensemble, "hom-ensemble"},
    {RunMode::hom_event, "hom-event"},
    {RunMode::mzi_scan, "mzi-scan"},
    {RunMode::mzi_event, "mzi-event"},
    {RunMode::washout_scan, "washout-scan"},
}};

struct Entry {
    std::string value;
    std::size_t line = 0;  // 0: command-line override
};

using Entries = std::map<std::string, Entry, std::less<>>;

std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

bool known_key(std::string_view key) {
    const auto& keys = config_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

Entries tokenize(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    Entries entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigSyntaxError(line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigSyntaxError(line_no, "missing key before '='");
        if (value.empty()) throw ConfigSyntaxError(line_no, "missing value for '" + std::string(key) + "'");
        if (!known_key(key)) throw UnknownKeyError(std::string(key), line_no);
        if (entries.contains(key))
            throw ConfigSyntaxError(line_no, "duplicate key '" + std::string(key) + "'");
        entries.emplace(std::string(key), Entry{std::string(value), line_no});
    }
    return entries;
}

class Reader {
public:
    explicit Reader(const Entries& entries) : entries_(entries) {}

    bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

    const std::string& raw(const std::string& key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end()) throw MissingKeyError(key);
        return it->second.value;
    }

    double real(const std::string& key) const {
        const auto& s = raw(key);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
            throw TypeMismatchError(key, "a finite real number", s);
        return v;
    }

    double real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

    std::int64_t integer(const std::string& key) const {
        const auto& s = raw(key);
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) throw TypeMismatchError(key, "an integer", s);
        return v;
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback) const {
        return has(key) ? integer(key) : fallback;
    }

    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const auto& s = raw(key);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw TypeMismatchError(key, "an unsigned 64-bit integer", s);
        return v;
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const auto& s = raw(key);
        if (s == "true") return true;
        if (s == "false") return false;
        throw TypeMismatchError(key, "true or false", s);
    }

    std::string text(const std::string& key, std::string fallback) const {
        return has(key) ? raw(key) : std::move(fallback);
    }

private:
    const Entries& entries_;
};

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ValidationError(field, what);
}

template <typename Fn>
void revalidate(Fn&& fn) {
    try {
        fn();
    } catch (const ValidationError&) {
        throw;
    } catch (const ConfigError& e) {
        throw ValidationError(e.field(), e.what());
    }
}

bool uses_spdc(RunMode m) {
    return m == RunMode::hom_analytic || m == RunMode::hom_ensemble || m == RunMode::hom_event ||
           m == RunMode::washout_scan;
}

bool uses_events(RunMode m) { return m == RunMode::hom_event || m == RunMode::mzi_event; }

std::int64_t default_steps(RunMode m) {
    switch (m) {
        case RunMode::hom_analytic:
        case RunMode::hom_ensemble: return 2001;
        case RunMode::hom_event: return 7;
        case RunMode::mzi_scan: return 1001;
        case RunMode::mzi_event: return 9;
        case RunMode::washout_scan: return 1001;
    }
    return 2;
}

std::string format_real(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

RunConfig build(const Entries& entries) {
    const Reader in(entries);
    RunConfig cfg;

    const auto& mode_text = in.raw("mode");
    const auto mode = parse_run_mode(mode_text);
    if (!mode) throw ValidationError("mode", "unknown mode '" + mode_text + "'");
    cfg.mode = *mode;

    cfg.seed = in.unsigned64("seed", 0);
    const auto threads = in.integer("threads", 1);
    require(threads >= 1 && threads <= 1024, "threads", "threads must be in [1, 1024]");
    cfg.threads = static_cast<unsigned>(threads);
    cfg.output_path = in.text("output", "");

    cfg.spdc.seed = cfg.seed;
    cfg.spdc.f0 = kDefaultPumpFrequency;
    cfg.coherent.seed = cfg.seed;

    if (uses_spdc(cfg.mode)) {
        cfg.spdc.sigma_f = in.real("sigma_f");
        if (cfg.mode != RunMode::hom_analytic) cfg.spdc.f0 = in.real("f0", kDefaultPumpFrequency);
    }
    if (uses_events(cfg.mode)) {
        cfg.event.n_pulses = in.integer("n_pulses");
        cfg.event.pulse_period = in.real("pulse_period", 1e-8);
        cfg.event.coincidence_window = in.real("coincidence_window", 0.25 * cfg.event.pulse_period);
    }
    if (cfg.mode == RunMode::hom_ensemble || cfg.mode == RunMode::washout_scan) {
        cfg.spdc.n_pairs = in.integer("n_pairs");
    } else if (cfg.mode == RunMode::hom_event) {
        cfg.spdc.n_pairs = in.integer("n_pairs", cfg.event.n_pulses);
    }
    if (uses_spdc(cfg.mode)) revalidate([&] { cfg.spdc.validate(); });

    cfg.scan.steps = in.integer("steps", default_steps(cfg.mode));
    require(cfg.scan.steps >= 2, "steps", "steps must be >= 2, got " + std::to_string(cfg.scan.steps));

    switch (cfg.mode) {
        case RunMode::hom_analytic:
        case RunMode::hom_ensemble:
        case RunMode::hom_event: {
            const double t_c = spectrum_stats(cfg.spdc).coherence_time;
            cfg.scan.min = in.real("tau_min", -3.0 * t_c);
            cfg.scan.max = in.real("tau_max", 3.0 * t_c);
            require(cfg.scan.min < cfg.scan.max, "tau_max", "tau_min must be < tau_max");
            if (cfg.mode == RunMode::hom_event) {
                cfg.event.baseline_tau = in.real("baseline_tau", 10.0 * t_c);
            }
            break;
        }
        case RunMode::mzi_scan:
        case RunMode::mzi_event:
            cfg.scan.min = in.real("phi_min", 0.0);
            cfg.scan.max = in.real("phi_max", 4.0 * std::numbers::pi);
            require(cfg.scan.min < cfg.scan.max, "phi_max", "phi_min must be < phi_max");
            break;
        case RunMode::washout_scan: {
            const double wavelength = 2.0 * kSpeedOfLight / cfg.spdc.f0;
            cfg.scan.min = in.real("x_min", 0.0);
            cfg.scan.max = in.real("x_max", cfg.scan.min + 10.0 * wavelength);
            require(cfg.scan.max - cfg.scan.min >= 3.0 * wavelength, "x_max",
                    "washout range must span at least three carrier wavelengths (" +
                        format_real(3.0 * wavelength) + " m)");
            cfg.phase_locked = in.boolean("phase_locked", false);
            break;
        }
    }

    if (cfg.mode == RunMode::mzi_scan || cfg.mode == RunMode::washout_scan) {
        cfg.i0 = in.real("i0", 1.0);
        require(cfg.i0 >= 0.0, "i0", "i0 must be >= 0");
    }

    if (uses_events(cfg.mode)) {
        require(cfg.event.n_pulses >= 1, "n_pulses", "n_pulses must be >= 1");
        require(cfg.event.pulse_period > 0.0, "pulse_period", "pulse_period must be > 0");
        require(cfg.event.coincidence_window > 0.0 &&
                    cfg.event.coincidence_window <= 0.5 * cfg.event.pulse_period,
                "coincidence_window", "coincidence_window must satisfy 0 < window <= pulse_period / 2");
    }
    if (cfg.mode == RunMode::mzi_event) {
        cfg.coherent.mean_n = in.real("mean_n");
        cfg.coherent.f = in.real("carrier_f", kDefaultCarrierFrequency);
        cfg.coherent.coherence_time = in.real("coherence_time", 1e-6);
        revalidate([&] { cfg.coherent.validate(); });
    }
    return cfg;
}

}  // namespace

std::string_view to_string(RunMode mode) {
    for (const auto& [m, name] : kModeNames)
        if (m == mode) return name;
    return "?";
}

std::optional<RunMode> parse_run_mode(std::string_view text) {
    for (const auto& [m, name] : kModeNames)
        if (name == text) return m;
    return std::nullopt;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "mode",     "seed",     "threads",      "output",       "sigma_f",
        "f0",       "n_pairs",  "tau_min",      "tau_max",      "phi_min",
        "phi_max",  "x_min",    "x_max",        "steps",        "i0",
        "phase_locked", "n_pulses", "pulse_period", "coincidence_window", "baseline_tau",
        "mean_n",   "carrier_f", "coherence_time",
    };
    return keys;
}

RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
    auto entries = tokenize(text);
    for (const auto& [key, value] : overrides) {
        if (!known_key(key)) throw UnknownKeyError(key, 0);
        entries[key] = Entry{value, 0};
    }
    return build(entries);
}

std::optional<std::string> config_value(std::string_view text, std::string_view key) {
    const auto entries = tokenize(text);
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second.value;
}

RunConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError(path, "error reading config file");
    return parse_config(buf.str(), overrides);
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream out;
    const auto kv = [&](std::string_view key, const std::string& value) {
        out << key << " = " << value << '\n';
    };
    kv("mode", std::string(to_string(cfg.mode)));
    kv("seed", std::to_string(cfg.seed));
    kv("threads", std::to_string(cfg.threads));
    if (!cfg.output_path.empty()) kv("output", cfg.output_path);

    if (uses_spdc(cfg.mode)) {
        kv("sigma_f", format_real(cfg.spdc.sigma_f));
        if (cfg.mode != RunMode::hom_analytic) kv("f0", format_real(cfg.spdc.f0));
        if (cfg.mode != RunMode::hom_analytic) kv("n_pairs", std::to_string(cfg.spdc.n_pairs));
    }
    kv("steps", std::to_string(cfg.scan.steps));
    switch (cfg.mode) {
        case RunMode::hom_analytic:
        case RunMode::hom_ensemble:
        case RunMode::hom_event:
            kv("tau_min", format_real(cfg.scan.min));
            kv("tau_max", format_real(cfg.scan.max));
            if (cfg.mode == RunMode::hom_event) kv("baseline_tau", format_real(cfg.event.baseline_tau));
            break;
        case RunMode::mzi_scan:
        case RunMode::mzi_event:
            kv("phi_min", format_real(cfg.scan.min));
            kv("phi_max", format_real(cfg.scan.max));
            break;
        case RunMode::washout_scan:
            kv("x_min", format_real(cfg.scan.min));
            kv("x_max", format_real(cfg.scan.max));
            kv("phase_locked", cfg.phase_locked ? "true" : "false");
            break;
    }
    if (cfg.mode == RunMode::mzi_scan || cfg.mode == RunMode::washout_scan) kv("i0", format_real(cfg.i0));
    if (uses_events(cfg.mode)) {
        kv("n_pulses", std::to_string(cfg.event.n_pulses));
        kv("pulse_period", format_real(cfg.event.pulse_period));
        kv("coincidence_window", format_real(cfg.event.coincidence_window));
    }
    if (cfg.mode == RunMode::mzi_event) {
        kv("mean_n", format_real(cfg.coherent.mean_n));
        kv("carrier_f", format_real(cfg.coherent.f));
        kv("coherence_time", format_real(cfg.coherent.coherence_time));
    }
    return out.str();
}

}  // namespace homsim
