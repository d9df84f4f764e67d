#include "homsim/correlators.hpp"

#include <algorithm>
#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "homsim/errors.hpp"
#include "homsim/fields.hpp"
#include "homsim/parallel.hpp"

namespace homsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kPairwiseLeaf = 16;

double pairwise_sum_impl(const double* v, std::size_t n) {
    if (n <= kPairwiseLeaf) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

double mean_sin2(std::span<const SpdcPair> ensemble, double tau, std::vector<double>& scratch) {
    scratch.resize(ensemble.size());
    for (std::size_t j = 0; j < ensemble.size(); ++j) {
        const double s = std::sin(reduced_pair_phase(ensemble[j], tau));
        scratch[j] = s * s;
    }
    return pairwise_sum(scratch) / static_cast<double>(ensemble.size());
}

void require_ensemble(std::span<const SpdcPair> ensemble) {
    if (ensemble.empty()) throw DomainError("correlator requires a non-empty ensemble");
}

double require_uniform_spacing(const CorrelationScan& scan) {
    const auto& p = scan.points;
    if (p.size() < 8) throw DomainError("fringe analysis requires at least 8 points");
    const double step = (p.back().value - p.front().value) / static_cast<double>(p.size() - 1);
    if (!(step > 0.0)) throw DomainError("fringe analysis requires ascending values");
    for (std::size_t i = 1; i < p.size(); ++i) {
        const double d = p[i].value - p[i - 1].value;
        if (std::abs(d - step) > 1e-6 * step)
            throw DomainError("fringe analysis requires uniformly spaced values");
    }
    return step;
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_impl(values.data(), values.size());
}

double hom_g2_ensemble(std::span<const SpdcPair> ensemble, double tau) {
    require_ensemble(ensemble);
    std::vector<double> scratch;
    return 2.0 * mean_sin2(ensemble, tau, scratch);
}

double hom_half_depth_delay(double sigma_f) {
    return std::sqrt(std::numbers::ln2 / (32.0 * kPi * kPi * sigma_f * sigma_f));
}

CorrelationScan hom_dip_scan(std::span<const SpdcPair> ensemble, double tau_min, double tau_max,
                             std::int64_t n_steps, unsigned threads) {
    require_ensemble(ensemble);
    const auto taus = uniform_grid(tau_min, tau_max, n_steps);

    CorrelationScan scan;
    scan.variable_name = "tau_s";
    scan.result_name = "g2";
    scan.points.resize(taus.size());
    parallel_chunks(taus.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> scratch;
        for (std::size_t i = begin; i < end; ++i)
            scan.points[i] = {taus[i], 2.0 * mean_sin2(ensemble, taus[i], scratch)};
    });
    scan.meta["n_pairs"] = static_cast<std::int64_t>(ensemble.size());
    scan.meta["mode"] = std::string("hom-ensemble");
    return scan;
}

CorrelationScan hom_dip_scan(const SpdcEnsembleConfig& cfg, double tau_min, double tau_max,
                             std::int64_t n_steps, unsigned threads) {
    const auto stats = spectrum_stats(cfg);
    const auto ensemble = sample_spdc_ensemble(cfg);
    auto scan = hom_dip_scan(ensemble, tau_min, tau_max, n_steps, threads);
    scan.meta["sigma_f"] = cfg.sigma_f;
    scan.meta["seed"] = cfg.seed;
    scan.meta["t_c"] = stats.coherence_time;
    return scan;
}

MziIntensities mzi_intensities(double phi, double i0) {
    if (!(i0 >= 0.0)) throw DomainError("mzi_intensities requires i0 >= 0");
    const auto out = homsim::apply(mzi_transfer(phi), make_field_pair<double>(std::sqrt(i0), 0.0));
    return {intensity(out(0)), intensity(out(1))};
}

double coincidence_rate(double phi) {
    const double s = std::sin(phi);
    return s * s;
}

double mzi_g2(double phi) {
    const auto direct = mzi_intensities(phi);
    const auto swapped = mzi_intensities(phi + kPi);
    const double mean_ab = 0.5 * (direct.i_a * direct.i_b + swapped.i_a * swapped.i_b);
    const double mean_a = 0.5 * (direct.i_a + swapped.i_a);
    const double mean_b = 0.5 * (direct.i_b + swapped.i_b);
    return mean_ab / (mean_a * mean_b);
}

const char* to_string(MziQuantity q) {
    switch (q) {
        case MziQuantity::i_a: return "i_a";
        case MziQuantity::i_b: return "i_b";
        case MziQuantity::r_ab: return "r_ab";
        case MziQuantity::g2: return "g2";
    }
    return "?";
}

CorrelationScan mzi_fringe_scan(double phi_min, double phi_max, std::int64_t n_steps,
                                MziQuantity which, double i0) {
    const auto phis = uniform_grid(phi_min, phi_max, n_steps);
    CorrelationScan scan;
    scan.variable_name = "phi_rad";
    scan.result_name = to_string(which);
    scan.points.reserve(phis.size());
    for (double phi : phis) {
        double r = 0.0;
        switch (which) {
            case MziQuantity::i_a: r = mzi_intensities(phi, i0).i_a; break;
            case MziQuantity::i_b: r = mzi_intensities(phi, i0).i_b; break;
            case MziQuantity::r_ab: r = coincidence_rate(phi); break;
            case MziQuantity::g2: r = mzi_g2(phi); break;
        }
        scan.points.push_back({phi, r});
    }
    scan.meta["i0"] = i0;
    scan.meta["mode"] = std::string("mzi-scan");
    return scan;
}

std::size_t dominant_fringe_bin(const CorrelationScan& scan) {
    require_uniform_spacing(scan);
    auto samples = scan.results();
    const double mean = pairwise_sum(samples) / static_cast<double>(samples.size());
    double scale = 0.0;
    for (double& s : samples) {
        s -= mean;
        scale = std::max(scale, std::abs(s));
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spectrum;
    fft.fwd(spectrum, samples);

    const std::size_t n = samples.size();
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double mag = std::abs(spectrum[k]);
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    // A flat record leaves only rounding residue in every bin.
    if (scale == 0.0 || best_mag <= 1e-9 * static_cast<double>(n) * std::max(1.0, std::abs(mean)))
        return 0;
    return best;
}

double dominant_fringe_frequency(const CorrelationScan& scan) {
    const double step = require_uniform_spacing(scan);
    const auto bin = dominant_fringe_bin(scan);
    return static_cast<double>(bin) / (static_cast<double>(scan.points.size()) * step);
}

double fringe_visibility(const CorrelationScan& scan) {
    if (scan.points.empty()) throw DomainError("visibility of an empty scan");
    const auto [lo, hi] = std::minmax_element(
        scan.points.begin(), scan.points.end(),
        [](const ScanPoint& a, const ScanPoint& b) { return a.result < b.result; });
    if (lo->result < 0.0) throw DomainError("visibility requires non-negative results");
    const double sum = hi->result + lo->result;
    if (sum == 0.0) return 0.0;
    return (hi->result - lo->result) / sum;
}

CorrelationScan spdc_washout_scan(std::span<const SpdcPair> ensemble, double f0, double x_min,
                                  double x_max, std::int64_t n_steps, double i0, unsigned threads) {
    require_ensemble(ensemble);
    if (!(f0 > 0.0)) throw DomainError("washout scan requires f0 > 0");
    const double wavelength = 2.0 * kSpeedOfLight / f0;
    if (!(x_max - x_min >= 3.0 * wavelength))
        throw DomainError("washout scan must span at least three carrier wavelengths");
    const auto xs = uniform_grid(x_min, x_max, n_steps);

    CorrelationScan scan;
    scan.variable_name = "x_m";
    scan.result_name = "mean_i_a";
    scan.points.resize(xs.size());
    parallel_chunks(xs.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> scratch(ensemble.size());
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = 0; j < ensemble.size(); ++j)
                scratch[j] = 1.0 - std::cos(full_pair_phase(ensemble[j], xs[i], f0));
            scan.points[i] = {xs[i], i0 * pairwise_sum(scratch) / static_cast<double>(ensemble.size())};
        }
    });
    scan.meta["n_pairs"] = static_cast<std::int64_t>(ensemble.size());
    scan.meta["f0"] = f0;
    scan.meta["i0"] = i0;
    scan.meta["wavelength_m"] = wavelength;
    scan.meta["mode"] = std::string("washout-scan");
    scan.footer.emplace_back("visibility", fringe_visibility(scan));
    return scan;
}

CorrelationScan spdc_washout_scan(const SpdcEnsembleConfig& cfg, double x_min, double x_max,
                                  std::int64_t n_steps, double i0, unsigned threads) {
    const auto ensemble = sample_spdc_ensemble(cfg);
    auto scan = spdc_washout_scan(ensemble, cfg.f0, x_min, x_max, n_steps, i0, threads);
    scan.meta["sigma_f"] = cfg.sigma_f;
    scan.meta["seed"] = cfg.seed;
    return scan;
}

}  // namespace homsim
