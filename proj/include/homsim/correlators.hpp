#pragma once

// Correlation functions for the two source models:
//  * SPDC pairs on a beam splitter: g2(tau) = 2 <sin^2 phi_j(tau)> over a
//    frozen ensemble, with the Gaussian closed form as its oracle.
//  * Coherent light in a Mach-Zehnder: output intensities, normalized
//    coincidence rate R_AB = sin^2 phi, and g2 evaluated on the {phi, phi + pi}
//    swap pair so the dark-port 0/0 never occurs.
//  * The carrier-wavelength fringe of <I_A>(x), which averages away under a
//    uniform birth phase.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>

#include "homsim/scan.hpp"
#include "homsim/sources.hpp"

namespace homsim {

/// Sum with a fixed pairwise reduction tree determined only by values.size().
double pairwise_sum(std::span<const double> values);

/// (2 / N) sum_j sin^2(2 pi (2 delta_f_j) tau). Throws DomainError on an empty ensemble.
double hom_g2_ensemble(std::span<const SpdcPair> ensemble, double tau);

/// 1 - exp(-32 pi^2 sigma_f^2 tau^2), the Gaussian-detuning average of hom_g2_ensemble.
template <typename Scalar>
Scalar hom_g2_analytic(Scalar sigma_f, Scalar tau) {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    return Scalar(1) - std::exp(Scalar(-32) * pi * pi * sigma_f * sigma_f * tau * tau);
}

/// |tau| at which hom_g2_analytic equals 1/2.
double hom_half_depth_delay(double sigma_f);

/// g2 over [tau_min, tau_max] on one sampled ensemble (frozen across points).
CorrelationScan hom_dip_scan(const SpdcEnsembleConfig& cfg, double tau_min, double tau_max,
                             std::int64_t n_steps, unsigned threads = 1);

/// Same, for a caller-supplied ensemble.
CorrelationScan hom_dip_scan(std::span<const SpdcPair> ensemble, double tau_min, double tau_max,
                             std::int64_t n_steps, unsigned threads = 1);

struct MziIntensities {
    double i_a = 0.0;
    double i_b = 0.0;
};

/// Output intensities of a single-input MZI, from the transfer-matrix fields:
/// ((i0/2)(1 - cos phi), (i0/2)(1 + cos phi)).
MziIntensities mzi_intensities(double phi, double i0 = 1.0);

/// R_AB = 1 - cos^2 phi.
double coincidence_rate(double phi);

/// <I_A I_B> / (<I_A><I_B>) averaged over {phi, phi + pi}.
double mzi_g2(double phi);

enum class MziQuantity { i_a, i_b, r_ab, g2 };

const char* to_string(MziQuantity q);

CorrelationScan mzi_fringe_scan(double phi_min, double phi_max, std::int64_t n_steps,
                                MziQuantity which, double i0 = 1.0);

/// Index of the largest-magnitude nonzero DFT bin (1 .. n/2) of the
/// mean-subtracted results; 0 when every bin is negligible.
/// Throws DomainError for fewer than 8 points or non-uniform spacing.
std::size_t dominant_fringe_bin(const CorrelationScan& scan);

/// dominant_fringe_bin / (n * spacing), in cycles per unit of the swept variable.
double dominant_fringe_frequency(const CorrelationScan& scan);

/// (max - min) / (max + min); 0 for an all-zero scan.
double fringe_visibility(const CorrelationScan& scan);

/// <I_A>(x) = (i0 / N) sum_j (1 - cos full_pair_phase(pair_j, x, f0)).
/// The range must cover at least three carrier wavelengths 2c / f0.
CorrelationScan spdc_washout_scan(const SpdcEnsembleConfig& cfg, double x_min, double x_max,
                                  std::int64_t n_steps, double i0 = 1.0, unsigned threads = 1);

CorrelationScan spdc_washout_scan(std::span<const SpdcPair> ensemble, double f0, double x_min,
                                  double x_max, std::int64_t n_steps, double i0 = 1.0,
                                  unsigned threads = 1);

}  // namespace homsim
