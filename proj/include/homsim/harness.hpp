#pragma once

#include <iosfwd>
#include <string>

#include "homsim/config.hpp"
#include "homsim/scan.hpp"

namespace homsim {

/// Run the pipeline selected by cfg.mode. When cfg.output_path is non-empty
/// the scan is also written there as CSV.
///
/// Columns by mode:
///   hom-analytic            tau_s, g2
///   hom-ensemble, hom-event tau_s, g2, g2_analytic
///   mzi-scan                phi_rad, i_a, i_b, r_ab, g2
///   mzi-event               phi_rad, r_ab_event, r_ab, std_error
///   washout-scan            x_m, mean_i_a   (+ "# visibility=..." footer)
CorrelationScan run(const RunConfig& cfg);

/// Header, one row per point, then footer comment lines. Reals use 17
/// significant digits, '.' decimal separator, no locale.
std::string format_csv(const CorrelationScan& scan);
void write_csv(const CorrelationScan& scan, std::ostream& out);
/// Throws IoError carrying the path on failure.
void write_csv(const CorrelationScan& scan, const std::string& path);

std::string format_csv_real(double v);

}  // namespace homsim
