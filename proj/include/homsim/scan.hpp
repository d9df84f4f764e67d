#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace homsim {

struct ScanPoint {
    double value = 0.0;
    double result = 0.0;

    friend bool operator==(const ScanPoint&, const ScanPoint&) = default;
};

/// Additional result series aligned index-by-index with CorrelationScan::points.
struct ScanColumn {
    std::string name;
    std::vector<double> values;

    friend bool operator==(const ScanColumn&, const ScanColumn&) = default;
};

using MetaValue = std::variant<double, std::int64_t, std::uint64_t, std::string>;

/// A swept variable ("tau_s", "phi_rad" or "x_m") with its correlator values.
/// Points are ascending in value.
struct CorrelationScan {
    std::string variable_name;
    std::string result_name;
    std::vector<ScanPoint> points;
    std::vector<ScanColumn> extra_columns;
    std::map<std::string, MetaValue> meta;
    /// Scalars written as trailing `# key=value` lines in CSV output.
    std::vector<std::pair<std::string, double>> footer;

    std::vector<double> values() const;
    std::vector<double> results() const;
    const ScanColumn* column(const std::string& name) const;

    friend bool operator==(const CorrelationScan&, const CorrelationScan&) = default;
};

/// n uniformly spaced samples over [lo, hi], endpoints included.
/// Sample i is (1 - s) lo + s hi with s = i / (n - 1), so symmetric ranges
/// hit 0 exactly when n is odd.
std::vector<double> uniform_grid(double lo, double hi, std::int64_t n);

}  // namespace homsim
