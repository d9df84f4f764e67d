#include "homsim/scan.hpp"

#include "homsim/errors.hpp"

namespace homsim {

std::vector<double> CorrelationScan::values() const {
    std::vector<double> v;
    v.reserve(points.size());
    for (const auto& p : points) v.push_back(p.value);
    return v;
}

std::vector<double> CorrelationScan::results() const {
    std::vector<double> v;
    v.reserve(points.size());
    for (const auto& p : points) v.push_back(p.result);
    return v;
}

const ScanColumn* CorrelationScan::column(const std::string& name) const {
    for (const auto& c : extra_columns)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<double> uniform_grid(double lo, double hi, std::int64_t n) {
    if (n < 2) throw DomainError("scan needs at least 2 steps");
    if (!(lo < hi)) throw DomainError("scan range requires min < max");
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double last = static_cast<double>(n - 1);
    for (std::int64_t i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) / last;
        grid[static_cast<std::size_t>(i)] = (1.0 - s) * lo + s * hi;
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

}  // namespace homsim
