#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace noether {

/// Per-axis inclusive index ranges; one entry per axis.
struct IndexBox {
    std::vector<std::size_t> lo;
    std::vector<std::size_t> hi;

    std::size_t dims() const noexcept { return lo.size(); }
    std::size_t count() const noexcept;
    bool empty() const noexcept;
};

IndexBox box1(std::size_t lo, std::size_t hi);

/// Residual values over a domain, plus their norms and a verdict.
///
/// per_point holds `width` numbers per domain point in row-major order
/// (axis 0 slowest). For trial-indexed reports the domain is [0, trials-1].
struct ResidualReport {
    std::string label;
    IndexBox domain;
    std::size_t width = 1;
    std::vector<double> per_point;
    double sup_norm = 0.0;
    double l2_norm = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

/// Fills sup/l2 norms and the verdict (sup_norm <= tolerance) from per_point.
ResidualReport make_report(std::string label, IndexBox domain, std::size_t width,
                           std::vector<double> per_point, double tolerance);

/// l2_norm is the plain Euclidean norm of all per-point entries.
nlohmann::ordered_json to_json(const ResidualReport& r, bool verbose);

}  // namespace noether
