#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "noether/gauge.hpp"
#include "noether/lagrangian.hpp"
#include "noether/report.hpp"

namespace noether {

/// Relative deviation |L[y] - Lbar[ybar]| / max(1, |L[y]|) for one parameter set.
/// With a time transformation Lbar is integrated over the image scale.
double invariance_deviation(const Lagrangian& L, const GaugeFamily& fam, const std::vector<GridFunction>& params,
                            const GridFunction& y);

/// One deviation per trial (domain = trial indices); y must start at index >= 1 and, for m >= 1,
/// end below the scale maximum.
ResidualReport check_invariance(const Lagrangian& L, const GaugeFamily& fam, const GridFunction& y,
                                std::size_t trials, std::uint64_t seed, double tolerance = 1e-12);

/// sum_k integral of (dL/du_k (sum_j T^{kj} p_j)^sigma + dL/dv_k (sum_j T^{kj} p_j)^Delta) over [a, b).
double necessary_condition_residual(const Lagrangian& L, const GaugeFamily& fam, const GridFunction& y,
                                    const std::vector<GridFunction>& params);

/// (-1)^i (1/b1)^{i(i+1)/2}
double identity_coefficient(std::size_t i, double b1);

/// Per j: sum_k sum_i (-1)^i (1/b1)^{i(i+1)/2} ((g^k_ij)^sigma E_k)^{Delta^i}
/// on [a, b]^{kappa^{m+2}}. Throws DomainError without condition (H).
std::vector<ResidualReport> noether_identity(const Lagrangian& L, const GaugeFamily& fam, const GridFunction& y,
                                             double tolerance = 1e-9);

/// As noether_identity plus, once per j, sum_i (-1)^i (1/b1)^{i(i+1)/2} ((f_ij)^sigma E^s)^{Delta^i}.
std::vector<ResidualReport> noether_identity_time(const Lagrangian& L, const GaugeFamily& fam, const GridFunction& y,
                                                  double tolerance = 1e-9);

}  // namespace noether
