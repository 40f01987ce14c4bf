#pragma once

#include <cstdint>
#include <vector>

#include "noether/field_lagrangian.hpp"
#include "noether/multi_noether.hpp"

namespace noether {

/// Potentials A_0..A_3 on a 4D grid, stored as one 4-component field.
struct EMField {
    FieldD A;

    explicit EMField(FieldD a);
    const GridD& grid() const noexcept { return A.grid(); }
};

/// 1/2 |grad A_0 - dA/Delta_0|^2 - 1/2 |curl A|^2 written out component by component,
/// each derivative taken with sigma on every axis except its own; on [lo, hi-1]^4.
FieldD em_density(const EMField& F);
/// The same density as a generic field Lagrangian (d = n = 4).
FieldLagrangian em_lagrangian();
double em_functional(const EMField& F);

/// Abar_k = A_k + (partial_k p)(rho_k x); p must cover A's window extended by rho.
EMField em_gauge(const EMField& F, const FieldD& p);
/// a_{k+1}^k = 1: the family whose adjoint gives -partial_k.
GaugeFamilyD em_gauge_family(const GridPtr& grid);

/// sum_k partial_k E_k(L) on [lo, hi-3]^4.
FieldD em_divergence(const EMField& F);
ResidualReport em_noether_residual(const EMField& F, double tolerance = 1e-9);

/// partial_0 A_0 - sum_i partial_i A_i evaluated at the four shift patterns
/// (sigma on every axis except p), p = 0..3, on [lo, hi-2]^4; width 4.
ResidualReport em_lorentz_check(const EMField& F, double tolerance = 1e-10);

/// s_k (partial_0^2 A_k at sigma-except-0 - sum_i partial_i^2 A_k at sigma-except-i),
/// s = (+1, -1, -1, -1); one field per k on [lo, hi-2]^4.
std::vector<FieldD> em_wave_form(const EMField& F);

/// Random A_1..A_3 (total degree 2) on `box` and A_0 built as the delta
/// antiderivative along axis 0 of div A, so partial_0 A_0 = div A wherever both
/// exist. The result lives on `box` with the top index of axes 1..3 removed.
EMField lorentz_gauge_field(const GridPtr& grid, const IndexBox& box, std::uint64_t seed);

/// sup_k |E_k - wave_form_k| on the common window.
double em_wave_form_gap(const EMField& F);

}  // namespace noether
