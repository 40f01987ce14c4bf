#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "noether/field_lagrangian.hpp"
#include "noether/multigrid.hpp"
#include "noether/report.hpp"

namespace noether {

/// ubar_k = u_k + T^k(p) with
/// T^k(p)(x) = a_0^k(x) p(x) + sum_a a_{a+1}^k(x) (partial_a p)(rho_a x).
/// Coefficients are scalar fields on the whole grid, indexed (k, c) with c = 0 for
/// a_0 and c = 1 + axis for the gradient terms.
class GaugeFamilyD {
public:
    GaugeFamilyD(GridPtr grid, std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t dims() const noexcept { return grid_->dims(); }
    const GridPtr& grid_ptr() const noexcept { return grid_; }

    const FieldD& coeff(std::size_t k, std::size_t c) const;
    void set_coeff(std::size_t k, std::size_t c, FieldD field);
    void set_constant(std::size_t k, std::size_t c, double value);

private:
    GridPtr grid_;
    std::size_t n_;
    std::vector<FieldD> a_;
};

/// T^k(p) on [plo+1, phi] per axis.
FieldD apply_T_d(const GaugeFamilyD& fam, const FieldD& p, std::size_t k);
/// a_0^k(x) p(sigma x) + sum_a a_{a+1}^k(x) (partial_a p)(sigma on all axes but a),
/// the form in which T^k(p) enters the Lagrangian's u^sigma argument; on [plo, phi-1].
FieldD apply_T_sigma_d(const GaugeFamilyD& fam, const FieldD& p, std::size_t k);
/// q a_0^k - sum_a partial_a (q a_{a+1}^k); loses the top index on every axis.
FieldD adjoint_T_d(const GaugeFamilyD& fam, const FieldD& q, std::size_t k);

/// sum_k adjoint_T_d(E_k(L)) on [lo, hi-3]^d.
FieldD noether_identity_values_d(const FieldLagrangian& L, const GaugeFamilyD& fam, const FieldD& u);
ResidualReport noether_identity_d(const FieldLagrangian& L, const GaugeFamilyD& fam, const FieldD& u,
                                  double tolerance = 1e-9);

/// |L[u] - L[u + T(p)]| / max(1, |L[u]|) with T(p) summed into every component.
double invariance_deviation_d(const FieldLagrangian& L, const GaugeFamilyD& fam, const FieldD& u, const FieldD& p);

/// Random cubic p on u's window extended by rho on every axis (u must not touch index 0).
ResidualReport check_invariance_d(const FieldLagrangian& L, const GaugeFamilyD& fam, const FieldD& u,
                                  std::size_t trials, std::uint64_t seed, double tolerance = 1e-12);

/// u's window extended downward by one index on each axis.
IndexBox rho_extended(const IndexBox& box);

namespace families {

/// a_{k+1}^k = 1, everything else 0 (n = d): A_k += (partial_k p)(rho_k x).
GaugeFamilyD gradient_gauge(const GridPtr& grid);
/// a_0^0 = a_0^1 = 1 (n = 2): both components shift by p.
GaugeFamilyD common_shift(const GridPtr& grid);

}  // namespace families

}  // namespace noether
