#pragma once

#include <cstddef>
#include <vector>

#include "noether/grid_function.hpp"
#include "noether/lagrangian.hpp"
#include "noether/report.hpp"

namespace noether {

/// y(a) = alpha, y(b) = beta.
struct BoundaryData {
    std::vector<double> alpha;
    std::vector<double> beta;
};

struct SolveOptions {
    std::size_t max_iter = 50;
    std::size_t max_halvings = 20;
    double target = 1e-10;
    /// Accepted when Newton stalls above target.
    double accept = 1e-8;
};

struct SolveResult {
    GridFunction y;
    std::size_t iterations = 0;
    double residual = 0.0;
};

/// sum over [a, b) of mu(t) L(t, y^sigma(t), y^Delta(t)); [a, b] is y's window.
double eval_functional(const Lagrangian& L, const GridFunction& y);

/// Integral of sum_k (dL/du_k eta_k^sigma + dL/dv_k eta_k^Delta) over [a, b).
/// Throws DomainError unless |eta(a)|, |eta(b)| <= 1e-12.
double first_variation(const Lagrangian& L, const GridFunction& y, const GridFunction& eta);
/// Same integral without the admissibility check.
double first_variation_unchecked(const Lagrangian& L, const GridFunction& y, const GridFunction& eta);

/// Per-point partials along y: row i holds dL/du and dL/dv at (t_i, y(sigma t_i), y^Delta(t_i)),
/// i in [a, rho(b)].
struct Partials {
    GridFunction du;
    GridFunction dv;
};
Partials partials_along(const Lagrangian& L, const GridFunction& y);

/// E_k(L) = dL/du_k - Delta(dL/dv_k) on [a, b]^{kappa^2}.
GridFunction el_expressions(const Lagrangian& L, const GridFunction& y);
ResidualReport el_residual(const Lagrangian& L, const GridFunction& y, double tolerance = 1e-8);

/// E^s = dL/dt - Delta(L - sum_k v_k dL/dv_k - mu dL/dt) on [a, b]^{kappa^2}; scalar.
GridFunction second_el_expression(const Lagrangian& L, const GridFunction& y);
ResidualReport second_el_residual(const Lagrangian& L, const GridFunction& y, double tolerance = 1e-8);

/// Newton iteration on the interior unknowns of the stacked E_k = 0 system.
/// y0 fixes the window and the initial guess; boundary rows are pinned to
/// alpha/beta. Throws SolverError on a singular Jacobian or non-convergence.
SolveResult solve_extremal(const Lagrangian& L, const BoundaryData& boundary, const GridFunction& y0,
                           const SolveOptions& options = {});

/// Linear interpolation between alpha and beta on [lo, hi].
GridFunction linear_guess(ScalePtr scale, std::size_t lo, std::size_t hi, const BoundaryData& boundary);

}  // namespace noether
