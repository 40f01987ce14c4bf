#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "noether/multigrid.hpp"

namespace noether {

/// L(x, u, G) on a d-dimensional grid, where G[k*d + a] stands for the partial
/// of u_k along axis a. Missing analytic partials fall back to central differences.
struct FieldLagrangian {
    using Value = std::function<double(std::span<const double> x, std::span<const double> u,
                                       std::span<const double> grad)>;
    using Gradient = std::function<void(std::span<const double> x, std::span<const double> u,
                                        std::span<const double> grad, std::span<double> out)>;

    std::string name;
    std::size_t d = 2;
    std::size_t n = 1;
    Value value;
    Gradient d_u;
    Gradient d_grad;
    double fd_scale = 1e-6;

    double operator()(std::span<const double> x, std::span<const double> u, std::span<const double> g) const {
        return value(x, u, g);
    }
    void grad_u(std::span<const double> x, std::span<const double> u, std::span<const double> g,
                std::span<double> out) const;
    void grad_g(std::span<const double> x, std::span<const double> u, std::span<const double> g,
                std::span<double> out) const;
};

/// Arguments of L at every x in [lo, hi-1]^d: u(sigma x) and, for slot (k, a),
/// the partial of u_k along a evaluated with sigma applied on every axis except a.
struct FieldArguments {
    FieldD u_sigma;
    FieldD grad;
};
FieldArguments field_arguments(const FieldD& u);

/// L evaluated along u on [lo, hi-1]^d (scalar field).
FieldD lagrangian_density(const FieldLagrangian& L, const FieldD& u);
/// Multiple delta integral of the density over u's window.
double functional_d(const FieldLagrangian& L, const FieldD& u);

/// E_k = dL/du_k - sum_a partial_a (dL/dG_{k,a}) on [lo, hi-2]^d.
FieldD el_expressions_d(const FieldLagrangian& L, const FieldD& u);
ResidualReport el_residual_d(const FieldLagrangian& L, const FieldD& u, double tolerance = 1e-9);

namespace catalog {

/// Maxwell-type density with n = d potentials A_0..A_{d-1}, F_{ka} = G_{k,a} - G_{a,k}:
/// 1/2 sum_{i>=1} F_{0i}^2 - 1/2 sum_{1<=i<j} F_{ij}^2.
FieldLagrangian maxwell(std::size_t d);
/// 1/2 sum_a (G_{0,a} - G_{1,a})^2 with n = 2.
FieldLagrangian field_pair_difference(std::size_t d);
/// 1/2 sum_a G_{0,a}^2 with n = 1.
FieldLagrangian field_dirichlet(std::size_t d);

}  // namespace catalog

}  // namespace noether
