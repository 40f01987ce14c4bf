#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace noether {

/// L(t, u, v) with u standing for y^sigma and v for y^Delta.
///
/// Analytic partials are optional; any that are missing fall back to
/// central differences with step fd_scale * max(1, |x|).
struct Lagrangian {
    using Value = std::function<double(double t, std::span<const double> u, std::span<const double> v)>;
    using Gradient = std::function<void(double t, std::span<const double> u, std::span<const double> v,
                                        std::span<double> out)>;

    std::string name;
    std::size_t n = 1;
    Value value;
    Gradient d_u;
    Gradient d_v;
    Value d_t;
    double fd_scale = 1e-6;

    double operator()(double t, std::span<const double> u, std::span<const double> v) const {
        return value(t, u, v);
    }

    void grad_u(double t, std::span<const double> u, std::span<const double> v, std::span<double> out) const;
    void grad_v(double t, std::span<const double> u, std::span<const double> v, std::span<double> out) const;
    double partial_t(double t, std::span<const double> u, std::span<const double> v) const;

    /// True when no finite-difference fallback participates in u/v partials.
    bool analytic_uv() const noexcept { return static_cast<bool>(d_u) && static_cast<bool>(d_v); }
    bool analytic() const noexcept { return analytic_uv() && static_cast<bool>(d_t); }

    /// Copy with every analytic partial removed.
    Lagrangian fd_only() const;
};

/// Largest relative disagreement between the analytic partials and central
/// differences over `probes` random points in [-1, 1]^(2n+1).
double self_check(const Lagrangian& L, std::uint64_t seed, std::size_t probes = 20);

/// a * L1 + b * L2 (analytic partials combined when both operands have them).
Lagrangian combine(double a, const Lagrangian& L1, double b, const Lagrangian& L2);

}  // namespace noether
