#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "noether/grid_function.hpp"

namespace noether {

/// Coefficients of ybar_k = y_k + sum_j T^{kj}(p_j), with
/// T^{kj}(p) = sum_{i=0}^{m} g^k_ij p^{sigma^{m-(i+1)} Delta^i}, and optionally
/// tbar = t + sum_j H^j(p_j), H^j(p) = sum_i f_ij p^{sigma^{m-(i+1)} Delta^i}.
///
/// Every coefficient is a scalar grid function on the family's scale.
/// Indices are zero-based here: k in [0, n), i in [0, m], j in [0, r).
class GaugeFamily {
public:
    GaugeFamily(ScalePtr scale, std::size_t n, std::size_t m, std::size_t r);

    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return m_; }
    std::size_t r() const noexcept { return r_; }
    const ScalePtr& scale_ptr() const noexcept { return scale_; }
    const TimeScale& scale() const noexcept { return *scale_; }
    bool has_time() const noexcept { return f_.has_value(); }

    const GridFunction& g(std::size_t k, std::size_t i, std::size_t j) const;
    void set_g(std::size_t k, std::size_t i, std::size_t j, GridFunction coeff);

    const GridFunction& f(std::size_t i, std::size_t j) const;
    void set_f(std::size_t i, std::size_t j, GridFunction coeff);
    /// Enables the time transformation with all f_ij = 0.
    void enable_time();

private:
    std::size_t g_index(std::size_t k, std::size_t i, std::size_t j) const;
    GridFunction checked(GridFunction coeff) const;

    ScalePtr scale_;
    std::size_t n_, m_, r_;
    std::vector<GridFunction> g_;
    std::optional<std::vector<GridFunction>> f_;
};

/// Window [a-1, b+m-1] (m >= 1) or [a-1, b-1] (m = 0) that every p_j must cover
/// for T^{kj}(p_j) to exist on [a, b]. For m >= 1, b must also lie below the
/// scale maximum, since the delta derivatives at b use mu(b).
std::pair<std::size_t, std::size_t> params_window(std::size_t m, std::size_t a, std::size_t b);

/// Polynomial of the given degree in t normalized to [-1, 1] over [lo, hi], with
/// uniform(-1, 1) coefficients drawn from (seed, trial, stream), rescaled to sup `amplitude`.
GridFunction random_polynomial(const ScalePtr& scale, std::size_t lo, std::size_t hi, std::size_t degree,
                               std::uint64_t seed, std::uint64_t trial, std::uint64_t stream = 0,
                               double amplitude = 0.1);

/// n independent random_polynomial components stacked into one function.
GridFunction random_path(const ScalePtr& scale, std::size_t lo, std::size_t hi, std::size_t n, std::size_t degree,
                         std::uint64_t seed, double amplitude = 1.0);

/// r random parameter functions: polynomials of degree m+2 in t normalized to
/// [-1, 1] over the window, uniform(-1, 1) coefficients, rescaled to sup 0.1.
std::vector<GridFunction> random_params(const ScalePtr& scale, std::size_t m, std::size_t r, std::size_t a,
                                        std::size_t b, std::uint64_t seed, std::uint64_t trial);

/// sum_i coeff_i p^{sigma^{m-(i+1)} Delta^i} on [a, b].
GridFunction apply_operator(const std::vector<const GridFunction*>& coeffs, std::size_t m, const GridFunction& p,
                            std::size_t a, std::size_t b);

/// T^{kj}(p) on [a, b].
GridFunction apply_T(const GaugeFamily& fam, const GridFunction& p, std::size_t k, std::size_t j, std::size_t a,
                     std::size_t b);
/// H^j(p) on [a, b]; requires the time transformation.
GridFunction apply_H(const GaugeFamily& fam, const GridFunction& p, std::size_t j, std::size_t a, std::size_t b);

/// sum_j T^{kj}(p_j) for every k, as one n-component function on [a, b].
GridFunction total_variation_field(const GaugeFamily& fam, const std::vector<GridFunction>& params, std::size_t a,
                                   std::size_t b);

struct Transformed {
    /// alpha(t) = t + sum_j H^j(p_j)(t) on [a, b]; identity without time transformation.
    std::vector<double> alpha;
    /// ybar on the image scale alpha([a, b]) (indices 0..b-a), or on y's own
    /// scale and window without time transformation.
    GridFunction ybar;
};

/// Throws DomainError when alpha is not strictly increasing.
Transformed transform(const GaugeFamily& fam, const std::vector<GridFunction>& params, const GridFunction& y);

}  // namespace noether
