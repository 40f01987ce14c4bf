#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "noether/grid_function.hpp"

namespace noether {

/// Brute-force check of the higher-order fundamental lemma on [a, b] = f_0's window.
///
/// The integral I(eta) = sum_{t in [a, b-m]} mu(t) sum_i f_i(t) eta^{sigma^{m-i} Delta^i}(t)
/// is evaluated for every unit impulse eta = e_s, s in [a+m, b-m]; these span the
/// eta that vanish on the first m and last m points of [a, b].
/// The conclusion sum_i (-1)^i (1/b1)^{i(i-1)/2} f_i^{Delta^i} is evaluated on
/// [a, b]^{kappa^{2m}}. For m = 0 the integral includes t = b, so b must not be
/// the scale maximum.
struct FundamentalLemmaResult {
    std::size_t window_lo = 0;
    std::size_t window_hi = 0;
    std::vector<double> integrals;
    std::vector<double> expression;
    double max_integral = 0.0;
    double max_expression = 0.0;
    bool integrals_vanish = false;
    bool expression_vanishes = false;
    /// Both sides agree, as the lemma asserts.
    bool consistent = false;
    /// Both sides vanish.
    bool pass = false;
};

/// Integrand values for one eta: sum_i f_i(t) eta^{sigma^{m-i} Delta^i}(t) integrated over [a, b-m].
double fundamental_integral(const std::vector<GridFunction>& f, const GridFunction& eta);

/// f holds f_0..f_m, scalar, all on the same window [a, b].
FundamentalLemmaResult fundamental_lemma_oracle(const std::vector<GridFunction>& f, double tolerance = 1e-10);

/// Random f_1..f_m (uniform(-1, 1) samples) and f_0 chosen so the conclusion
/// expression vanishes on [a, b]^{kappa^{2m}}; the window is the whole scale, or
/// all but its last point when m = 0.
std::vector<GridFunction> vanishing_instance(const ScalePtr& scale, std::size_t m, std::uint64_t seed);

/// Adds `size` to f_0 at index s.
std::vector<GridFunction> perturb_instance(std::vector<GridFunction> f, std::size_t s, double size = 1.0);

/// The unit impulse at index s on [a, b].
GridFunction unit_impulse(const ScalePtr& scale, std::size_t a, std::size_t b, std::size_t s);

}  // namespace noether
