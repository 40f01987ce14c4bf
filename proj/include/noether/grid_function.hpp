#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "noether/timescale.hpp"

namespace noether {

/// Vector-valued samples on a contiguous index window [lo, hi] of a time scale.
///
/// The window is part of the value: every derivative or shift returns a
/// function on the shrunken window, and binary operations act on the
/// intersection of the operand windows.
class GridFunction {
public:
    using Sampler = std::function<void(double t, std::span<double> out)>;

    GridFunction(ScalePtr scale, std::size_t lo, std::size_t hi, std::size_t n,
                 std::vector<double> values);

    static GridFunction sample(ScalePtr scale, std::size_t lo, std::size_t hi, std::size_t n,
                               const Sampler& fn);
    static GridFunction scalar(ScalePtr scale, std::size_t lo, std::size_t hi,
                               const std::function<double(double)>& fn);
    static GridFunction constant(ScalePtr scale, std::size_t lo, std::size_t hi,
                                 std::vector<double> value);
    static GridFunction zeros(ScalePtr scale, std::size_t lo, std::size_t hi, std::size_t n);

    const TimeScale& scale() const noexcept { return *scale_; }
    const ScalePtr& scale_ptr() const noexcept { return scale_; }
    std::size_t lo() const noexcept { return lo_; }
    std::size_t hi() const noexcept { return hi_; }
    std::size_t count() const noexcept { return hi_ - lo_ + 1; }
    std::size_t n() const noexcept { return n_; }

    bool contains(std::size_t idx) const noexcept { return idx >= lo_ && idx <= hi_; }

    /// Sample at absolute scale index idx.
    std::span<const double> at(std::size_t idx) const;
    double at(std::size_t idx, std::size_t k) const { return at(idx)[k]; }
    double t(std::size_t idx) const { return (*scale_)[idx]; }

    std::span<const double> values() const noexcept { return values_; }

    GridFunction restrict(std::size_t lo, std::size_t hi) const;
    GridFunction component(std::size_t k) const;

private:
    ScalePtr scale_;
    std::size_t lo_;
    std::size_t hi_;
    std::size_t n_;
    std::vector<double> values_;
};

bool same_scale(const TimeScale& a, const TimeScale& b);

/// Intersection [max lo, min hi] of two windows on the same scale; throws if empty.
std::pair<std::size_t, std::size_t> common_window(const GridFunction& a, const GridFunction& b);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& f);

/// Pointwise product; a scalar (n = 1) operand broadcasts over the other's components.
GridFunction multiply(const GridFunction& a, const GridFunction& b);

/// Componentwise sum of the n components into a scalar function.
GridFunction sum_components(const GridFunction& f);

/// i-fold forward difference quotient (f(sigma t) - f(t)) / mu(t); window hi shrinks by i.
GridFunction delta_derivative(const GridFunction& f, std::size_t order = 1);

/// f(sigma^k(t)) by index translation; negative k means rho^{|k|}.
/// The result lives on every index whose translate falls inside f's window,
/// so a sigma-shift moves the window down and a rho-shift moves it up.
GridFunction shift(const GridFunction& f, int k);

/// f^{sigma^s Delta^d}: shift by s first, then d delta derivatives.
GridFunction mixed(const GridFunction& f, int s, std::size_t d);

/// sum_{i=a_idx}^{b_idx-1} mu(i) f(i): the delta integral over [t_a, t_b).
std::vector<double> delta_integral(const GridFunction& f, std::size_t a_idx, std::size_t b_idx);

/// CSV with header "t,y1,...,yn" and one row per window index.
void write_csv(std::ostream& out, const GridFunction& f);
/// Reads the CSV layout written by write_csv; t values are matched to scale indices.
GridFunction read_csv(std::istream& in, ScalePtr scale);

}  // namespace noether
