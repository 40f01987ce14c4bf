#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "noether/report.hpp"
#include "noether/timescale.hpp"

namespace noether {

/// Rectangular product of d time scales (d in 2..4).
class GridD {
public:
    explicit GridD(std::vector<ScalePtr> axes);

    std::size_t dims() const noexcept { return axes_.size(); }
    const TimeScale& axis(std::size_t a) const { return *axes_.at(a); }
    const ScalePtr& axis_ptr(std::size_t a) const { return axes_.at(a); }
    std::vector<std::size_t> shape() const;
    /// Omega: every index of every axis.
    IndexBox full_box() const;

private:
    std::vector<ScalePtr> axes_;
};

using GridPtr = std::shared_ptr<const GridD>;

inline GridPtr make_grid(std::vector<ScalePtr> axes) { return std::make_shared<const GridD>(std::move(axes)); }
GridPtr make_grid(const std::vector<TimeScale>& axes);

/// Calls fn(idx) for every index of a non-empty box, last axis fastest.
void for_each(const IndexBox& box, const std::function<void(std::span<const std::size_t>)>& fn);

/// Per-axis intersection; empty boxes are allowed (hi < lo on some axis).
IndexBox intersect(const IndexBox& a, const IndexBox& b);
bool box_contains(const IndexBox& outer, const IndexBox& inner);

/// n-vector samples on a box of a GridD, row-major with axis 0 slowest and the
/// component index fastest.
class FieldD {
public:
    using Sampler = std::function<void(std::span<const double> coords, std::span<double> out)>;

    FieldD(GridPtr grid, IndexBox window, std::size_t n, std::vector<double> values);

    static FieldD sample(GridPtr grid, IndexBox window, std::size_t n, const Sampler& fn);
    static FieldD zeros(GridPtr grid, IndexBox window, std::size_t n);

    const GridD& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const IndexBox& window() const noexcept { return window_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t dims() const noexcept { return grid_->dims(); }

    std::span<const double> at(std::span<const std::size_t> idx) const;
    double at(std::span<const std::size_t> idx, std::size_t k) const { return at(idx)[k]; }
    std::span<const double> values() const noexcept { return values_; }
    std::vector<double> coords(std::span<const std::size_t> idx) const;

    FieldD restrict(const IndexBox& box) const;
    FieldD component(std::size_t k) const;

private:
    std::size_t offset(std::span<const std::size_t> idx) const;

    GridPtr grid_;
    IndexBox window_;
    std::size_t n_;
    std::vector<double> values_;
};

FieldD operator+(const FieldD& a, const FieldD& b);
FieldD operator-(const FieldD& a, const FieldD& b);
FieldD operator*(double c, const FieldD& f);
/// Pointwise product; an n = 1 operand broadcasts.
FieldD multiply(const FieldD& a, const FieldD& b);
/// Stacks scalar fields into one n-component field on their common window.
FieldD stack(const std::vector<FieldD>& parts);

/// Forward difference quotient along one axis; the window loses its top index on that axis.
FieldD partial_delta(const FieldD& f, std::size_t axis);
/// f(sigma_axis^k(x)) by index translation (negative k means rho); see shift for GridFunction.
FieldD shift(const FieldD& f, std::size_t axis, int k);
/// Shift by +1 on every axis except `skip` (pass dims() to shift all axes).
FieldD sigma_except(const FieldD& f, std::size_t skip);

/// Sum over the window without its top index on each axis of f times the product of mu's.
std::vector<double> multi_integral(const FieldD& f);
/// As multi_integral over an explicit box [lo, hi) per axis.
std::vector<double> multi_integral(const FieldD& f, const IndexBox& box);

/// How the fence integrals of Green's theorem traverse the rectangle boundary.
enum class FenceRule {
    /// Oriented delta sums on all four edges (right/up positive, left/down negative).
    Delta,
    /// Delta sums on bottom/right edges, nabla sums on top/left edges.
    StarNabla,
};

struct GreensResult {
    double area_integral = 0.0;
    double fence_integral = 0.0;
    /// |area - fence| / max(1, |area|, |fence|)
    double residual = 0.0;
};

/// Double integral of dN/Delta_1 - dM/Delta_2 versus the fence integral of M dx + N dy,
/// on the common window of two scalar fields on a 2D grid.
GreensResult greens_theorem(const FieldD& M, const FieldD& N, FenceRule rule = FenceRule::Delta);
double greens_residual(const FieldD& M, const FieldD& N, FenceRule rule = FenceRule::Delta);

/// Random polynomial field of total degree <= degree in per-axis coordinates
/// normalized to [-1, 1] over the box, coefficients uniform(-1, 1), scaled to sup `amplitude`.
FieldD random_field(const GridPtr& grid, const IndexBox& box, std::size_t n, std::size_t degree,
                    std::uint64_t seed, std::uint64_t trial, double amplitude = 0.1);

}  // namespace noether
