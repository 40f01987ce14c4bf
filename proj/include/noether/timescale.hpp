#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace noether {

enum class ScaleKind { Explicit, HUniform, QGeometric, RealApprox };

/// sigma(t) = b1 * t + b0 on every non-maximal point.
struct ConditionH {
    double b1 = 1.0;
    double b0 = 0.0;
};

/// Relative tolerance used when detecting and validating condition (H).
inline constexpr double kConditionHTolerance = 1e-12;

/// A finite, strictly increasing time scale.
///
/// Points are addressed by index. sigma/rho are index maps with the usual
/// end conventions: sigma(max) = max and rho(min) = min, so mu(max) = 0.
/// Instances are immutable; share them through ScalePtr.
class TimeScale {
public:
    /// Explicit point list; condition (H) is fitted from the first two gaps.
    static TimeScale from_points(std::vector<double> points);
    /// a, a+h, ..., up to the largest grid point not exceeding b.
    static TimeScale h_uniform(double h, double a, double b);
    /// a, a q, a q^2, ... (count points).
    static TimeScale q_geometric(double q, double a, std::size_t count);
    /// Fine uniform grid standing in for the real line.
    static TimeScale real_approx(double h, double a, double b);

    /// Parses "h:<h>:<a>:<b>", "q:<q>:<a>:<count>", "real:<h>:<a>:<b>" or
    /// "explicit:@<path>" (one point per line, '#' comments allowed).
    static TimeScale parse(std::string_view spec);

    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    std::span<const double> points() const noexcept { return points_; }

    ScaleKind kind() const noexcept { return kind_; }
    /// h for uniform kinds, q for geometric, 0 for explicit.
    double parameter() const noexcept { return parameter_; }
    const std::optional<ConditionH>& condition_h() const noexcept { return condition_h_; }

    std::size_t sigma(std::size_t i) const;
    std::size_t rho(std::size_t i) const;
    /// Forward graininess points[sigma(i)] - points[i].
    double mu(std::size_t i) const;
    /// Backward graininess points[i] - points[rho(i)].
    double nu(std::size_t i) const;

    /// Index of the point equal to t within a relative tolerance; throws if absent.
    std::size_t index_of(double t, double rel_tol = 1e-12) const;

    /// Canonical scale-spec text (explicit scales list their points inline).
    std::string describe() const;

private:
    TimeScale(std::vector<double> points, ScaleKind kind, double parameter,
              std::optional<ConditionH> condition_h);

    void check_index(std::size_t i) const;

    std::vector<double> points_;
    ScaleKind kind_;
    double parameter_;
    std::optional<ConditionH> condition_h_;
};

using ScalePtr = std::shared_ptr<const TimeScale>;

inline ScalePtr make_scale(TimeScale ts) {
    return std::make_shared<const TimeScale>(std::move(ts));
}

/// True when condition (H) with the given parameters holds on every non-maximal point.
bool satisfies_condition_h(std::span<const double> points, ConditionH h,
                           double rel_tol = kConditionHTolerance);

/// Splits a comma-separated list of scale specs (used for multi-axis grids).
std::vector<TimeScale> parse_scale_list(std::string_view specs);

}  // namespace noether
