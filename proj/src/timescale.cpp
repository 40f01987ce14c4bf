#include "noether/timescale.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "noether/error.hpp"

namespace noether {

namespace {

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<double> uniform_points(double h, double a, double b) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("step h must be positive");
    if (!(b > a)) throw DomainError("uniform scale requires a < b");
    const double steps = std::floor((b - a) / h + 1e-9);
    const auto count = static_cast<std::size_t>(steps) + 1;
    if (count < 2) throw DomainError("time scale needs at least 2 points");
    std::vector<double> pts(count);
    for (std::size_t k = 0; k < count; ++k) pts[k] = a + static_cast<double>(k) * h;
    return pts;
}

void check_increasing(const std::vector<double>& pts) {
    if (pts.size() < 2) throw DomainError("time scale needs at least 2 points");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!std::isfinite(pts[i]) || !std::isfinite(pts[i + 1])) {
            throw DomainError("time scale points must be finite");
        }
        if (!(pts[i + 1] > pts[i])) throw DomainError("time scale points must be strictly increasing");
    }
}

}  // namespace

bool satisfies_condition_h(std::span<const double> points, ConditionH h, double rel_tol) {
    if (!(h.b1 > 0.0)) return false;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double t = points[i];
        const double predicted = h.b1 * t + h.b0;
        if (std::abs(points[i + 1] - predicted) > rel_tol * std::max(1.0, std::abs(t))) return false;
    }
    return true;
}

TimeScale::TimeScale(std::vector<double> points, ScaleKind kind, double parameter,
                     std::optional<ConditionH> condition_h)
    : points_(std::move(points)), kind_(kind), parameter_(parameter), condition_h_(condition_h) {
    check_increasing(points_);
    if (condition_h_ && !satisfies_condition_h(points_, *condition_h_)) {
        throw DomainError("points violate the declared condition (H)");
    }
}

TimeScale TimeScale::from_points(std::vector<double> points) {
    check_increasing(points);
    std::optional<ConditionH> h;
    const double g0 = points[1] - points[0];
    if (points.size() == 2) {
        h = ConditionH{1.0, g0};
    } else {
        const double b1 = (points[2] - points[1]) / g0;
        const double b0 = points[1] - b1 * points[0];
        if (satisfies_condition_h(points, {b1, b0})) h = ConditionH{b1, b0};
    }
    return TimeScale(std::move(points), ScaleKind::Explicit, 0.0, h);
}

TimeScale TimeScale::h_uniform(double h, double a, double b) {
    auto pts = uniform_points(h, a, b);
    return TimeScale(std::move(pts), ScaleKind::HUniform, h, ConditionH{1.0, h});
}

TimeScale TimeScale::real_approx(double h, double a, double b) {
    auto pts = uniform_points(h, a, b);
    return TimeScale(std::move(pts), ScaleKind::RealApprox, h, ConditionH{1.0, h});
}

TimeScale TimeScale::q_geometric(double q, double a, std::size_t count) {
    if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("q must exceed 1");
    if (!(a > 0.0)) throw DomainError("q-geometric scale requires a > 0");
    if (count < 2) throw DomainError("time scale needs at least 2 points");
    std::vector<double> pts(count);
    pts[0] = a;
    // successive products keep sigma(t) == q * t exactly
    for (std::size_t k = 1; k < count; ++k) pts[k] = pts[k - 1] * q;
    return TimeScale(std::move(pts), ScaleKind::QGeometric, q, ConditionH{q, 0.0});
}

TimeScale TimeScale::parse(std::string_view spec) {
    spec = trim(spec);
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw ParseError("scale spec '" + std::string(spec) + "' has no kind");
    const auto kind = spec.substr(0, colon);
    const auto rest = spec.substr(colon + 1);

    if (kind == "explicit") {
        if (rest.empty() || rest.front() != '@') throw ParseError("explicit scale spec must be explicit:@<path>");
        const std::string path(rest.substr(1));
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open point file '" + path + "'");
        std::vector<double> pts;
        std::string line;
        while (std::getline(in, line)) {
            auto body = trim(std::string_view(line).substr(0, line.find('#')));
            if (body.empty()) continue;
            pts.push_back(parse_double(body, "point"));
        }
        return from_points(std::move(pts));
    }

    const auto fields = split(rest, ':');
    if (fields.size() != 3) throw ParseError("scale spec '" + std::string(spec) + "' needs three fields");
    if (kind == "h" || kind == "real") {
        const double h = parse_double(fields[0], "step");
        const double a = parse_double(fields[1], "start");
        const double b = parse_double(fields[2], "end");
        return kind == "h" ? h_uniform(h, a, b) : real_approx(h, a, b);
    }
    if (kind == "q") {
        const double q = parse_double(fields[0], "q");
        const double a = parse_double(fields[1], "start");
        const double count = parse_double(fields[2], "count");
        if (count < 0 || count != std::floor(count)) throw ParseError("count must be a non-negative integer");
        return q_geometric(q, a, static_cast<std::size_t>(count));
    }
    throw ParseError("unknown scale kind '" + std::string(kind) + "'");
}

std::vector<TimeScale> parse_scale_list(std::string_view specs) {
    std::vector<TimeScale> out;
    for (auto part : split(specs, ',')) {
        part = trim(part);
        if (part.empty()) throw ParseError("empty scale spec in list");
        out.push_back(TimeScale::parse(part));
    }
    return out;
}

void TimeScale::check_index(std::size_t i) const {
    if (i >= points_.size()) {
        throw WindowError("index " + std::to_string(i) + " out of range for scale of size " +
                          std::to_string(points_.size()));
    }
}

std::size_t TimeScale::sigma(std::size_t i) const {
    check_index(i);
    return i + 1 < points_.size() ? i + 1 : i;
}

std::size_t TimeScale::rho(std::size_t i) const {
    check_index(i);
    return i > 0 ? i - 1 : 0;
}

double TimeScale::mu(std::size_t i) const { return points_[sigma(i)] - points_[i]; }

double TimeScale::nu(std::size_t i) const { return points_[i] - points_[rho(i)]; }

std::size_t TimeScale::index_of(double t, double rel_tol) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    const double tol = rel_tol * std::max(1.0, std::abs(t));
    std::size_t best = points_.size();
    if (it != points_.end() && std::abs(*it - t) <= tol) best = static_cast<std::size_t>(it - points_.begin());
    if (it != points_.begin() && std::abs(*(it - 1) - t) <= tol) best = static_cast<std::size_t>(it - points_.begin() - 1);
    if (best == points_.size()) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "t=" << t << " is not a point of the time scale";
        throw WindowError(msg.str());
    }
    return best;
}

std::string TimeScale::describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
        case ScaleKind::HUniform:
            out << "h:" << parameter_ << ':' << points_.front() << ':' << points_.back();
            break;
        case ScaleKind::RealApprox:
            out << "real:" << parameter_ << ':' << points_.front() << ':' << points_.back();
            break;
        case ScaleKind::QGeometric:
            out << "q:" << parameter_ << ':' << points_.front() << ':' << points_.size();
            break;
        case ScaleKind::Explicit:
            out << "explicit:[";
            for (std::size_t i = 0; i < points_.size(); ++i) out << (i ? "," : "") << points_[i];
            out << ']';
            break;
    }
    return out.str();
}

}  // namespace noether
