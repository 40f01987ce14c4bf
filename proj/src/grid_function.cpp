#include "noether/grid_function.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "noether/error.hpp"
#include "noether/format.hpp"

namespace noether {

GridFunction::GridFunction(ScalePtr scale, std::size_t lo, std::size_t hi, std::size_t n,
                           std::vector<double> values)
    : scale_(std::move(scale)), lo_(lo), hi_(hi), n_(n), values_(std::move(values)) {
    if (!scale_) throw DomainError("grid function needs a time scale");
    if (n_ == 0) throw DomainError("grid function needs at least one component");
    if (lo_ > hi_ || hi_ >= scale_->size()) {
        throw WindowError("window [" + std::to_string(lo_) + ", " + std::to_string(hi_) +
                          "] is not inside a scale of size " + std::to_string(scale_->size()));
    }
    if (values_.size() != count() * n_) throw DomainError("sample count does not match window and n");
}

GridFunction GridFunction::sample(ScalePtr scale, std::size_t lo, std::size_t hi, std::size_t n,
                                  const Sampler& fn) {
    if (!scale || hi >= scale->size() || lo > hi) throw WindowError("invalid sampling window");
    std::vector<double> values((hi - lo + 1) * n);
    for (std::size_t i = lo; i <= hi; ++i) {
        fn((*scale)[i], std::span<double>(values).subspan((i - lo) * n, n));
    }
    return GridFunction(std::move(scale), lo, hi, n, std::move(values));
}

GridFunction GridFunction::scalar(ScalePtr scale, std::size_t lo, std::size_t hi,
                                  const std::function<double(double)>& fn) {
    return sample(std::move(scale), lo, hi, 1, [&](double t, std::span<double> out) { out[0] = fn(t); });
}

GridFunction GridFunction::constant(ScalePtr scale, std::size_t lo, std::size_t hi,
                                    std::vector<double> value) {
    const auto n = value.size();
    return sample(std::move(scale), lo, hi, n,
                  [&](double, std::span<double> out) { std::copy(value.begin(), value.end(), out.begin()); });
}

GridFunction GridFunction::zeros(ScalePtr scale, std::size_t lo, std::size_t hi, std::size_t n) {
    return constant(std::move(scale), lo, hi, std::vector<double>(n, 0.0));
}

std::span<const double> GridFunction::at(std::size_t idx) const {
    if (!contains(idx)) {
        throw WindowError("index " + std::to_string(idx) + " outside window [" + std::to_string(lo_) + ", " +
                          std::to_string(hi_) + "]");
    }
    return std::span<const double>(values_).subspan((idx - lo_) * n_, n_);
}

GridFunction GridFunction::restrict(std::size_t lo, std::size_t hi) const {
    if (lo < lo_ || hi > hi_ || lo > hi) throw WindowError("restriction is not inside the window");
    std::vector<double> v(values_.begin() + static_cast<std::ptrdiff_t>((lo - lo_) * n_),
                          values_.begin() + static_cast<std::ptrdiff_t>((hi - lo_ + 1) * n_));
    return GridFunction(scale_, lo, hi, n_, std::move(v));
}

GridFunction GridFunction::component(std::size_t k) const {
    if (k >= n_) throw DomainError("component index out of range");
    std::vector<double> v(count());
    for (std::size_t i = 0; i < count(); ++i) v[i] = values_[i * n_ + k];
    return GridFunction(scale_, lo_, hi_, 1, std::move(v));
}

bool same_scale(const TimeScale& a, const TimeScale& b) {
    if (&a == &b) return true;
    return a.size() == b.size() && std::equal(a.points().begin(), a.points().end(), b.points().begin());
}

std::pair<std::size_t, std::size_t> common_window(const GridFunction& a, const GridFunction& b) {
    if (!same_scale(a.scale(), b.scale())) throw DomainError("grid functions live on different scales");
    const auto lo = std::max(a.lo(), b.lo());
    const auto hi = std::min(a.hi(), b.hi());
    if (lo > hi) throw WindowError("grid function windows do not intersect");
    return {lo, hi};
}

namespace {

template <typename Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
    const auto [lo, hi] = common_window(a, b);
    const bool broadcast_a = a.n() == 1 && b.n() > 1;
    const bool broadcast_b = b.n() == 1 && a.n() > 1;
    if (a.n() != b.n() && !broadcast_a && !broadcast_b) throw DomainError("component counts differ");
    const auto n = std::max(a.n(), b.n());
    std::vector<double> v((hi - lo + 1) * n);
    for (std::size_t i = lo; i <= hi; ++i) {
        auto x = a.at(i);
        auto y = b.at(i);
        for (std::size_t k = 0; k < n; ++k) {
            v[(i - lo) * n + k] = op(x[broadcast_a ? 0 : k], y[broadcast_b ? 0 : k]);
        }
    }
    return GridFunction(a.scale_ptr(), lo, hi, n, std::move(v));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    if (a.n() != b.n()) throw DomainError("component counts differ");
    return zip(a, b, [](double x, double y) { return x + y; });
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    if (a.n() != b.n()) throw DomainError("component counts differ");
    return zip(a, b, [](double x, double y) { return x - y; });
}

GridFunction operator*(double c, const GridFunction& f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (auto& x : v) x *= c;
    return GridFunction(f.scale_ptr(), f.lo(), f.hi(), f.n(), std::move(v));
}

GridFunction multiply(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return x * y; });
}

GridFunction sum_components(const GridFunction& f) {
    std::vector<double> v(f.count(), 0.0);
    for (std::size_t i = f.lo(); i <= f.hi(); ++i) {
        for (double x : f.at(i)) v[i - f.lo()] += x;
    }
    return GridFunction(f.scale_ptr(), f.lo(), f.hi(), 1, std::move(v));
}

GridFunction delta_derivative(const GridFunction& f, std::size_t order) {
    if (order == 0) return f;
    if (f.count() < order + 1) {
        throw WindowError("window of " + std::to_string(f.count()) + " points is too small for a delta derivative of order " +
                          std::to_string(order));
    }
    const auto& ts = f.scale();
    const auto n = f.n();
    std::vector<double> cur(f.values().begin(), f.values().end());
    std::size_t hi = f.hi();
    for (std::size_t step = 0; step < order; ++step) {
        std::vector<double> next((hi - f.lo()) * n);
        for (std::size_t i = f.lo(); i < hi; ++i) {
            const double mu = ts.mu(i);
            if (!(mu > 0.0)) throw WindowError("zero graininess inside the window");
            for (std::size_t k = 0; k < n; ++k) {
                const auto r = (i - f.lo()) * n + k;
                next[r] = (cur[r + n] - cur[r]) / mu;
            }
        }
        cur = std::move(next);
        --hi;
    }
    return GridFunction(f.scale_ptr(), f.lo(), hi, n, std::move(cur));
}

GridFunction shift(const GridFunction& f, int k) {
    if (k == 0) return f;
    const auto steps = static_cast<std::size_t>(k > 0 ? k : -k);
    const auto last = f.scale().size() - 1;
    // result(i) = f(i + k) wherever i + k lies in f's window
    std::size_t lo = 0;
    std::size_t hi = 0;
    if (k > 0) {
        if (f.hi() < steps) throw WindowError("window exhausted by shift of " + std::to_string(k));
        lo = f.lo() >= steps ? f.lo() - steps : 0;
        hi = f.hi() - steps;
    } else {
        lo = f.lo() + steps;
        hi = std::min(f.hi() + steps, last);
        if (lo > last) throw WindowError("window exhausted by shift of " + std::to_string(k));
    }
    const auto n = f.n();
    std::vector<double> v((hi - lo + 1) * n);
    for (std::size_t i = lo; i <= hi; ++i) {
        auto src = f.at(k > 0 ? i + steps : i - steps);
        std::copy(src.begin(), src.end(), v.begin() + static_cast<std::ptrdiff_t>((i - lo) * n));
    }
    return GridFunction(f.scale_ptr(), lo, hi, n, std::move(v));
}

GridFunction mixed(const GridFunction& f, int s, std::size_t d) {
    return delta_derivative(shift(f, s), d);
}

std::vector<double> delta_integral(const GridFunction& f, std::size_t a_idx, std::size_t b_idx) {
    if (a_idx > b_idx) throw WindowError("delta integral requires a <= b");
    std::vector<double> acc(f.n(), 0.0);
    if (a_idx == b_idx) return acc;
    if (a_idx < f.lo() || b_idx - 1 > f.hi() || b_idx >= f.scale().size()) {
        throw WindowError("integration bounds [" + std::to_string(a_idx) + ", " + std::to_string(b_idx) +
                          ") leave the integrand window [" + std::to_string(f.lo()) + ", " + std::to_string(f.hi()) + "]");
    }
    const auto& ts = f.scale();
    for (std::size_t i = a_idx; i < b_idx; ++i) {
        const double mu = ts.mu(i);
        auto x = f.at(i);
        for (std::size_t k = 0; k < f.n(); ++k) acc[k] += mu * x[k];
    }
    return acc;
}

void write_csv(std::ostream& out, const GridFunction& f) {
    out << 't';
    for (std::size_t k = 0; k < f.n(); ++k) out << ",y" << (k + 1);
    out << '\n';
    for (std::size_t i = f.lo(); i <= f.hi(); ++i) {
        out << format_double(f.t(i));
        for (double x : f.at(i)) out << ',' << format_double(x);
        out << '\n';
    }
}

GridFunction read_csv(std::istream& in, ScalePtr scale) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV input");
    const auto n = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    if (line.rfind("t,", 0) != 0 || n == 0) throw ParseError("CSV header must be t,y1..yn");

    std::vector<double> values;
    std::size_t lo = 0;
    std::size_t expected = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (start <= line.size()) {
            auto end = line.find(',', start);
            if (end == std::string::npos) end = line.size();
            double x = 0.0;
            auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + end, x);
            if (ec != std::errc{} || ptr != line.data() + end) throw ParseError("bad CSV number in '" + line + "'");
            row.push_back(x);
            start = end + 1;
        }
        if (row.size() != n + 1) throw ParseError("CSV row has wrong column count: '" + line + "'");
        const auto idx = scale->index_of(row[0]);
        if (first) {
            lo = idx;
            expected = idx;
            first = false;
        }
        if (idx != expected) throw ParseError("CSV rows must cover consecutive scale points");
        ++expected;
        values.insert(values.end(), row.begin() + 1, row.end());
    }
    if (first) throw ParseError("CSV has no data rows");
    return GridFunction(std::move(scale), lo, expected - 1, n, std::move(values));
}

}  // namespace noether
