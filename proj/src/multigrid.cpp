#include "noether/multigrid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "noether/error.hpp"

namespace noether {

GridD::GridD(std::vector<ScalePtr> axes) : axes_(std::move(axes)) {
    if (axes_.size() < 2 || axes_.size() > 4) throw DomainError("grids have 2 to 4 axes");
    for (const auto& a : axes_) {
        if (!a) throw DomainError("grid axis has no time scale");
    }
}

std::vector<std::size_t> GridD::shape() const {
    std::vector<std::size_t> s;
    for (const auto& a : axes_) s.push_back(a->size());
    return s;
}

IndexBox GridD::full_box() const {
    IndexBox b;
    for (const auto& a : axes_) {
        b.lo.push_back(0);
        b.hi.push_back(a->size() - 1);
    }
    return b;
}

GridPtr make_grid(const std::vector<TimeScale>& axes) {
    std::vector<ScalePtr> ptrs;
    for (const auto& a : axes) ptrs.push_back(make_scale(a));
    return make_grid(std::move(ptrs));
}

void for_each(const IndexBox& box, const std::function<void(std::span<const std::size_t>)>& fn) {
    if (box.empty()) return;
    const auto d = box.dims();
    std::vector<std::size_t> idx(box.lo);
    while (true) {
        fn(idx);
        std::size_t a = d;
        while (a > 0) {
            --a;
            if (idx[a] < box.hi[a]) {
                ++idx[a];
                break;
            }
            idx[a] = box.lo[a];
            if (a == 0) return;
        }
    }
}

IndexBox intersect(const IndexBox& a, const IndexBox& b) {
    if (a.dims() != b.dims()) throw DomainError("boxes have different dimension");
    IndexBox r;
    for (std::size_t i = 0; i < a.dims(); ++i) {
        r.lo.push_back(std::max(a.lo[i], b.lo[i]));
        r.hi.push_back(std::min(a.hi[i], b.hi[i]));
    }
    return r;
}

bool box_contains(const IndexBox& outer, const IndexBox& inner) {
    if (outer.dims() != inner.dims()) return false;
    for (std::size_t i = 0; i < outer.dims(); ++i) {
        if (inner.lo[i] < outer.lo[i] || inner.hi[i] > outer.hi[i]) return false;
    }
    return true;
}

FieldD::FieldD(GridPtr grid, IndexBox window, std::size_t n, std::vector<double> values)
    : grid_(std::move(grid)), window_(std::move(window)), n_(n), values_(std::move(values)) {
    if (!grid_) throw DomainError("field needs a grid");
    if (n_ == 0) throw DomainError("field needs at least one component");
    if (window_.dims() != grid_->dims()) throw DomainError("field window has the wrong dimension");
    if (window_.empty()) throw WindowError("field window is empty");
    if (!box_contains(grid_->full_box(), window_)) throw WindowError("field window leaves the grid");
    if (values_.size() != window_.count() * n_) throw DomainError("field sample count does not match its window");
}

FieldD FieldD::sample(GridPtr grid, IndexBox window, std::size_t n, const Sampler& fn) {
    std::vector<double> values(window.count() * n);
    std::vector<double> x(window.dims());
    std::size_t pos = 0;
    for_each(window, [&](std::span<const std::size_t> idx) {
        for (std::size_t a = 0; a < idx.size(); ++a) x[a] = grid->axis(a)[idx[a]];
        fn(x, std::span<double>(values).subspan(pos, n));
        pos += n;
    });
    return FieldD(std::move(grid), std::move(window), n, std::move(values));
}

FieldD FieldD::zeros(GridPtr grid, IndexBox window, std::size_t n) {
    std::vector<double> values(window.count() * n, 0.0);
    return FieldD(std::move(grid), std::move(window), n, std::move(values));
}

std::size_t FieldD::offset(std::span<const std::size_t> idx) const {
    std::size_t off = 0;
    for (std::size_t a = 0; a < window_.dims(); ++a) {
        if (idx[a] < window_.lo[a] || idx[a] > window_.hi[a]) {
            throw WindowError("index outside field window on axis " + std::to_string(a));
        }
        off = off * (window_.hi[a] - window_.lo[a] + 1) + (idx[a] - window_.lo[a]);
    }
    return off * n_;
}

std::span<const double> FieldD::at(std::span<const std::size_t> idx) const {
    return std::span<const double>(values_).subspan(offset(idx), n_);
}

std::vector<double> FieldD::coords(std::span<const std::size_t> idx) const {
    std::vector<double> x(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) x[a] = grid_->axis(a)[idx[a]];
    return x;
}

FieldD FieldD::restrict(const IndexBox& box) const {
    if (!box_contains(window_, box)) throw WindowError("restriction is not inside the field window");
    std::vector<double> v;
    v.reserve(box.count() * n_);
    for_each(box, [&](std::span<const std::size_t> idx) {
        auto x = at(idx);
        v.insert(v.end(), x.begin(), x.end());
    });
    return FieldD(grid_, box, n_, std::move(v));
}

FieldD FieldD::component(std::size_t k) const {
    if (k >= n_) throw DomainError("component index out of range");
    std::vector<double> v(window_.count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i * n_ + k];
    return FieldD(grid_, window_, 1, std::move(v));
}

namespace {

template <typename Op>
FieldD zip(const FieldD& a, const FieldD& b, Op op) {
    if (a.grid_ptr() != b.grid_ptr()) throw DomainError("fields live on different grids");
    const bool ba = a.n() == 1 && b.n() > 1;
    const bool bb = b.n() == 1 && a.n() > 1;
    if (a.n() != b.n() && !ba && !bb) throw DomainError("component counts differ");
    const auto box = intersect(a.window(), b.window());
    if (box.empty()) throw WindowError("field windows do not intersect");
    const auto n = std::max(a.n(), b.n());
    std::vector<double> v;
    v.reserve(box.count() * n);
    for_each(box, [&](std::span<const std::size_t> idx) {
        auto x = a.at(idx);
        auto y = b.at(idx);
        for (std::size_t k = 0; k < n; ++k) v.push_back(op(x[ba ? 0 : k], y[bb ? 0 : k]));
    });
    return FieldD(a.grid_ptr(), box, n, std::move(v));
}

}  // namespace

FieldD operator+(const FieldD& a, const FieldD& b) {
    if (a.n() != b.n()) throw DomainError("component counts differ");
    return zip(a, b, [](double x, double y) { return x + y; });
}

FieldD operator-(const FieldD& a, const FieldD& b) {
    if (a.n() != b.n()) throw DomainError("component counts differ");
    return zip(a, b, [](double x, double y) { return x - y; });
}

FieldD operator*(double c, const FieldD& f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (auto& x : v) x *= c;
    return FieldD(f.grid_ptr(), f.window(), f.n(), std::move(v));
}

FieldD multiply(const FieldD& a, const FieldD& b) {
    return zip(a, b, [](double x, double y) { return x * y; });
}

FieldD stack(const std::vector<FieldD>& parts) {
    if (parts.empty()) throw DomainError("nothing to stack");
    auto box = parts[0].window();
    for (const auto& p : parts) {
        if (p.n() != 1) throw DomainError("stack expects scalar fields");
        if (p.grid_ptr() != parts[0].grid_ptr()) throw DomainError("fields live on different grids");
        box = intersect(box, p.window());
    }
    if (box.empty()) throw WindowError("field windows do not intersect");
    std::vector<double> v;
    v.reserve(box.count() * parts.size());
    for_each(box, [&](std::span<const std::size_t> idx) {
        for (const auto& p : parts) v.push_back(p.at(idx, 0));
    });
    return FieldD(parts[0].grid_ptr(), box, parts.size(), std::move(v));
}

FieldD partial_delta(const FieldD& f, std::size_t axis) {
    if (axis >= f.dims()) throw DomainError("axis out of range");
    auto box = f.window();
    if (box.hi[axis] == box.lo[axis]) throw WindowError("window too small for a partial delta derivative");
    box.hi[axis] -= 1;
    const auto& ts = f.grid().axis(axis);
    const auto n = f.n();
    std::vector<double> v;
    v.reserve(box.count() * n);
    std::vector<std::size_t> up(f.dims());
    for_each(box, [&](std::span<const std::size_t> idx) {
        std::copy(idx.begin(), idx.end(), up.begin());
        up[axis] += 1;
        const double mu = ts.mu(idx[axis]);
        auto x0 = f.at(idx);
        auto x1 = f.at(up);
        for (std::size_t k = 0; k < n; ++k) v.push_back((x1[k] - x0[k]) / mu);
    });
    return FieldD(f.grid_ptr(), box, n, std::move(v));
}

FieldD shift(const FieldD& f, std::size_t axis, int k) {
    if (axis >= f.dims()) throw DomainError("axis out of range");
    if (k == 0) return f;
    const auto steps = static_cast<std::size_t>(k > 0 ? k : -k);
    const auto last = f.grid().axis(axis).size() - 1;
    auto box = f.window();
    if (k > 0) {
        if (box.hi[axis] < steps) throw WindowError("window exhausted by shift");
        box.lo[axis] = box.lo[axis] >= steps ? box.lo[axis] - steps : 0;
        box.hi[axis] -= steps;
    } else {
        box.lo[axis] += steps;
        box.hi[axis] = std::min(box.hi[axis] + steps, last);
        if (box.lo[axis] > last) throw WindowError("window exhausted by shift");
    }
    std::vector<double> v;
    v.reserve(box.count() * f.n());
    std::vector<std::size_t> src(f.dims());
    for_each(box, [&](std::span<const std::size_t> idx) {
        std::copy(idx.begin(), idx.end(), src.begin());
        src[axis] = k > 0 ? idx[axis] + steps : idx[axis] - steps;
        auto x = f.at(src);
        v.insert(v.end(), x.begin(), x.end());
    });
    return FieldD(f.grid_ptr(), box, f.n(), std::move(v));
}

FieldD sigma_except(const FieldD& f, std::size_t skip) {
    FieldD out = f;
    for (std::size_t a = 0; a < f.dims(); ++a) {
        if (a != skip) out = shift(out, a, 1);
    }
    return out;
}

std::vector<double> multi_integral(const FieldD& f, const IndexBox& box) {
    std::vector<double> acc(f.n(), 0.0);
    IndexBox inner = box;
    for (std::size_t a = 0; a < box.dims(); ++a) {
        if (box.hi[a] <= box.lo[a]) return acc;
        inner.hi[a] = box.hi[a] - 1;
    }
    if (!box_contains(f.window(), inner)) throw WindowError("integration box leaves the field window");
    for_each(inner, [&](std::span<const std::size_t> idx) {
        double w = 1.0;
        for (std::size_t a = 0; a < idx.size(); ++a) w *= f.grid().axis(a).mu(idx[a]);
        auto x = f.at(idx);
        for (std::size_t k = 0; k < f.n(); ++k) acc[k] += w * x[k];
    });
    return acc;
}

std::vector<double> multi_integral(const FieldD& f) { return multi_integral(f, f.window()); }

GreensResult greens_theorem(const FieldD& M, const FieldD& N, FenceRule rule) {
    if (M.dims() != 2 || N.dims() != 2) throw DomainError("Green's theorem is implemented for d = 2");
    if (M.n() != 1 || N.n() != 1) throw DomainError("Green's theorem takes scalar fields");
    const auto box = intersect(M.window(), N.window());
    if (box.empty() || box.hi[0] == box.lo[0] || box.hi[1] == box.lo[1]) {
        throw WindowError("Green's theorem needs a rectangle with at least 2 points per axis");
    }
    const auto& tx = M.grid().axis(0);
    const auto& ty = M.grid().axis(1);
    const auto x0 = box.lo[0], x1 = box.hi[0], y0 = box.lo[1], y1 = box.hi[1];

    const auto Mr = M.restrict(box);
    const auto Nr = N.restrict(box);
    const auto integrand = partial_delta(Nr, 0) - partial_delta(Mr, 1);
    GreensResult g;
    g.area_integral = multi_integral(integrand, box)[0];

    auto m = [&](std::size_t x, std::size_t y) { return M.at(std::array{x, y}, 0); };
    auto nf = [&](std::size_t x, std::size_t y) { return N.at(std::array{x, y}, 0); };
    double fence = 0.0;
    for (std::size_t x = x0; x < x1; ++x) fence += tx.mu(x) * m(x, y0);
    for (std::size_t y = y0; y < y1; ++y) fence += ty.mu(y) * nf(x1, y);
    if (rule == FenceRule::Delta) {
        for (std::size_t x = x0; x < x1; ++x) fence -= tx.mu(x) * m(x, y1);
        for (std::size_t y = y0; y < y1; ++y) fence -= ty.mu(y) * nf(x0, y);
    } else {
        for (std::size_t x = x0 + 1; x <= x1; ++x) fence -= tx.nu(x) * m(x, y1);
        for (std::size_t y = y0 + 1; y <= y1; ++y) fence -= ty.nu(y) * nf(x0, y);
    }
    g.fence_integral = fence;
    const double scale = std::max({1.0, std::abs(g.area_integral), std::abs(fence)});
    g.residual = std::abs(g.area_integral - fence) / scale;
    return g;
}

double greens_residual(const FieldD& M, const FieldD& N, FenceRule rule) {
    return greens_theorem(M, N, rule).residual;
}

FieldD random_field(const GridPtr& grid, const IndexBox& box, std::size_t n, std::size_t degree,
                    std::uint64_t seed, std::uint64_t trial, double amplitude) {
    const auto d = grid->dims();
    std::vector<std::vector<std::size_t>> exps;
    IndexBox ebox{std::vector<std::size_t>(d, 0), std::vector<std::size_t>(d, degree)};
    for_each(ebox, [&](std::span<const std::size_t> e) {
        std::size_t s = 0;
        for (auto x : e) s += x;
        if (s <= degree) exps.emplace_back(e.begin(), e.end());
    });
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> c(exps.size() * n);
    for (auto& x : c) x = dist(rng);

    std::vector<double> t0(d), t1(d);
    for (std::size_t a = 0; a < d; ++a) {
        t0[a] = grid->axis(a)[box.lo[a]];
        t1[a] = grid->axis(a)[box.hi[a]];
    }
    auto f = FieldD::sample(grid, box, n, [&](std::span<const double> x, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t e = 0; e < exps.size(); ++e) {
            double mono = 1.0;
            for (std::size_t a = 0; a < d; ++a) {
                const double s = t1[a] > t0[a] ? 2.0 * (x[a] - t0[a]) / (t1[a] - t0[a]) - 1.0 : 0.0;
                mono *= std::pow(s, static_cast<double>(exps[e][a]));
            }
            for (std::size_t k = 0; k < n; ++k) out[k] += c[e * n + k] * mono;
        }
    });
    double amp = 0.0;
    for (double x : f.values()) amp = std::max(amp, std::abs(x));
    return amp > 0.0 ? (amplitude / amp) * f : f;
}

}  // namespace noether
