#include "noether/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "noether/error.hpp"

namespace noether {

GaugeFamily::GaugeFamily(ScalePtr scale, std::size_t n, std::size_t m, std::size_t r)
    : scale_(std::move(scale)), n_(n), m_(m), r_(r) {
    if (!scale_) throw DomainError("gauge family needs a time scale");
    if (n_ == 0 || r_ == 0) throw DomainError("gauge family needs n >= 1 and r >= 1");
    const auto zero = GridFunction::zeros(scale_, 0, scale_->size() - 1, 1);
    g_.assign(n_ * (m_ + 1) * r_, zero);
}

std::size_t GaugeFamily::g_index(std::size_t k, std::size_t i, std::size_t j) const {
    if (k >= n_ || i > m_ || j >= r_) throw DomainError("gauge coefficient index out of range");
    return (k * (m_ + 1) + i) * r_ + j;
}

GridFunction GaugeFamily::checked(GridFunction coeff) const {
    if (coeff.n() != 1) throw DomainError("gauge coefficients are scalar functions");
    if (!same_scale(coeff.scale(), *scale_)) throw DomainError("gauge coefficient lives on another scale");
    if (coeff.lo() != 0 || coeff.hi() != scale_->size() - 1) {
        throw WindowError("gauge coefficients must cover the whole scale");
    }
    return coeff;
}

const GridFunction& GaugeFamily::g(std::size_t k, std::size_t i, std::size_t j) const {
    return g_[g_index(k, i, j)];
}

void GaugeFamily::set_g(std::size_t k, std::size_t i, std::size_t j, GridFunction coeff) {
    g_[g_index(k, i, j)] = checked(std::move(coeff));
}

void GaugeFamily::enable_time() {
    if (f_) return;
    const auto zero = GridFunction::zeros(scale_, 0, scale_->size() - 1, 1);
    f_.emplace((m_ + 1) * r_, zero);
}

const GridFunction& GaugeFamily::f(std::size_t i, std::size_t j) const {
    if (!f_) throw DomainError("gauge family has no time transformation");
    if (i > m_ || j >= r_) throw DomainError("time coefficient index out of range");
    return (*f_)[i * r_ + j];
}

void GaugeFamily::set_f(std::size_t i, std::size_t j, GridFunction coeff) {
    enable_time();
    if (i > m_ || j >= r_) throw DomainError("time coefficient index out of range");
    (*f_)[i * r_ + j] = checked(std::move(coeff));
}

std::pair<std::size_t, std::size_t> params_window(std::size_t m, std::size_t a, std::size_t b) {
    if (a == 0) throw WindowError("gauge operators read p at rho(a); the interval must not start at the scale minimum");
    return {a - 1, m == 0 ? b - 1 : b + m - 1};
}

GridFunction random_polynomial(const ScalePtr& scale, std::size_t lo, std::size_t hi, std::size_t degree,
                               std::uint64_t seed, std::uint64_t trial, std::uint64_t stream, double amplitude) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> c(degree + 1);
    for (auto& x : c) x = dist(rng);
    const double t0 = (*scale)[lo];
    const double t1 = (*scale)[hi];
    auto p = GridFunction::scalar(scale, lo, hi, [&](double t) {
        const double s = t1 > t0 ? 2.0 * (t - t0) / (t1 - t0) - 1.0 : 0.0;
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
        return acc;
    });
    double amp = 0.0;
    for (double x : p.values()) amp = std::max(amp, std::abs(x));
    return amp > 0.0 ? (amplitude / amp) * p : p;
}

GridFunction random_path(const ScalePtr& scale, std::size_t lo, std::size_t hi, std::size_t n, std::size_t degree,
                         std::uint64_t seed, double amplitude) {
    std::vector<double> v((hi - lo + 1) * n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto c = random_polynomial(scale, lo, hi, degree, seed, 0, 1000 + k, amplitude);
        for (std::size_t i = lo; i <= hi; ++i) v[(i - lo) * n + k] = c.at(i, 0);
    }
    return GridFunction(scale, lo, hi, n, std::move(v));
}

std::vector<GridFunction> random_params(const ScalePtr& scale, std::size_t m, std::size_t r, std::size_t a,
                                        std::size_t b, std::uint64_t seed, std::uint64_t trial) {
    const auto [lo, hi] = params_window(m, a, b);
    if (hi >= scale->size()) throw WindowError("scale too short for the gauge parameter window");
    std::vector<GridFunction> out;
    for (std::size_t j = 0; j < r; ++j) out.push_back(random_polynomial(scale, lo, hi, m + 2, seed, trial, j));
    return out;
}

GridFunction apply_operator(const std::vector<const GridFunction*>& coeffs, std::size_t m, const GridFunction& p,
                            std::size_t a, std::size_t b) {
    if (coeffs.size() != m + 1) throw DomainError("operator needs m+1 coefficients");
    if (p.n() != 1) throw DomainError("gauge parameters are scalar functions");
    const auto [lo, hi] = params_window(m, a, b);
    if (p.lo() > lo || p.hi() < hi) {
        throw WindowError("gauge parameter must cover [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (m > 0 && b + 1 >= p.scale().size()) {
        throw WindowError("delta derivatives of p at b need mu(b) > 0; b must lie below the scale maximum");
    }
    auto acc = GridFunction::zeros(p.scale_ptr(), a, b, 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const int s = static_cast<int>(m) - static_cast<int>(i) - 1;
        const auto term = multiply(*coeffs[i], mixed(p, s, i)).restrict(a, b);
        acc = acc + term;
    }
    return acc;
}

GridFunction apply_T(const GaugeFamily& fam, const GridFunction& p, std::size_t k, std::size_t j, std::size_t a,
                     std::size_t b) {
    std::vector<const GridFunction*> c;
    for (std::size_t i = 0; i <= fam.m(); ++i) c.push_back(&fam.g(k, i, j));
    return apply_operator(c, fam.m(), p, a, b);
}

GridFunction apply_H(const GaugeFamily& fam, const GridFunction& p, std::size_t j, std::size_t a, std::size_t b) {
    std::vector<const GridFunction*> c;
    for (std::size_t i = 0; i <= fam.m(); ++i) c.push_back(&fam.f(i, j));
    return apply_operator(c, fam.m(), p, a, b);
}

GridFunction total_variation_field(const GaugeFamily& fam, const std::vector<GridFunction>& params, std::size_t a,
                                   std::size_t b) {
    if (params.size() != fam.r()) throw DomainError("expected one parameter function per gauge index j");
    const auto n = fam.n();
    std::vector<double> v((b - a + 1) * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < fam.r(); ++j) {
            const auto t = apply_T(fam, params[j], k, j, a, b);
            for (std::size_t i = a; i <= b; ++i) v[(i - a) * n + k] += t.at(i, 0);
        }
    }
    return GridFunction(fam.scale_ptr(), a, b, n, std::move(v));
}

Transformed transform(const GaugeFamily& fam, const std::vector<GridFunction>& params, const GridFunction& y) {
    if (y.n() != fam.n()) throw DomainError("family and y have different component counts");
    if (!same_scale(y.scale(), fam.scale())) throw DomainError("family and y live on different scales");
    const auto a = y.lo();
    const auto b = y.hi();
    auto ybar = y + total_variation_field(fam, params, a, b);

    Transformed out{{}, ybar};
    out.alpha.resize(b - a + 1);
    for (std::size_t i = a; i <= b; ++i) out.alpha[i - a] = y.t(i);
    if (!fam.has_time()) return out;

    for (std::size_t j = 0; j < fam.r(); ++j) {
        const auto h = apply_H(fam, params[j], j, a, b);
        for (std::size_t i = a; i <= b; ++i) out.alpha[i - a] += h.at(i, 0);
    }
    for (std::size_t i = 0; i + 1 < out.alpha.size(); ++i) {
        if (!(out.alpha[i + 1] > out.alpha[i])) {
            throw DomainError("time transformation is not strictly increasing at index " + std::to_string(a + i));
        }
    }
    auto image = make_scale(TimeScale::from_points(out.alpha));
    std::vector<double> values(ybar.values().begin(), ybar.values().end());
    out.ybar = GridFunction(image, 0, b - a, y.n(), std::move(values));
    return out;
}

}  // namespace noether
