#include "noether/fundamental_lemma.hpp"

#include <cmath>
#include <random>

#include "noether/error.hpp"

namespace noether {

namespace {

std::size_t order_of(const std::vector<GridFunction>& f) {
    if (f.empty()) throw DomainError("fundamental lemma needs f_0");
    for (const auto& fi : f) {
        if (fi.n() != 1) throw DomainError("fundamental lemma coefficients are scalar");
        if (fi.lo() != f[0].lo() || fi.hi() != f[0].hi() || !same_scale(fi.scale(), f[0].scale())) {
            throw WindowError("fundamental lemma coefficients must share one window");
        }
    }
    return f.size() - 1;
}

// (-1)^i (1/b1)^{i(i-1)/2}
double lemma_coefficient(std::size_t i, double b1) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(1.0 / b1, static_cast<double>(i == 0 ? 0 : i * (i - 1) / 2));
}

}  // namespace

double fundamental_integral(const std::vector<GridFunction>& f, const GridFunction& eta) {
    const auto m = order_of(f);
    const auto a = f[0].lo();
    const auto b = f[0].hi();
    const auto& ts = f[0].scale();
    if (m == 0 && b + 1 >= ts.size()) throw WindowError("m = 0 needs a point beyond b for mu(b)");
    double acc = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
        const auto term = mixed(eta, static_cast<int>(m - i), i);
        for (std::size_t t = a; t <= b - m; ++t) acc += ts.mu(t) * f[i].at(t, 0) * term.at(t, 0);
    }
    return acc;
}

std::vector<GridFunction> vanishing_instance(const ScalePtr& scale, std::size_t m, std::uint64_t seed) {
    const auto& h = scale->condition_h();
    if (!h) throw DomainError("fundamental lemma instances need condition (H)");
    const std::size_t a = 0;
    const std::size_t b = m == 0 ? scale->size() - 2 : scale->size() - 1;
    if (scale->size() < 2 || b + 1 < 2 * m + 1) throw WindowError("scale too short for this order");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto random_fn = [&] {
        std::vector<double> v(b - a + 1);
        for (auto& x : v) x = dist(rng);
        return GridFunction(scale, a, b, 1, std::move(v));
    };
    std::vector<GridFunction> f;
    f.push_back(random_fn());
    for (std::size_t i = 1; i <= m; ++i) f.push_back(random_fn());

    std::vector<double> f0(f[0].values().begin(), f[0].values().end());
    for (std::size_t t = a; t <= b - 2 * m; ++t) f0[t - a] = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        const auto d = delta_derivative(f[i], i);
        for (std::size_t t = a; t <= b - 2 * m; ++t) f0[t - a] -= lemma_coefficient(i, h->b1) * d.at(t, 0);
    }
    f[0] = GridFunction(scale, a, b, 1, std::move(f0));
    return f;
}

std::vector<GridFunction> perturb_instance(std::vector<GridFunction> f, std::size_t s, double size) {
    std::vector<double> v(f.at(0).values().begin(), f.at(0).values().end());
    v.at(s - f[0].lo()) += size;
    f[0] = GridFunction(f[0].scale_ptr(), f[0].lo(), f[0].hi(), 1, std::move(v));
    return f;
}

GridFunction unit_impulse(const ScalePtr& scale, std::size_t a, std::size_t b, std::size_t s) {
    std::vector<double> v(b - a + 1, 0.0);
    v.at(s - a) = 1.0;
    return GridFunction(scale, a, b, 1, std::move(v));
}

FundamentalLemmaResult fundamental_lemma_oracle(const std::vector<GridFunction>& f, double tolerance) {
    const auto m = order_of(f);
    const auto a = f[0].lo();
    const auto b = f[0].hi();
    const auto& h = f[0].scale().condition_h();
    if (!h) throw DomainError("fundamental lemma oracle needs condition (H)");
    if (b - a + 1 < 2 * m + 1) throw WindowError("fundamental lemma needs at least 2m+1 points");

    FundamentalLemmaResult r;
    r.window_lo = a;
    r.window_hi = b - 2 * m;

    for (std::size_t s = a + m; s <= b - m; ++s) {
        const double v = fundamental_integral(f, unit_impulse(f[0].scale_ptr(), a, b, s));
        r.integrals.push_back(v);
        r.max_integral = std::max(r.max_integral, std::abs(v));
    }

    r.expression.assign(r.window_hi - r.window_lo + 1, 0.0);
    for (std::size_t i = 0; i <= m; ++i) {
        const double c = lemma_coefficient(i, h->b1);
        const auto d = delta_derivative(f[i], i);
        for (std::size_t t = r.window_lo; t <= r.window_hi; ++t) r.expression[t - a] += c * d.at(t, 0);
    }
    for (double x : r.expression) r.max_expression = std::max(r.max_expression, std::abs(x));

    r.integrals_vanish = r.max_integral <= tolerance;
    r.expression_vanishes = r.max_expression <= tolerance;
    r.consistent = r.integrals_vanish == r.expression_vanishes;
    r.pass = r.integrals_vanish && r.expression_vanishes;
    return r;
}

}  // namespace noether
