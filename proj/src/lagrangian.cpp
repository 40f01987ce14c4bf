#include "noether/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "noether/error.hpp"

namespace noether {

namespace {

double central(const std::function<double(double)>& g, double x, double scale) {
    const double h = scale * std::max(1.0, std::abs(x));
    return (g(x + h) - g(x - h)) / (2.0 * h);
}

}  // namespace

void Lagrangian::grad_u(double t, std::span<const double> u, std::span<const double> v,
                        std::span<double> out) const {
    if (d_u) {
        d_u(t, u, v, out);
        return;
    }
    std::vector<double> w(u.begin(), u.end());
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = central(
            [&](double x) {
                w[k] = x;
                const double r = value(t, w, v);
                w[k] = u[k];
                return r;
            },
            u[k], fd_scale);
    }
}

void Lagrangian::grad_v(double t, std::span<const double> u, std::span<const double> v,
                        std::span<double> out) const {
    if (d_v) {
        d_v(t, u, v, out);
        return;
    }
    std::vector<double> w(v.begin(), v.end());
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = central(
            [&](double x) {
                w[k] = x;
                const double r = value(t, u, w);
                w[k] = v[k];
                return r;
            },
            v[k], fd_scale);
    }
}

double Lagrangian::partial_t(double t, std::span<const double> u, std::span<const double> v) const {
    if (d_t) return d_t(t, u, v);
    return central([&](double s) { return value(s, u, v); }, t, fd_scale);
}

Lagrangian Lagrangian::fd_only() const {
    Lagrangian L = *this;
    L.d_u = nullptr;
    L.d_v = nullptr;
    L.d_t = nullptr;
    return L;
}

double self_check(const Lagrangian& L, std::uint64_t seed, std::size_t probes) {
    const auto fd = L.fd_only();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> u(L.n), v(L.n), a(L.n), b(L.n);
    double worst = 0.0;
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); };
    for (std::size_t p = 0; p < probes; ++p) {
        const double t = dist(rng);
        for (auto& x : u) x = dist(rng);
        for (auto& x : v) x = dist(rng);
        if (L.d_u) {
            L.grad_u(t, u, v, a);
            fd.grad_u(t, u, v, b);
            for (std::size_t k = 0; k < L.n; ++k) worst = std::max(worst, rel(a[k], b[k]));
        }
        if (L.d_v) {
            L.grad_v(t, u, v, a);
            fd.grad_v(t, u, v, b);
            for (std::size_t k = 0; k < L.n; ++k) worst = std::max(worst, rel(a[k], b[k]));
        }
        if (L.d_t) worst = std::max(worst, rel(L.partial_t(t, u, v), fd.partial_t(t, u, v)));
    }
    return worst;
}

Lagrangian combine(double a, const Lagrangian& L1, double b, const Lagrangian& L2) {
    if (L1.n != L2.n) throw DomainError("cannot combine Lagrangians of different dimension");
    Lagrangian L;
    L.name = L1.name + "+" + L2.name;
    L.n = L1.n;
    L.fd_scale = std::min(L1.fd_scale, L2.fd_scale);
    L.value = [=](double t, std::span<const double> u, std::span<const double> v) {
        return a * L1(t, u, v) + b * L2(t, u, v);
    };
    auto grad = [n = L.n](auto first, auto second, double a, double b) {
        return [=](double t, std::span<const double> u, std::span<const double> v, std::span<double> out) {
            std::vector<double> x(n), y(n);
            first(t, u, v, std::span<double>(x));
            second(t, u, v, std::span<double>(y));
            for (std::size_t k = 0; k < n; ++k) out[k] = a * x[k] + b * y[k];
        };
    };
    if (L1.d_u && L2.d_u) L.d_u = grad(L1.d_u, L2.d_u, a, b);
    if (L1.d_v && L2.d_v) L.d_v = grad(L1.d_v, L2.d_v, a, b);
    if (L1.d_t && L2.d_t) {
        L.d_t = [=](double t, std::span<const double> u, std::span<const double> v) {
            return a * L1.d_t(t, u, v) + b * L2.d_t(t, u, v);
        };
    }
    return L;
}

}  // namespace noether
