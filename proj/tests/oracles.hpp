#pragma once

// Reference computations that avoid the library's index/window machinery:
// functions are plain lambdas of t and sigma is a closed-form map.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "noether/gauge.hpp"
#include "noether/lagrangian.hpp"
#include "noether/multigrid.hpp"
#include "noether/timescale.hpp"

namespace oracle {

using Fn = std::function<double(double)>;

struct Jump {
    double b1;
    double b0;
    double operator()(double t) const { return b1 * t + b0; }
};

inline Jump jump_of(const noether::TimeScale& ts) {
    const auto h = ts.condition_h().value();
    return {h.b1, h.b0};
}

/// (f(sigma t) - f(t)) / (sigma t - t)
inline Fn delta(Fn f, Jump s) {
    return [f = std::move(f), s](double t) {
        const double st = s(t);
        return (f(st) - f(t)) / (st - t);
    };
}

inline Fn delta_n(Fn f, Jump s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) f = delta(std::move(f), s);
    return f;
}

inline Fn compose_sigma(Fn f, Jump s) {
    return [f = std::move(f), s](double t) { return f(s(t)); };
}

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

/// A polynomial with the given coefficients (ascending powers).
inline Fn poly(std::vector<double> c) {
    return [c = std::move(c)](double t) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
        return acc;
    };
}

inline std::vector<double> random_coeffs(std::mt19937_64& rng, std::size_t count, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> c(count);
    for (auto& x : c) x = scale * dist(rng);
    return c;
}

/// E_k(t) = dL/du_k - Delta(dL/dv_k) for a path given as n lambdas.
inline std::vector<Fn> el_lambdas(const noether::Lagrangian& L, const std::vector<Fn>& y, Jump s) {
    const auto n = y.size();
    auto args = [=](double t, std::vector<double>& u, std::vector<double>& v) {
        const double st = s(t);
        for (std::size_t k = 0; k < n; ++k) {
            u[k] = y[k](st);
            v[k] = (y[k](st) - y[k](t)) / (st - t);
        }
    };
    std::vector<Fn> out;
    for (std::size_t k = 0; k < n; ++k) {
        Fn du = [=](double t) {
            std::vector<double> u(n), v(n), g(n);
            args(t, u, v);
            L.grad_u(t, u, v, g);
            return g[k];
        };
        Fn dv = [=](double t) {
            std::vector<double> u(n), v(n), g(n);
            args(t, u, v);
            L.grad_v(t, u, v, g);
            return g[k];
        };
        Fn ddv = delta(dv, s);
        out.push_back([du, ddv](double t) { return du(t) - ddv(t); });
    }
    return out;
}

/// Corollary form of the identity on a scale with sigma(t) = b1 t + b0:
/// sum_k sum_i (-1)^i (1/b1)^{i(i+1)/2} [g^k_i(sigma t) E_k(t)]^{Delta^i}.
/// With b1 = 1 this is the h-lattice corollary; with b0 = 0 the q-calculus one.
inline double corollary_identity(const std::vector<std::vector<Fn>>& g, const std::vector<Fn>& e, Jump s, double t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        for (std::size_t i = 0; i < g[k].size(); ++i) {
            Fn inner = [gk = g[k][i], ek = e[k], s](double x) { return gk(s(x)) * ek(x); };
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            const double c = sign * std::pow(1.0 / s.b1, static_cast<double>(i * (i + 1) / 2));
            acc += c * delta_n(inner, s, i)(t);
        }
    }
    return acc;
}

/// L(t, u, v) = 1/2 v.A v + u.B v + 1/2 u.C u + d.v + e.u + t (w.v) with random
/// symmetric A, C; analytic partials attached. `autonomous` drops the t term.
inline noether::Lagrangian random_quadratic(std::size_t n, std::mt19937_64& rng, bool autonomous) {
    auto A = random_coeffs(rng, n * n), B = random_coeffs(rng, n * n), C = random_coeffs(rng, n * n);
    auto d = random_coeffs(rng, n), e = random_coeffs(rng, n), w = random_coeffs(rng, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            A[i * n + j] = A[j * n + i];
            C[i * n + j] = C[j * n + i];
        }
    }
    if (autonomous) std::fill(w.begin(), w.end(), 0.0);
    noether::Lagrangian L;
    L.name = "random-quadratic";
    L.n = n;
    L.value = [=](double t, std::span<const double> u, std::span<const double> v) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                acc += 0.5 * v[i] * A[i * n + j] * v[j] + u[i] * B[i * n + j] * v[j] + 0.5 * u[i] * C[i * n + j] * u[j];
            }
            acc += d[i] * v[i] + e[i] * u[i] + t * w[i] * v[i];
        }
        return acc;
    };
    L.d_u = [=](double, std::span<const double> u, std::span<const double> v, std::span<double> out) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = e[i];
            for (std::size_t j = 0; j < n; ++j) s += B[i * n + j] * v[j] + C[i * n + j] * u[j];
            out[i] = s;
        }
    };
    L.d_v = [=](double t, std::span<const double> u, std::span<const double> v, std::span<double> out) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = d[j] + t * w[j];
            for (std::size_t i = 0; i < n; ++i) s += A[j * n + i] * v[i] + u[i] * B[i * n + j];
            out[j] = s;
        }
    };
    L.d_t = [=](double, std::span<const double>, std::span<const double> v) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i];
        return s;
    };
    return L;
}

/// Ltilde(t, (s, y), (r, v)) = L(s - mu(t) r, y, v / r) r, with no analytic partials.
/// Along s(t) = t its first Euler-Lagrange expression is the second EL expression of L.
inline noether::Lagrangian autonomized(const noether::Lagrangian& L, noether::ScalePtr scale) {
    noether::Lagrangian T;
    T.name = "autonomized";
    T.n = L.n + 1;
    const auto n = L.n;
    T.value = [L, scale, n](double t, std::span<const double> u, std::span<const double> v) {
        const double mu = scale->mu(scale->index_of(t));
        const double r = v[0];
        std::vector<double> w(n);
        for (std::size_t k = 0; k < n; ++k) w[k] = v[k + 1] / r;
        return L(u[0] - mu * r, u.subspan(1), w) * r;
    };
    return T;
}

/// Polynomial field of total degree <= 3 in raw coordinates, uniform(-1, 1) coefficients.
/// Unlike noether::random_field its derivatives stay O(1) on unit-spaced axes.
inline noether::FieldD raw_cubic_field(const noether::GridPtr& g, const noether::IndexBox& box, std::size_t n,
                                       std::mt19937_64& rng) {
    const auto d = g->dims();
    std::vector<std::vector<std::size_t>> exps;
    noether::for_each(noether::IndexBox{std::vector<std::size_t>(d, 0), std::vector<std::size_t>(d, 3)},
                      [&](std::span<const std::size_t> e) {
                          std::size_t total = 0;
                          for (auto x : e) total += x;
                          if (total <= 3) exps.emplace_back(e.begin(), e.end());
                      });
    const auto c = random_coeffs(rng, exps.size() * n);
    return noether::FieldD::sample(g, box, n, [&](std::span<const double> x, std::span<double> out) {
        for (std::size_t k = 0; k < n; ++k) {
            double acc = 0.0;
            for (std::size_t t = 0; t < exps.size(); ++t) {
                double term = c[k * exps.size() + t];
                for (std::size_t a = 0; a < d; ++a) term *= std::pow(x[a], static_cast<double>(exps[t][a]));
                acc += term;
            }
            out[k] = acc;
        }
    });
}

}  // namespace oracle
