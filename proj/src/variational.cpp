#include "noether/variational.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "noether/error.hpp"

namespace noether {

namespace {

void require_fit(const Lagrangian& L, const GridFunction& y, std::size_t min_points) {
    if (y.n() != L.n) {
        throw DomainError("Lagrangian expects n=" + std::to_string(L.n) + " but y has n=" + std::to_string(y.n()));
    }
    if (y.count() < min_points) {
        throw WindowError("y needs at least " + std::to_string(min_points) + " points, has " +
                          std::to_string(y.count()));
    }
}

double sup(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s = std::max(s, std::abs(x));
    return s;
}

}  // namespace

double eval_functional(const Lagrangian& L, const GridFunction& y) {
    require_fit(L, y, 2);
    const auto& ts = y.scale();
    double acc = 0.0;
    for (std::size_t i = y.lo(); i < y.hi(); ++i) {
        const double mu = ts.mu(i);
        auto cur = y.at(i);
        auto next = y.at(i + 1);
        std::vector<double> v(y.n());
        for (std::size_t k = 0; k < y.n(); ++k) v[k] = (next[k] - cur[k]) / mu;
        acc += mu * L(ts[i], next, v);
    }
    return acc;
}

Partials partials_along(const Lagrangian& L, const GridFunction& y) {
    require_fit(L, y, 2);
    const auto n = y.n();
    const auto lo = y.lo();
    const auto hi = y.hi() - 1;
    const auto& ts = y.scale();
    std::vector<double> du((hi - lo + 1) * n), dv((hi - lo + 1) * n), v(n);
    for (std::size_t i = lo; i <= hi; ++i) {
        const double mu = ts.mu(i);
        auto cur = y.at(i);
        auto next = y.at(i + 1);
        for (std::size_t k = 0; k < n; ++k) v[k] = (next[k] - cur[k]) / mu;
        L.grad_u(ts[i], next, v, std::span<double>(du).subspan((i - lo) * n, n));
        L.grad_v(ts[i], next, v, std::span<double>(dv).subspan((i - lo) * n, n));
    }
    return {GridFunction(y.scale_ptr(), lo, hi, n, std::move(du)),
            GridFunction(y.scale_ptr(), lo, hi, n, std::move(dv))};
}

double first_variation_unchecked(const Lagrangian& L, const GridFunction& y, const GridFunction& eta) {
    if (eta.n() != y.n()) throw DomainError("eta and y have different component counts");
    if (eta.lo() > y.lo() || eta.hi() < y.hi()) throw WindowError("eta must cover y's window");
    const auto p = partials_along(L, y);
    const auto& ts = y.scale();
    double acc = 0.0;
    for (std::size_t i = y.lo(); i < y.hi(); ++i) {
        const double mu = ts.mu(i);
        auto du = p.du.at(i);
        auto dv = p.dv.at(i);
        auto e0 = eta.at(i);
        auto e1 = eta.at(i + 1);
        double s = 0.0;
        for (std::size_t k = 0; k < y.n(); ++k) s += du[k] * e1[k] + dv[k] * (e1[k] - e0[k]) / mu;
        acc += mu * s;
    }
    return acc;
}

double first_variation(const Lagrangian& L, const GridFunction& y, const GridFunction& eta) {
    if (eta.lo() > y.lo() || eta.hi() < y.hi()) throw WindowError("eta must cover y's window");
    if (sup(eta.at(y.lo())) > 1e-12 || sup(eta.at(y.hi())) > 1e-12) {
        throw DomainError("eta is not admissible: it must vanish at both ends");
    }
    return first_variation_unchecked(L, y, eta);
}

GridFunction el_expressions(const Lagrangian& L, const GridFunction& y) {
    require_fit(L, y, 3);
    const auto p = partials_along(L, y);
    return p.du - delta_derivative(p.dv);
}

ResidualReport el_residual(const Lagrangian& L, const GridFunction& y, double tolerance) {
    auto e = el_expressions(L, y);
    std::vector<double> values(e.values().begin(), e.values().end());
    return make_report("euler_lagrange", box1(e.lo(), e.hi()), e.n(), std::move(values), tolerance);
}

GridFunction second_el_expression(const Lagrangian& L, const GridFunction& y) {
    require_fit(L, y, 3);
    const auto n = y.n();
    const auto lo = y.lo();
    const auto hi = y.hi() - 1;
    const auto& ts = y.scale();
    std::vector<double> lt(hi - lo + 1), inner(hi - lo + 1), v(n), dv(n);
    for (std::size_t i = lo; i <= hi; ++i) {
        const double mu = ts.mu(i);
        auto cur = y.at(i);
        auto next = y.at(i + 1);
        for (std::size_t k = 0; k < n; ++k) v[k] = (next[k] - cur[k]) / mu;
        const double t = ts[i];
        const double dt = L.partial_t(t, next, v);
        L.grad_v(t, next, v, dv);
        double phi = L(t, next, v) - mu * dt;
        for (std::size_t k = 0; k < n; ++k) phi -= v[k] * dv[k];
        lt[i - lo] = dt;
        inner[i - lo] = phi;
    }
    GridFunction dt_fn(y.scale_ptr(), lo, hi, 1, std::move(lt));
    GridFunction inner_fn(y.scale_ptr(), lo, hi, 1, std::move(inner));
    return dt_fn - delta_derivative(inner_fn);
}

ResidualReport second_el_residual(const Lagrangian& L, const GridFunction& y, double tolerance) {
    auto e = second_el_expression(L, y);
    std::vector<double> values(e.values().begin(), e.values().end());
    return make_report("second_euler_lagrange", box1(e.lo(), e.hi()), 1, std::move(values), tolerance);
}

GridFunction linear_guess(ScalePtr scale, std::size_t lo, std::size_t hi, const BoundaryData& boundary) {
    if (boundary.alpha.size() != boundary.beta.size()) throw DomainError("alpha and beta differ in size");
    const auto n = boundary.alpha.size();
    const double ta = (*scale)[lo];
    const double tb = (*scale)[hi];
    return GridFunction::sample(scale, lo, hi, n, [&](double t, std::span<double> out) {
        const double s = (t - ta) / (tb - ta);
        for (std::size_t k = 0; k < n; ++k) out[k] = (1.0 - s) * boundary.alpha[k] + s * boundary.beta[k];
    });
}

SolveResult solve_extremal(const Lagrangian& L, const BoundaryData& boundary, const GridFunction& y0,
                           const SolveOptions& options) {
    require_fit(L, y0, 3);
    const auto n = y0.n();
    if (boundary.alpha.size() != n || boundary.beta.size() != n) {
        throw DomainError("boundary data must have n components");
    }
    const auto lo = y0.lo();
    const auto hi = y0.hi();
    const auto interior = hi - lo - 1;
    const auto size = static_cast<Eigen::Index>(interior * n);

    std::vector<double> values(y0.values().begin(), y0.values().end());
    std::copy(boundary.alpha.begin(), boundary.alpha.end(), values.begin());
    std::copy(boundary.beta.begin(), boundary.beta.end(), values.end() - static_cast<std::ptrdiff_t>(n));

    auto residual = [&](const std::vector<double>& vals) {
        GridFunction y(y0.scale_ptr(), lo, hi, n, vals);
        auto e = el_expressions(L, y);
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(e.values().data(), size));
    };

    Eigen::VectorXd r = residual(values);
    double norm = r.lpNorm<Eigen::Infinity>();
    std::size_t iter = 0;
    while (norm > options.target) {
        if (iter == options.max_iter) {
            if (norm <= options.accept) break;
            throw SolverError("Newton did not converge in " + std::to_string(options.max_iter) + " iterations",
                              norm);
        }
        ++iter;
        Eigen::MatrixXd J(size, size);
        for (Eigen::Index c = 0; c < size; ++c) {
            auto& x = values[n + static_cast<std::size_t>(c)];
            const double saved = x;
            const double h = 1e-6 * std::max(1.0, std::abs(saved));
            x = saved + h;
            Eigen::VectorXd rp = residual(values);
            x = saved - h;
            Eigen::VectorXd rm = residual(values);
            x = saved;
            J.col(c) = (rp - rm) / (2.0 * h);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible()) throw SolverError("singular Jacobian in Newton iteration", norm);
        Eigen::VectorXd step = lu.solve(-r);

        double scale = 1.0;
        bool improved = false;
        std::vector<double> trial = values;
        for (std::size_t h = 0; h <= options.max_halvings; ++h, scale *= 0.5) {
            for (Eigen::Index c = 0; c < size; ++c) trial[n + static_cast<std::size_t>(c)] = values[n + static_cast<std::size_t>(c)] + scale * step[c];
            Eigen::VectorXd rt = residual(trial);
            const double nt = rt.lpNorm<Eigen::Infinity>();
            if (nt < norm) {
                values = trial;
                r = std::move(rt);
                norm = nt;
                improved = true;
                break;
            }
        }
        if (!improved) {
            if (norm <= options.accept) break;
            throw SolverError("Newton stalled: damping could not reduce the residual", norm);
        }
    }
    return {GridFunction(y0.scale_ptr(), lo, hi, n, std::move(values)), iter, norm};
}

}  // namespace noether
