#include "noether/field_lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "noether/error.hpp"

namespace noether {

namespace {

void central_grad(const FieldLagrangian::Value& value, std::span<const double> x, std::span<const double> u,
                  std::span<const double> g, bool wrt_u, double scale, std::span<double> out) {
    std::vector<double> w(wrt_u ? u.begin() : g.begin(), wrt_u ? u.end() : g.end());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double saved = w[i];
        const double h = scale * std::max(1.0, std::abs(saved));
        w[i] = saved + h;
        const double up = wrt_u ? value(x, w, g) : value(x, u, w);
        w[i] = saved - h;
        const double dn = wrt_u ? value(x, w, g) : value(x, u, w);
        w[i] = saved;
        out[i] = (up - dn) / (2.0 * h);
    }
}

}  // namespace

void FieldLagrangian::grad_u(std::span<const double> x, std::span<const double> u, std::span<const double> g,
                             std::span<double> out) const {
    if (d_u) {
        d_u(x, u, g, out);
        return;
    }
    central_grad(value, x, u, g, true, fd_scale, out);
}

void FieldLagrangian::grad_g(std::span<const double> x, std::span<const double> u, std::span<const double> g,
                             std::span<double> out) const {
    if (d_grad) {
        d_grad(x, u, g, out);
        return;
    }
    central_grad(value, x, u, g, false, fd_scale, out);
}

FieldArguments field_arguments(const FieldD& u) {
    const auto d = u.dims();
    IndexBox box = u.window();
    for (std::size_t a = 0; a < d; ++a) {
        if (box.hi[a] == box.lo[a]) throw WindowError("field needs at least 2 points per axis");
        box.hi[a] -= 1;
    }
    const auto u_sigma = sigma_except(u, d).restrict(box);
    std::vector<FieldD> slots;
    for (std::size_t k = 0; k < u.n(); ++k) {
        const auto uk = u.component(k);
        for (std::size_t a = 0; a < d; ++a) slots.push_back(sigma_except(partial_delta(uk, a), a).restrict(box));
    }
    return {u_sigma, stack(slots)};
}

namespace {

struct DensityParts {
    FieldD value;
    FieldD du;
    FieldD dg;
};

DensityParts evaluate(const FieldLagrangian& L, const FieldD& u, bool want_partials) {
    if (u.dims() != L.d || u.n() != L.n) throw DomainError("field does not match the Lagrangian's d and n");
    const auto args = field_arguments(u);
    const auto& box = args.u_sigma.window();
    const auto n = L.n;
    const auto ng = L.n * L.d;
    std::vector<double> val, du, dg;
    val.reserve(box.count());
    if (want_partials) {
        du.resize(box.count() * n);
        dg.resize(box.count() * ng);
    }
    std::size_t p = 0;
    for_each(box, [&](std::span<const std::size_t> idx) {
        const auto x = u.coords(idx);
        auto us = args.u_sigma.at(idx);
        auto g = args.grad.at(idx);
        val.push_back(L(x, us, g));
        if (want_partials) {
            L.grad_u(x, us, g, std::span<double>(du).subspan(p * n, n));
            L.grad_g(x, us, g, std::span<double>(dg).subspan(p * ng, ng));
        }
        ++p;
    });
    FieldD value(u.grid_ptr(), box, 1, std::move(val));
    if (!want_partials) return {value, value, value};
    return {value, FieldD(u.grid_ptr(), box, n, std::move(du)), FieldD(u.grid_ptr(), box, ng, std::move(dg))};
}

}  // namespace

FieldD lagrangian_density(const FieldLagrangian& L, const FieldD& u) { return evaluate(L, u, false).value; }

double functional_d(const FieldLagrangian& L, const FieldD& u) {
    const auto dens = lagrangian_density(L, u);
    // the density lives on [lo, hi-1]; integrate over u's box [lo, hi)
    return multi_integral(dens, u.window())[0];
}

FieldD el_expressions_d(const FieldLagrangian& L, const FieldD& u) {
    const auto parts = evaluate(L, u, true);
    const auto d = L.d;
    std::vector<FieldD> comps;
    for (std::size_t k = 0; k < L.n; ++k) {
        FieldD acc = parts.du.component(k);
        for (std::size_t a = 0; a < d; ++a) acc = acc - partial_delta(parts.dg.component(k * d + a), a);
        comps.push_back(acc);
    }
    return stack(comps);
}

ResidualReport el_residual_d(const FieldLagrangian& L, const FieldD& u, double tolerance) {
    const auto e = el_expressions_d(L, u);
    return make_report("euler_lagrange_d", e.window(), e.n(),
                       std::vector<double>(e.values().begin(), e.values().end()), tolerance);
}

namespace catalog {

FieldLagrangian maxwell(std::size_t d) {
    FieldLagrangian L;
    L.name = "maxwell";
    L.d = d;
    L.n = d;
    // F_{ka} = G_{k,a} - G_{a,k}; weight +1 for pairs touching axis 0, -1 otherwise
    L.value = [d](std::span<const double>, std::span<const double>, std::span<const double> g) {
        double acc = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                const double f = g[i * d + j] - g[j * d + i];
                acc += (i == 0 ? 0.5 : -0.5) * f * f;
            }
        }
        return acc;
    };
    L.d_u = [](std::span<const double>, std::span<const double>, std::span<const double>, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
    };
    L.d_grad = [d](std::span<const double>, std::span<const double>, std::span<const double> g,
                   std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                const double w = (i == 0 ? 1.0 : -1.0) * (g[i * d + j] - g[j * d + i]);
                out[i * d + j] += w;
                out[j * d + i] -= w;
            }
        }
    };
    return L;
}

FieldLagrangian field_pair_difference(std::size_t d) {
    FieldLagrangian L;
    L.name = "field-pair-difference";
    L.d = d;
    L.n = 2;
    L.value = [d](std::span<const double>, std::span<const double>, std::span<const double> g) {
        double acc = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            const double w = g[a] - g[d + a];
            acc += 0.5 * w * w;
        }
        return acc;
    };
    L.d_u = [](std::span<const double>, std::span<const double>, std::span<const double>, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
    };
    L.d_grad = [d](std::span<const double>, std::span<const double>, std::span<const double> g,
                   std::span<double> out) {
        for (std::size_t a = 0; a < d; ++a) {
            const double w = g[a] - g[d + a];
            out[a] = w;
            out[d + a] = -w;
        }
    };
    return L;
}

FieldLagrangian field_dirichlet(std::size_t d) {
    FieldLagrangian L;
    L.name = "field-dirichlet";
    L.d = d;
    L.n = 1;
    L.value = [](std::span<const double>, std::span<const double>, std::span<const double> g) {
        double acc = 0.0;
        for (double x : g) acc += 0.5 * x * x;
        return acc;
    };
    L.d_u = [](std::span<const double>, std::span<const double>, std::span<const double>, std::span<double> out) {
        out[0] = 0.0;
    };
    L.d_grad = [](std::span<const double>, std::span<const double>, std::span<const double> g,
                  std::span<double> out) { std::copy(g.begin(), g.end(), out.begin()); };
    return L;
}

}  // namespace catalog

}  // namespace noether
