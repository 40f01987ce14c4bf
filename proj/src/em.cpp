#include "noether/em.hpp"

#include <cmath>

#include "noether/error.hpp"

namespace noether {

EMField::EMField(FieldD a) : A(std::move(a)) {
    if (A.dims() != 4 || A.n() != 4) throw DomainError("EM potentials are 4 components on a 4D grid");
}

namespace {

// partial_a A_k at sigma-except-a, as a scalar field
FieldD slot(const FieldD& A, std::size_t k, std::size_t a) {
    return sigma_except(partial_delta(A.component(k), a), a);
}

FieldD square(const FieldD& f) { return multiply(f, f); }

IndexBox shrink_top(IndexBox b, std::size_t by) {
    for (std::size_t a = 0; a < b.dims(); ++a) {
        if (b.hi[a] < b.lo[a] + by) throw WindowError("EM field window too small");
        b.hi[a] -= by;
    }
    return b;
}

}  // namespace

FieldD em_density(const EMField& F) {
    const auto& A = F.A;
    const auto box = shrink_top(A.window(), 1);
    // E_i = (grad A_0)_i - (dA/Delta_0)_i
    FieldD acc = FieldD::zeros(A.grid_ptr(), box, 1);
    for (std::size_t i = 1; i <= 3; ++i) {
        acc = acc + 0.5 * square(slot(A, 0, i) - slot(A, i, 0));
    }
    // curl components (2,3), (3,1), (1,2)
    const std::size_t pairs[3][2] = {{2, 3}, {3, 1}, {1, 2}};
    for (const auto& pr : pairs) {
        acc = acc - 0.5 * square(slot(A, pr[1], pr[0]) - slot(A, pr[0], pr[1]));
    }
    return acc.restrict(box);
}

FieldLagrangian em_lagrangian() {
    auto L = catalog::maxwell(4);
    L.name = "em";
    return L;
}

double em_functional(const EMField& F) { return multi_integral(em_density(F), F.A.window())[0]; }

EMField em_gauge(const EMField& F, const FieldD& p) {
    if (p.n() != 1) throw DomainError("gauge parameter is a scalar field");
    if (!box_contains(p.window(), rho_extended(F.A.window()))) {
        throw WindowError("gauge parameter must cover the potentials' window extended by rho");
    }
    std::vector<FieldD> parts;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto g = shift(partial_delta(p, k), k, -1);
        parts.push_back((F.A.component(k) + g).restrict(F.A.window()));
    }
    return EMField(stack(parts));
}

GaugeFamilyD em_gauge_family(const GridPtr& grid) { return families::gradient_gauge(grid); }

FieldD em_divergence(const EMField& F) {
    const auto e = el_expressions_d(em_lagrangian(), F.A);
    FieldD acc = partial_delta(e.component(0), 0);
    for (std::size_t k = 1; k < 4; ++k) acc = acc + partial_delta(e.component(k), k);
    return acc.restrict(shrink_top(F.A.window(), 3));
}

ResidualReport em_noether_residual(const EMField& F, double tolerance) {
    const auto v = em_divergence(F);
    return make_report("em_noether_identity", v.window(), 1, std::vector<double>(v.values().begin(), v.values().end()),
                       tolerance);
}

ResidualReport em_lorentz_check(const EMField& F, double tolerance) {
    const auto& A = F.A;
    const auto box = shrink_top(A.window(), 2);
    FieldD diff = partial_delta(A.component(0), 0);
    for (std::size_t i = 1; i <= 3; ++i) diff = diff - partial_delta(A.component(i), i);
    std::vector<FieldD> patterns;
    for (std::size_t p = 0; p < 4; ++p) patterns.push_back(sigma_except(diff, p).restrict(box));
    const auto all = stack(patterns);
    return make_report("em_lorentz", box, 4, std::vector<double>(all.values().begin(), all.values().end()), tolerance);
}

std::vector<FieldD> em_wave_form(const EMField& F) {
    const auto& A = F.A;
    const auto box = shrink_top(A.window(), 2);
    std::vector<FieldD> out;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto ak = A.component(k);
        FieldD w = sigma_except(partial_delta(partial_delta(ak, 0), 0), 0);
        for (std::size_t i = 1; i <= 3; ++i) w = w - sigma_except(partial_delta(partial_delta(ak, i), i), i);
        out.push_back((k == 0 ? 1.0 : -1.0) * w.restrict(box));
    }
    return out;
}

EMField lorentz_gauge_field(const GridPtr& grid, const IndexBox& box, std::uint64_t seed) {
    const auto a = random_field(grid, box, 4, 2, seed, 0, 1.0);
    FieldD div = partial_delta(a.component(1), 1);
    for (std::size_t i = 2; i <= 3; ++i) div = div + partial_delta(a.component(i), i);
    // div lives on box minus the top index of axes 1..3; integrate it along axis 0
    auto out_box = box;
    for (std::size_t i = 1; i <= 3; ++i) out_box.hi[i] -= 1;
    const auto& t0 = grid->axis(0);
    std::vector<double> a0(out_box.count(), 0.0);
    const auto ext0 = out_box.hi[0] - out_box.lo[0] + 1;
    const auto slab = out_box.count() / ext0;
    std::size_t pos = 0;
    for_each(out_box, [&](std::span<const std::size_t> idx) {
        if (idx[0] > out_box.lo[0]) {
            std::vector<std::size_t> prev(idx.begin(), idx.end());
            prev[0] -= 1;
            a0[pos] = a0[pos - slab] + t0.mu(prev[0]) * div.at(prev, 0);
        }
        ++pos;
    });
    std::vector<FieldD> parts{FieldD(grid, out_box, 1, std::move(a0))};
    for (std::size_t i = 1; i <= 3; ++i) parts.push_back(a.component(i).restrict(out_box));
    return EMField(stack(parts));
}

double em_wave_form_gap(const EMField& F) {
    const auto e = el_expressions_d(em_lagrangian(), F.A);
    const auto w = em_wave_form(F);
    double gap = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto diff = e.component(k) - w[k];
        for (double x : diff.values()) gap = std::max(gap, std::abs(x));
    }
    return gap;
}

}  // namespace noether
