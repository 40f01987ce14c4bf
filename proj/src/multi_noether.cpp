#include "noether/multi_noether.hpp"

#include <cmath>

#include "noether/error.hpp"
#include "noether/parallel.hpp"

namespace noether {

GaugeFamilyD::GaugeFamilyD(GridPtr grid, std::size_t n) : grid_(std::move(grid)), n_(n) {
    if (!grid_) throw DomainError("gauge family needs a grid");
    if (n_ == 0) throw DomainError("gauge family needs n >= 1");
    a_.assign(n_ * (grid_->dims() + 1), FieldD::zeros(grid_, grid_->full_box(), 1));
}

const FieldD& GaugeFamilyD::coeff(std::size_t k, std::size_t c) const {
    if (k >= n_ || c > dims()) throw DomainError("gauge coefficient index out of range");
    return a_[k * (dims() + 1) + c];
}

void GaugeFamilyD::set_coeff(std::size_t k, std::size_t c, FieldD field) {
    if (k >= n_ || c > dims()) throw DomainError("gauge coefficient index out of range");
    if (field.n() != 1 || field.grid_ptr() != grid_) throw DomainError("gauge coefficients are scalar fields on the family grid");
    if (!box_contains(field.window(), grid_->full_box())) throw WindowError("gauge coefficients must cover the grid");
    a_[k * (dims() + 1) + c] = std::move(field);
}

void GaugeFamilyD::set_constant(std::size_t k, std::size_t c, double value) {
    set_coeff(k, c, FieldD::sample(grid_, grid_->full_box(), 1,
                                   [value](std::span<const double>, std::span<double> out) { out[0] = value; }));
}

namespace {

IndexBox lift(const IndexBox& b) {
    IndexBox r = b;
    for (std::size_t a = 0; a < b.dims(); ++a) r.lo[a] += 1;
    return r;
}

IndexBox drop_top(const IndexBox& b) {
    IndexBox r = b;
    for (std::size_t a = 0; a < b.dims(); ++a) {
        if (r.hi[a] == r.lo[a]) throw WindowError("window too small");
        r.hi[a] -= 1;
    }
    return r;
}

}  // namespace

IndexBox rho_extended(const IndexBox& box) {
    IndexBox r = box;
    for (std::size_t a = 0; a < box.dims(); ++a) {
        if (r.lo[a] == 0) throw WindowError("field window touches index 0; no room for rho");
        r.lo[a] -= 1;
    }
    return r;
}

FieldD apply_T_d(const GaugeFamilyD& fam, const FieldD& p, std::size_t k) {
    if (p.n() != 1) throw DomainError("gauge parameter is a scalar field");
    const auto box = lift(p.window());
    FieldD acc = multiply(fam.coeff(k, 0), p).restrict(box);
    for (std::size_t a = 0; a < fam.dims(); ++a) {
        const auto dp = shift(partial_delta(p, a), a, -1);
        acc = acc + multiply(fam.coeff(k, a + 1), dp).restrict(box);
    }
    return acc;
}

FieldD apply_T_sigma_d(const GaugeFamilyD& fam, const FieldD& p, std::size_t k) {
    if (p.n() != 1) throw DomainError("gauge parameter is a scalar field");
    const auto box = drop_top(p.window());
    const auto d = fam.dims();
    FieldD acc = multiply(fam.coeff(k, 0), sigma_except(p, d)).restrict(box);
    for (std::size_t a = 0; a < d; ++a) {
        acc = acc + multiply(fam.coeff(k, a + 1), sigma_except(partial_delta(p, a), a)).restrict(box);
    }
    return acc;
}

FieldD adjoint_T_d(const GaugeFamilyD& fam, const FieldD& q, std::size_t k) {
    if (q.n() != 1) throw DomainError("adjoint operator acts on scalar fields");
    const auto box = drop_top(q.window());
    FieldD acc = multiply(q, fam.coeff(k, 0)).restrict(box);
    for (std::size_t a = 0; a < fam.dims(); ++a) {
        acc = acc - partial_delta(multiply(q, fam.coeff(k, a + 1)), a).restrict(box);
    }
    return acc;
}

FieldD noether_identity_values_d(const FieldLagrangian& L, const GaugeFamilyD& fam, const FieldD& u) {
    if (fam.n() != L.n || fam.dims() != L.d) throw DomainError("family does not match the Lagrangian");
    const auto e = el_expressions_d(L, u);
    FieldD acc = adjoint_T_d(fam, e.component(0), 0);
    for (std::size_t k = 1; k < L.n; ++k) acc = acc + adjoint_T_d(fam, e.component(k), k);
    return acc;
}

ResidualReport noether_identity_d(const FieldLagrangian& L, const GaugeFamilyD& fam, const FieldD& u,
                                  double tolerance) {
    const auto v = noether_identity_values_d(L, fam, u);
    return make_report("noether_identity_d", v.window(), 1, std::vector<double>(v.values().begin(), v.values().end()),
                       tolerance);
}

double invariance_deviation_d(const FieldLagrangian& L, const GaugeFamilyD& fam, const FieldD& u, const FieldD& p) {
    std::vector<FieldD> parts;
    for (std::size_t k = 0; k < fam.n(); ++k) {
        parts.push_back(u.component(k) + apply_T_d(fam, p, k).restrict(u.window()));
    }
    const auto ubar = stack(parts);
    const double base = functional_d(L, u);
    const double moved = functional_d(L, ubar);
    return std::abs(base - moved) / std::max(1.0, std::abs(base));
}

ResidualReport check_invariance_d(const FieldLagrangian& L, const GaugeFamilyD& fam, const FieldD& u,
                                  std::size_t trials, std::uint64_t seed, double tolerance) {
    if (trials == 0) throw DomainError("check_invariance_d needs at least one trial");
    const auto pbox = rho_extended(u.window());
    std::vector<double> dev(trials);
    parallel_for(trials, [&](std::size_t t) {
        const auto p = random_field(u.grid_ptr(), pbox, 1, 3, seed, t);
        dev[t] = invariance_deviation_d(L, fam, u, p);
    });
    return make_report("invariance_d", box1(0, trials - 1), 1, std::move(dev), tolerance);
}

namespace families {

GaugeFamilyD gradient_gauge(const GridPtr& grid) {
    GaugeFamilyD fam(grid, grid->dims());
    for (std::size_t k = 0; k < grid->dims(); ++k) fam.set_constant(k, k + 1, 1.0);
    return fam;
}

GaugeFamilyD common_shift(const GridPtr& grid) {
    GaugeFamilyD fam(grid, 2);
    fam.set_constant(0, 0, 1.0);
    fam.set_constant(1, 0, 1.0);
    return fam;
}

}  // namespace families

}  // namespace noether
