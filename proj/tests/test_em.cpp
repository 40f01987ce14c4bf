#include <cmath>

#include "doctest.h"
#include "noether/em.hpp"
#include "noether/multi_noether.hpp"

using namespace noether;

namespace {

GridPtr lattice(std::size_t points, bool q_axis = false) {
    std::vector<ScalePtr> axes;
    for (std::size_t a = 0; a < 4; ++a) {
        if (q_axis && a == 1) {
            axes.push_back(make_scale(TimeScale::q_geometric(2.0, 1.0, points)));
        } else {
            axes.push_back(make_scale(TimeScale::h_uniform(1.0, 0.0, static_cast<double>(points - 1))));
        }
    }
    return make_grid(axes);
}

double sup(const FieldD& f) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("density examples") {
    auto g = lattice(4);
    auto box = g->full_box();
    CHECK(sup(em_density(EMField(FieldD::zeros(g, box, 4)))) == 0.0);
    EMField f(FieldD::sample(g, box, 4, [](std::span<const double> x, std::span<double> out) {
        out[0] = x[1];
        out[1] = out[2] = out[3] = 0.0;
    }));
    auto dens = em_density(f);
    for (double v : dens.values()) CHECK(v == 0.5);
}

TEST_CASE("density matches the generic field Lagrangian") {
    auto g = lattice(4, true);
    EMField f(random_field(g, g->full_box(), 4, 2, 3, 0, 1.0));
    auto a = em_density(f);
    auto b = lagrangian_density(em_lagrangian(), f.A);
    REQUIRE(a.values().size() == b.values().size());
    for (std::size_t i = 0; i < a.values().size(); ++i) CHECK(std::abs(a.values()[i] - b.values()[i]) < 1e-13);
}

TEST_CASE("gauge transformations leave the functional unchanged") {
    auto g = lattice(5);
    IndexBox inner{{1, 1, 1, 1}, {4, 4, 4, 4}};
    EMField f(random_field(g, inner, 4, 2, 1, 0, 1.0));
    const double base = em_functional(f);
    auto cst = FieldD::sample(g, g->full_box(), 1, [](auto, auto out) { out[0] = 2.0; });
    auto same = em_gauge(f, cst);
    for (std::size_t i = 0; i < f.A.values().size(); ++i) CHECK(same.A.values()[i] == f.A.values()[i]);
    auto zero = em_gauge(f, FieldD::zeros(g, g->full_box(), 1));
    for (std::size_t i = 0; i < f.A.values().size(); ++i) CHECK(zero.A.values()[i] == f.A.values()[i]);

    for (std::uint64_t t = 0; t < 5; ++t) {
        auto p = random_field(g, g->full_box(), 1, 3, 2, t, 1.0);
        const double moved = em_functional(em_gauge(f, p));
        CHECK(std::abs(moved - base) / std::max(1.0, std::abs(base)) <= 1e-12);
    }
    CHECK(check_invariance_d(em_lagrangian(), em_gauge_family(g), f.A, 5, 4).pass);

    // a non-gauge move of A_1 alone changes the action
    auto kick = FieldD::sample(g, inner, 4, [](std::span<const double> x, std::span<double> out) {
        out[0] = out[2] = out[3] = 0.0;
        out[1] = 0.2 * x[0] * x[2];
    });
    CHECK(std::abs(em_functional(EMField(f.A + kick)) - base) / std::max(1.0, std::abs(base)) > 1e-3);
}

TEST_CASE("divergence of the EL expressions vanishes") {
    for (bool q : {false, true}) {
        auto g = lattice(6, q);
        EMField zero(FieldD::zeros(g, g->full_box(), 4));
        CHECK(em_noether_residual(zero).sup_norm == 0.0);
        EMField f(random_field(g, g->full_box(), 4, 2, 5, 0, 1.0));
        auto r = em_noether_residual(f);
        CHECK(r.pass);
        CHECK(r.domain.hi[0] == 2);
    }
}

TEST_CASE("Lorentz-conditioned fields reduce to the wave form") {
    auto g = lattice(6);
    auto f = lorentz_gauge_field(g, g->full_box(), 3);
    CHECK(em_lorentz_check(f).pass);
    CHECK(em_wave_form_gap(f) <= 1e-9);

    EMField generic(random_field(g, g->full_box(), 4, 2, 9, 0, 1.0));
    CHECK_FALSE(em_lorentz_check(generic).pass);

    EMField zero(FieldD::zeros(g, g->full_box(), 4));
    CHECK(em_lorentz_check(zero).sup_norm == 0.0);
    CHECK(em_wave_form_gap(zero) == 0.0);
}

TEST_CASE("EM divergence matches the generic multi-dimensional identity") {
    auto g = lattice(5, true);
    auto F = lorentz_gauge_field(g, g->full_box(), 3);
    auto div = em_divergence(F);
    auto generic = noether_identity_values_d(em_lagrangian(), em_gauge_family(g), F.A);
    REQUIRE(div.values().size() == generic.values().size());
    for (std::size_t i = 0; i < div.values().size(); ++i) {
        CHECK(std::abs(std::abs(div.values()[i]) - std::abs(generic.values()[i])) <= 1e-13);
    }
}
