#include <array>
#include <cmath>

#include "doctest.h"
#include "noether/error.hpp"
#include "noether/field_lagrangian.hpp"
#include "noether/multi_noether.hpp"
#include "noether/multigrid.hpp"
#include "oracles.hpp"

using namespace noether;

namespace {

GridPtr z2(double x1, double y1) {
    return make_grid({make_scale(TimeScale::h_uniform(1.0, 0.0, x1)), make_scale(TimeScale::h_uniform(1.0, 0.0, y1))});
}

GridPtr mixed_grid() {
    return make_grid({make_scale(TimeScale::h_uniform(1.0, 0.0, 6.0)), make_scale(TimeScale::q_geometric(2.0, 0.25, 7))});
}

FieldD scalar(const GridPtr& g, const IndexBox& box, double (*fn)(double, double)) {
    return FieldD::sample(g, box, 1, [fn](std::span<const double> x, std::span<double> out) { out[0] = fn(x[0], x[1]); });
}

double sup(const FieldD& f) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

std::size_t idx2(const FieldD& f, std::size_t x, std::size_t y) {
    return (x - f.window().lo[0]) * (f.window().hi[1] - f.window().lo[1] + 1) + (y - f.window().lo[1]);
}

}  // namespace

TEST_CASE("partial derivative and integral examples") {
    auto g = z2(3, 2);
    auto box = g->full_box();
    auto x = scalar(g, box, [](double a, double) { return a; });
    auto dx = partial_delta(x, 0);
    CHECK(dx.window().hi[0] == 2);
    for (double v : dx.values()) CHECK(v == 1.0);
    auto dc = partial_delta(FieldD::sample(g, box, 1, [](auto, auto out) { out[0] = 4.0; }), 1);
    for (double v : dc.values()) CHECK(v == 0.0);

    CHECK(multi_integral(FieldD::sample(g, box, 1, [](auto, auto out) { out[0] = 1.0; }))[0] == 6.0);
    CHECK(multi_integral(x)[0] == 6.0);
    IndexBox empty{{1, 1}, {1, 1}};
    CHECK(multi_integral(x, empty)[0] == 0.0);
}

TEST_CASE("shift and sigma_except move windows per axis") {
    auto g = z2(4, 4);
    auto f = scalar(g, IndexBox{{1, 1}, {4, 4}}, [](double a, double b) { return 10 * a + b; });
    auto s = shift(f, 0, 1);
    CHECK(s.window().lo[0] == 0);
    CHECK(s.window().hi[0] == 3);
    CHECK(s.at(std::array<std::size_t, 2>{2, 2}, 0) == 32.0);
    auto se = sigma_except(f, 1);
    CHECK(se.window().lo[1] == 1);
    CHECK(se.at(std::array<std::size_t, 2>{1, 2}, 0) == 22.0);
}

TEST_CASE("Green's theorem with oriented delta fences") {
    auto g = z2(5, 4);
    auto box = g->full_box();
    auto zero = FieldD::zeros(g, box, 1);
    CHECK(greens_residual(zero, zero) == 0.0);
    auto x = scalar(g, box, [](double a, double) { return a; });
    auto res = greens_theorem(zero, x);
    CHECK(res.area_integral == 20.0);
    CHECK(res.residual <= 1e-12);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto mg = mixed_grid();
        auto M = random_field(mg, mg->full_box(), 1, 3, seed, 0, 1.0);
        auto N = random_field(mg, mg->full_box(), 1, 3, seed, 1, 1.0);
        CHECK(greens_residual(M, N) <= 1e-12);
    }
}

TEST_CASE("the literal star-nabla fence misses on rectangles") {
    auto g = z2(4, 3);
    auto box = g->full_box();
    auto x = scalar(g, box, [](double a, double) { return a; });
    auto r = greens_theorem(x, FieldD::zeros(g, box, 1), FenceRule::StarNabla);
    CHECK(r.area_integral == 0.0);
    CHECK(r.fence_integral == doctest::Approx(-4.0));
}

TEST_CASE("field EL expression examples") {
    auto g = z2(6, 6);
    auto box = g->full_box();
    auto L = catalog::field_dirichlet(2);
    CHECK(sup(el_expressions_d(L, scalar(g, box, [](double a, double) { return a; }))) < 1e-12);
    auto e = el_expressions_d(L, scalar(g, box, [](double a, double) { return a * a; }));
    CHECK(e.window().hi[0] == 4);
    for (double v : e.values()) CHECK(v == doctest::Approx(-2.0).epsilon(1e-12));

    FieldLagrangian c;
    c.d = 2;
    c.n = 1;
    c.value = [](auto, auto, auto) { return 1.5; };
    CHECK(sup(el_expressions_d(c, random_field(g, box, 1, 3, 1, 0, 1.0))) < 1e-9);
}

TEST_CASE("gauge operator and adjoint: multiplication is self-adjoint") {
    auto g = z2(4, 4);
    GaugeFamilyD fam(g, 1);
    fam.set_constant(0, 0, 1.0);
    auto q = random_field(g, g->full_box(), 1, 3, 2, 0, 1.0);
    auto a = adjoint_T_d(fam, q, 0);
    for (std::size_t x = 0; x <= 3; ++x) {
        for (std::size_t y = 0; y <= 3; ++y) {
            const std::array<std::size_t, 2> i{x, y};
            CHECK(a.at(i, 0) == q.at(i, 0));
        }
    }
}

TEST_CASE("T_sigma agrees with a hand-written stencil on Z^2") {
    auto g = z2(5, 5);
    GaugeFamilyD fam(g, 1);
    fam.set_coeff(0, 0, random_field(g, g->full_box(), 1, 2, 1, 0, 1.0));
    fam.set_coeff(0, 1, random_field(g, g->full_box(), 1, 2, 1, 1, 1.0));
    fam.set_coeff(0, 2, random_field(g, g->full_box(), 1, 2, 1, 2, 1.0));
    auto p = random_field(g, g->full_box(), 1, 3, 1, 3, 1.0);
    auto ts = apply_T_sigma_d(fam, p, 0);
    auto P = [&](std::size_t x, std::size_t y) { return p.values()[idx2(p, x, y)]; };
    auto A = [&](std::size_t c, std::size_t x, std::size_t y) { return fam.coeff(0, c).values()[x * 6 + y]; };
    for (std::size_t x = 0; x <= 4; ++x) {
        for (std::size_t y = 0; y <= 4; ++y) {
            const double ref = A(0, x, y) * P(x + 1, y + 1) + A(1, x, y) * (P(x + 1, y + 1) - P(x, y + 1)) +
                               A(2, x, y) * (P(x + 1, y + 1) - P(x + 1, y));
            CHECK(std::abs(ts.values()[idx2(ts, x, y)] - ref) < 1e-14);
        }
    }
}

TEST_CASE("adjointness with fence-vanishing p") {
    for (auto g : {z2(4, 4), mixed_grid()}) {
        const auto box = g->full_box();
        GaugeFamilyD fam(g, 1);
        for (std::size_t c = 0; c <= 2; ++c) fam.set_coeff(0, c, random_field(g, box, 1, 2, 7, c, 1.0));
        for (std::uint64_t trial = 0; trial < 5; ++trial) {
            auto raw = random_field(g, box, 1, 3, 8, trial, 1.0);
            std::vector<double> pv(raw.values().begin(), raw.values().end());
            for (std::size_t x = box.lo[0]; x <= box.hi[0]; ++x) {
                for (std::size_t y = box.lo[1]; y <= box.hi[1]; ++y) {
                    if (x == box.lo[0] || x == box.hi[0] || y == box.lo[1] || y == box.hi[1]) pv[idx2(raw, x, y)] = 0.0;
                }
            }
            FieldD p(g, box, 1, pv);
            auto q = random_field(g, box, 1, 3, 9, trial, 1.0);
            const double lhs = multi_integral(multiply(q, apply_T_sigma_d(fam, p, 0)), box)[0];
            const double rhs = multi_integral(multiply(adjoint_T_d(fam, q, 0), sigma_except(p, 2)), box)[0];
            CHECK(std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}) <= 1e-12);
        }
    }
}

TEST_CASE("multi-dimensional identity and invariance") {
    std::mt19937_64 rng(12);
    for (auto g : {z2(6, 6), mixed_grid()}) {
        auto box = g->full_box();
        auto u = oracle::raw_cubic_field(g, box, 2, rng);
        auto grad = families::gradient_gauge(g);
        CHECK(noether_identity_d(catalog::maxwell(2), grad, u).pass);
        CHECK(noether_identity_d(catalog::field_pair_difference(2), families::common_shift(g), u).pass);

        auto broken = families::gradient_gauge(g);
        broken.set_constant(0, 1, 1.1);
        CHECK(noether_identity_d(catalog::maxwell(2), broken, u).sup_norm > 1e-3);

        IndexBox inner{{1, 1}, {box.hi[0], box.hi[1]}};
        auto ui = u.restrict(inner);
        CHECK(check_invariance_d(catalog::maxwell(2), grad, ui, 10, 5).sup_norm <= 1e-12);
        auto kick = FieldD::sample(g, rho_extended(inner), 1, [](std::span<const double> x, std::span<double> out) {
            out[0] = 0.1 * x[0] * x[1];
        });
        CHECK(invariance_deviation_d(catalog::maxwell(2), grad, ui, kick) <= 1e-12);
        CHECK(invariance_deviation_d(catalog::maxwell(2), families::common_shift(g), ui, kick) > 1e-3);
    }
    auto g3 = make_grid({make_scale(TimeScale::h_uniform(1.0, 0.0, 5.0)), make_scale(TimeScale::h_uniform(0.5, 0.0, 2.5)),
                         make_scale(TimeScale::q_geometric(1.5, 1.0, 6))});
    auto u3 = random_field(g3, g3->full_box(), 3, 2, 6, 0, 1.0);
    CHECK(noether_identity_d(catalog::maxwell(3), families::gradient_gauge(g3), u3).sup_norm <= 1e-9);
}

TEST_CASE("zero family gives zero identity residual") {
    auto g = z2(5, 5);
    auto u = random_field(g, g->full_box(), 2, 3, 4, 0, 1.0);
    CHECK(noether_identity_d(catalog::maxwell(2), GaugeFamilyD(g, 2), u).sup_norm == 0.0);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(make_grid({make_scale(TimeScale::h_uniform(1.0, 0.0, 3.0))}), DomainError);
    auto g = z2(3, 3);
    CHECK_THROWS(FieldD(g, IndexBox{{0, 0}, {4, 3}}, 1, std::vector<double>(20, 0.0)));
}

TEST_CASE("mixed partial derivatives commute") {
    for (auto g : {z2(5, 5), mixed_grid()}) {
        auto f = random_field(g, g->full_box(), 2, 3, 3, 0, 1.0);
        auto xy = partial_delta(partial_delta(f, 0), 1);
        auto yx = partial_delta(partial_delta(f, 1), 0);
        REQUIRE(xy.window().hi == yx.window().hi);
        for (std::size_t i = 0; i < xy.values().size(); ++i) {
            CHECK(oracle::rel_gap(xy.values()[i], yx.values()[i]) <= 1e-12);
        }
    }
}
