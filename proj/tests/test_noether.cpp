#include <cmath>
#include <random>

#include "doctest.h"
#include "noether/catalog.hpp"
#include "noether/error.hpp"
#include "noether/family_io.hpp"
#include "noether/fundamental_lemma.hpp"
#include "noether/gauge.hpp"
#include "noether/noether.hpp"
#include "noether/variational.hpp"
#include "oracles.hpp"

using namespace noether;

namespace {

GaugeFamily pair_family(const ScalePtr& s, double g2) {
    GaugeFamily fam(s, 2, 0, 1);
    const auto N = s->size();
    fam.set_g(0, 0, 0, GridFunction::constant(s, 0, N - 1, {1.0}));
    fam.set_g(1, 0, 0, GridFunction::constant(s, 0, N - 1, {g2}));
    return fam;
}

GaugeFamily from_file(const char* name, const ScalePtr& s) {
    return load_family(std::string(NOETHER_DATA_DIR) + "/families/" + name, s);
}

double worst(const std::vector<ResidualReport>& rs) {
    double m = 0.0;
    for (const auto& r : rs) m = std::max(m, r.sup_norm);
    return m;
}

}  // namespace

TEST_CASE("gauge operator examples") {
    auto s = make_scale(TimeScale::h_uniform(1.0, 0.0, 8.0));
    auto p = GridFunction::scalar(s, 0, 8, [](double t) { return t * t * t - t; });
    auto one = GridFunction::constant(s, 0, 8, {1.0});
    auto zero = GridFunction::zeros(s, 0, 8, 1);

    auto t0 = apply_operator({&one}, 0, p, 2, 6);
    for (std::size_t i = 2; i <= 6; ++i) CHECK(t0.at(i, 0) == p.at(i - 1, 0));

    auto t1 = apply_operator({&zero, &one}, 1, p, 2, 6);
    for (std::size_t i = 2; i <= 6; ++i) CHECK(t1.at(i, 0) == p.at(i, 0) - p.at(i - 1, 0));

    auto tz = apply_operator({&one}, 0, GridFunction::zeros(s, 0, 8, 1), 2, 6);
    for (double x : tz.values()) CHECK(x == 0.0);

    CHECK(params_window(0, 3, 6) == std::pair<std::size_t, std::size_t>{2, 5});
    CHECK(params_window(2, 3, 6) == std::pair<std::size_t, std::size_t>{2, 7});
}

TEST_CASE("zero parameters leave the problem unchanged") {
    auto s = make_scale(TimeScale::q_geometric(1.5, 1.0, 10));
    auto fam = from_file("arclength_time.toml", s);
    auto y = random_path(s, 1, 7, 2, 3, 4);
    auto [lo, hi] = params_window(fam.m(), 1, 7);
    std::vector<GridFunction> p{GridFunction::zeros(s, lo, hi, 1)};
    auto tr = transform(fam, p, y);
    for (std::size_t i = 0; i < tr.alpha.size(); ++i) CHECK(tr.alpha[i] == (*s)[1 + i]);
    for (std::size_t i = 0; i < y.values().size(); ++i) CHECK(tr.ybar.values()[i] == y.values()[i]);
    CHECK(invariance_deviation(catalog::arc_length(), fam, p, y) == 0.0);
    CHECK(necessary_condition_residual(catalog::pair_difference(), pair_family(s, 1.0), y, p) == 0.0);
}

TEST_CASE("pair-difference invariance and its negative controls") {
    for (auto ts : {TimeScale::h_uniform(1.0, 0.0, 10.0), TimeScale::q_geometric(2.0, 0.125, 7)}) {
        auto s = make_scale(ts);
        auto y = random_path(s, 1, s->size() - 1, 2, 3, 0);
        auto L = catalog::pair_difference();
        auto good = check_invariance(L, pair_family(s, 1.0), y, 20, 1);
        CHECK(good.pass);
        CHECK(good.sup_norm <= 1e-12);
        CHECK(check_invariance(L, pair_family(s, 0.0), y, 20, 1).sup_norm > 1e-3);
        CHECK(check_invariance(L, pair_family(s, 1.1), y, 20, 1).sup_norm > 1e-3);

        auto [lo, hi] = params_window(0, 1, s->size() - 1);
        auto p = random_params(s, 0, 1, 1, s->size() - 1, 0, 3);
        CHECK(std::abs(necessary_condition_residual(L, pair_family(s, 1.0), y, p)) <= 1e-12);
        CHECK(std::abs(necessary_condition_residual(L, pair_family(s, 0.0), y, p)) > 1e-4);
        CHECK(p[0].lo() == lo);
        CHECK(p[0].hi() == hi);
    }
}

TEST_CASE("identity holds for invariant families and fails for the broken one") {
    for (auto ts : {TimeScale::h_uniform(0.5, 0.0, 5.0), TimeScale::q_geometric(2.0, 0.125, 9),
                    TimeScale::q_geometric(1.5, 1.0, 10)}) {
        auto s = make_scale(ts);
        auto y = random_path(s, 1, s->size() - 1, 2, 4, 8);
        CHECK(worst(noether_identity(catalog::pair_difference(), pair_family(s, 1.0), y)) <= 1e-9);
        CHECK(worst(noether_identity(catalog::pair_difference(), pair_family(s, 1.1), y)) > 1e-3);
        auto gp = from_file("gauge_pair.toml", s);
        CHECK(worst(noether_identity(catalog::gauge_pair(), gp, y)) <= 1e-9);
        CHECK(check_invariance(catalog::gauge_pair(), gp, y.restrict(1, s->size() - 2), 10, 2).pass);
        CHECK_THROWS_AS(check_invariance(catalog::gauge_pair(), gp, y, 10, 2), WindowError);
    }
}

TEST_CASE("generic identity agrees with the corollary formula") {
    std::mt19937_64 rng(21);
    for (auto ts : {TimeScale::h_uniform(0.5, 0.0, 6.0), TimeScale::q_geometric(1.5, 1.0, 12)}) {
        auto s = make_scale(ts);
        auto jump = oracle::jump_of(*s);
        const std::size_t m = 2;
        const auto N = s->size();
        auto L = oracle::random_quadratic(2, rng, false);
        GaugeFamily fam(s, 2, m, 1);
        std::vector<std::vector<oracle::Fn>> g(2);
        for (std::size_t k = 0; k < 2; ++k) {
            for (std::size_t i = 0; i <= m; ++i) {
                auto c = oracle::poly(oracle::random_coeffs(rng, 3, 0.5));
                g[k].push_back(c);
                fam.set_g(k, i, 0, GridFunction::scalar(s, 0, N - 1, c));
            }
        }
        std::vector<oracle::Fn> yl{oracle::poly(oracle::random_coeffs(rng, 4)), oracle::poly(oracle::random_coeffs(rng, 4))};
        auto y = GridFunction::sample(s, 0, N - 1, 2, [&](double t, std::span<double> out) {
            out[0] = yl[0](t);
            out[1] = yl[1](t);
        });
        auto rep = noether_identity(L, fam, y, 1.0);
        REQUIRE(rep.size() == 1);
        auto e = oracle::el_lambdas(L, yl, jump);
        const auto& r = rep[0];
        CHECK(r.domain.lo[0] == 0);
        CHECK(r.domain.hi[0] == N - 1 - 2 - m);
        for (std::size_t idx = r.domain.lo[0]; idx <= r.domain.hi[0]; ++idx) {
            const double ref = oracle::corollary_identity(g, e, jump, (*s)[idx]);
            CHECK(oracle::rel_gap(r.per_point[idx - r.domain.lo[0]], ref) <= 1e-12);
        }
    }
}

TEST_CASE("time-transformed identity") {
    auto s = make_scale(TimeScale::h_uniform(0.5, 0.0, 6.0));
    auto y = random_path(s, 1, s->size() - 1, 2, 3, 5);
    auto fam = pair_family(s, 1.1);
    auto plain = noether_identity(catalog::pair_difference(), fam, y);
    fam.enable_time();
    auto timed = noether_identity_time(catalog::pair_difference(), fam, y);
    REQUIRE(plain.size() == timed.size());
    for (std::size_t j = 0; j < plain.size(); ++j) {
        REQUIRE(plain[j].per_point.size() == timed[j].per_point.size());
        for (std::size_t i = 0; i < plain[j].per_point.size(); ++i) CHECK(plain[j].per_point[i] == timed[j].per_point[i]);
    }

    for (auto ts : {TimeScale::h_uniform(0.5, 0.0, 6.0), TimeScale::q_geometric(1.5, 1.0, 10)}) {
        auto sc = make_scale(ts);
        auto arc = from_file("arclength_time.toml", sc);
        auto path = GridFunction::sample(sc, 1, sc->size() - 1, 2, [](double t, std::span<double> out) {
            out[0] = 1.0 + t + 0.1 * t * t;
            out[1] = std::cos(0.3 * t);
        });
        CHECK(worst(noether_identity_time(catalog::arc_length(), arc, path)) <= 1e-9);
        CHECK(check_invariance(catalog::arc_length(), arc, path.restrict(1, sc->size() - 2), 10, 3).pass);
        CHECK_THROWS_AS(noether_identity_time(catalog::arc_length(), pair_family(sc, 1.0), path), DomainError);
    }
}

TEST_CASE("identities need condition (H)") {
    auto s = make_scale(TimeScale::from_points({0, 1, 3, 4, 7, 8}));
    auto y = random_path(s, 0, 5, 2, 2, 1);
    CHECK_THROWS_AS(noether_identity(catalog::pair_difference(), pair_family(s, 1.0), y), DomainError);
}

TEST_CASE("fundamental lemma: vanishing instances pass, perturbed instances fail") {
    for (auto ts : {TimeScale::h_uniform(1.0, 0.0, 9.0), TimeScale::h_uniform(0.5, 1.0, 6.0),
                    TimeScale::q_geometric(2.0, 1.0, 11)}) {
        auto s = make_scale(ts);
        for (std::size_t m = 0; m <= 2; ++m) {
            CAPTURE(m);
            auto f = vanishing_instance(s, m, 10 + m);
            auto ok = fundamental_lemma_oracle(f);
            CHECK(ok.pass);
            CHECK(ok.consistent);
            auto bad = fundamental_lemma_oracle(perturb_instance(f, ok.window_hi));
            CHECK_FALSE(bad.pass);
            CHECK_FALSE(bad.integrals_vanish);
            CHECK_FALSE(bad.expression_vanishes);
            CHECK(bad.consistent);
        }
    }
}

TEST_CASE("fundamental lemma conclusion does not extend past the doubly shrunk window") {
    auto s = make_scale(TimeScale::h_uniform(1.0, 0.0, 9.0));
    const std::size_t m = 2;
    std::vector<GridFunction> f;
    for (std::size_t i = 0; i <= m; ++i) f.push_back(GridFunction::zeros(s, 0, 9, 1));
    // a nonzero f_0 at b - m is invisible to every admissible eta
    f = perturb_instance(f, 9 - m);
    double most = 0.0;
    for (std::size_t k = m; k <= 9 - m; ++k) most = std::max(most, std::abs(fundamental_integral(f, unit_impulse(s, 0, 9, k))));
    CHECK(most == 0.0);
    CHECK(fundamental_lemma_oracle(f).pass);
}

TEST_CASE("family files parse and reject malformed entries") {
    auto s = make_scale(TimeScale::q_geometric(2.0, 1.0, 6));
    auto gp = from_file("gauge_pair.toml", s);
    CHECK(gp.m() == 1);
    CHECK(gp.g(1, 1, 0).at(3, 0) == 2.0);
    CHECK(gp.g(0, 1, 0).at(3, 0) == 0.0);
    auto poly = parse_family("r = 1\nm = 0\nn = 1\n[[g]]\nk = 1\ni = 0\nj = 1\npoly = [1.0, 2.0]\n", s);
    CHECK(poly.g(0, 0, 0).at(2, 0) == 9.0);
    CHECK_THROWS_AS(parse_family("r = 1\nm = 0\nn = 1\n[[g]]\nk = 1\ni = 0\nj = 1\n", s), ParseError);
    CHECK_THROWS_AS(parse_family("r = 1\nm = 0\nn = 1\n[[g]]\nk = 1\ni = 0\nj = 1\nvalue = \"b2\"\n", s), ParseError);
    CHECK_THROWS_AS(parse_family("r = 1\nm = 0\n", s), ParseError);
    CHECK_THROWS_AS(parse_family("r = [", s), ParseError);
    CHECK_THROWS(parse_family("r = 1\nm = 0\nn = 1\n[[g]]\nk = 2\ni = 0\nj = 1\nvalue = 1\n", s));
}

TEST_CASE("gauge operators are linear in p") {
    auto s = make_scale(TimeScale::q_geometric(2.0, 0.125, 9));
    auto c0 = random_polynomial(s, 0, 8, 2, 1, 1.0);
    auto c1 = random_polynomial(s, 0, 8, 2, 2, 1.0);
    auto c2 = random_polynomial(s, 0, 8, 2, 3, 1.0);
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        auto p = random_polynomial(s, 0, 8, 4, 10 + trial, 1.0);
        auto q = random_polynomial(s, 0, 8, 4, 20 + trial, 1.0);
        const double a = 1.5, b = -0.25;
        auto both = apply_operator({&c0, &c1, &c2}, 2, a * p + b * q, 1, 6);
        auto tp = apply_operator({&c0, &c1, &c2}, 2, p, 1, 6);
        auto tq = apply_operator({&c0, &c1, &c2}, 2, q, 1, 6);
        for (std::size_t i = 1; i <= 6; ++i) {
            CHECK(oracle::rel_gap(both.at(i, 0), a * tp.at(i, 0) + b * tq.at(i, 0)) <= 1e-12);
        }
    }
}

TEST_CASE("vanishing delta derivatives at a force vanishing forward shifts") {
    auto s = make_scale(TimeScale::q_geometric(1.5, 1.0, 10));
    for (std::size_t m = 1; m <= 3; ++m) {
        // eta vanishes on t_a .. t_{a+m-1}
        const std::size_t a = 2;
        auto eta = GridFunction::scalar(s, 0, 9, [&](double t) {
            double acc = 1.0 + t;
            for (std::size_t j = 0; j < m; ++j) acc *= t - (*s)[a + j];
            return acc;
        });
        for (std::size_t i = 0; i < m; ++i) {
            auto d = delta_derivative(eta, i);
            CHECK(std::abs(d.at(a, 0)) <= 1e-12);
            CHECK(std::abs(eta.at(a + i, 0)) <= 1e-12);
        }
    }
}
