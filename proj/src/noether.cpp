#include "noether/noether.hpp"

#include <cmath>
#include <optional>

#include "noether/error.hpp"
#include "noether/parallel.hpp"
#include "noether/variational.hpp"

namespace noether {

double invariance_deviation(const Lagrangian& L, const GaugeFamily& fam, const std::vector<GridFunction>& params,
                            const GridFunction& y) {
    const double base = eval_functional(L, y);
    const auto tr = transform(fam, params, y);
    const double moved = eval_functional(L, tr.ybar);
    return std::abs(base - moved) / std::max(1.0, std::abs(base));
}

ResidualReport check_invariance(const Lagrangian& L, const GaugeFamily& fam, const GridFunction& y,
                                std::size_t trials, std::uint64_t seed, double tolerance) {
    if (trials == 0) throw DomainError("check_invariance needs at least one trial");
    std::vector<double> dev(trials);
    parallel_for(trials, [&](std::size_t t) {
        const auto p = random_params(fam.scale_ptr(), fam.m(), fam.r(), y.lo(), y.hi(), seed, t);
        dev[t] = invariance_deviation(L, fam, p, y);
    });
    return make_report(fam.has_time() ? "invariance_time" : "invariance", box1(0, trials - 1), 1, std::move(dev),
                       tolerance);
}

double necessary_condition_residual(const Lagrangian& L, const GaugeFamily& fam, const GridFunction& y,
                                    const std::vector<GridFunction>& params) {
    const auto eta = total_variation_field(fam, params, y.lo(), y.hi());
    return first_variation_unchecked(L, y, eta);
}

double identity_coefficient(std::size_t i, double b1) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(1.0 / b1, static_cast<double>(i * (i + 1) / 2));
}

namespace {

double require_b1(const GaugeFamily& fam, const GridFunction& y) {
    const auto& h = y.scale().condition_h();
    if (!h) throw DomainError("Noether identities need a scale satisfying sigma(t) = b1 t + b0");
    if (!same_scale(y.scale(), fam.scale())) throw DomainError("family and y live on different scales");
    if (y.n() != fam.n()) throw DomainError("family and y have different component counts");
    if (y.count() < fam.m() + 3) {
        throw WindowError("identity of order m=" + std::to_string(fam.m()) + " needs at least " +
                          std::to_string(fam.m() + 3) + " points");
    }
    return h->b1;
}

// sum_i c_i ((coeff_i)^sigma * e)^{Delta^i} restricted to [lo, hi]
GridFunction weighted_chain(const std::vector<const GridFunction*>& coeffs, const GridFunction& e, double b1,
                            std::size_t lo, std::size_t hi) {
    auto acc = GridFunction::zeros(e.scale_ptr(), lo, hi, 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto inner = multiply(shift(*coeffs[i], 1), e);
        acc = acc + (identity_coefficient(i, b1) * delta_derivative(inner, i)).restrict(lo, hi);
    }
    return acc;
}

std::vector<GridFunction> identity_values(const Lagrangian& L, const GaugeFamily& fam, const GridFunction& y,
                                          bool with_time) {
    const double b1 = require_b1(fam, y);
    const auto m = fam.m();
    const auto e = el_expressions(L, y);
    const auto lo = y.lo();
    const auto hi = y.hi() - 2 - m;
    std::optional<GridFunction> es;
    if (with_time) es = second_el_expression(L, y);

    std::vector<GridFunction> out;
    for (std::size_t j = 0; j < fam.r(); ++j) {
        auto acc = GridFunction::zeros(y.scale_ptr(), lo, hi, 1);
        for (std::size_t k = 0; k < fam.n(); ++k) {
            std::vector<const GridFunction*> c;
            for (std::size_t i = 0; i <= m; ++i) c.push_back(&fam.g(k, i, j));
            acc = acc + weighted_chain(c, e.component(k), b1, lo, hi);
        }
        if (with_time) {
            std::vector<const GridFunction*> c;
            for (std::size_t i = 0; i <= m; ++i) c.push_back(&fam.f(i, j));
            acc = acc + weighted_chain(c, *es, b1, lo, hi);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<ResidualReport> to_reports(const std::vector<GridFunction>& values, const char* label,
                                       double tolerance) {
    std::vector<ResidualReport> out;
    for (std::size_t j = 0; j < values.size(); ++j) {
        const auto& v = values[j];
        out.push_back(make_report(std::string(label) + "_j" + std::to_string(j + 1), box1(v.lo(), v.hi()), 1,
                                  std::vector<double>(v.values().begin(), v.values().end()), tolerance));
    }
    return out;
}

}  // namespace

std::vector<ResidualReport> noether_identity(const Lagrangian& L, const GaugeFamily& fam, const GridFunction& y,
                                             double tolerance) {
    return to_reports(identity_values(L, fam, y, false), "noether_identity", tolerance);
}

std::vector<ResidualReport> noether_identity_time(const Lagrangian& L, const GaugeFamily& fam, const GridFunction& y,
                                                  double tolerance) {
    if (!fam.has_time()) throw DomainError("time-transformed identity needs f coefficients");
    return to_reports(identity_values(L, fam, y, true), "noether_identity_time", tolerance);
}

}  // namespace noether
