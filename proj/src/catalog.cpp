#include "noether/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "noether/error.hpp"

namespace noether::catalog {

namespace {

using Span = std::span<const double>;
using Out = std::span<double>;

double zero_t(double, Span, Span) { return 0.0; }

}  // namespace

Lagrangian dirichlet(std::size_t n) {
    Lagrangian L;
    L.name = "dirichlet";
    L.n = n;
    L.value = [](double, Span, Span v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return 0.5 * s;
    };
    L.d_u = [](double, Span, Span, Out out) { std::fill(out.begin(), out.end(), 0.0); };
    L.d_v = [](double, Span, Span v, Out out) { std::copy(v.begin(), v.end(), out.begin()); };
    L.d_t = zero_t;
    return L;
}

Lagrangian poisson() {
    Lagrangian L;
    L.name = "poisson";
    L.n = 1;
    L.value = [](double, Span u, Span v) { return 0.5 * v[0] * v[0] + u[0]; };
    L.d_u = [](double, Span, Span, Out out) { out[0] = 1.0; };
    L.d_v = [](double, Span, Span v, Out out) { out[0] = v[0]; };
    L.d_t = zero_t;
    return L;
}

Lagrangian harmonic() {
    Lagrangian L;
    L.name = "harmonic";
    L.n = 1;
    L.value = [](double, Span u, Span v) { return 0.5 * v[0] * v[0] - 0.5 * u[0] * u[0]; };
    L.d_u = [](double, Span u, Span, Out out) { out[0] = -u[0]; };
    L.d_v = [](double, Span, Span v, Out out) { out[0] = v[0]; };
    L.d_t = zero_t;
    return L;
}

Lagrangian pair_difference() {
    Lagrangian L;
    L.name = "pair-difference";
    L.n = 2;
    L.value = [](double, Span, Span v) {
        const double w = v[0] - v[1];
        return w * w;
    };
    L.d_u = [](double, Span, Span, Out out) { out[0] = out[1] = 0.0; };
    L.d_v = [](double, Span, Span v, Out out) {
        const double w = 2.0 * (v[0] - v[1]);
        out[0] = w;
        out[1] = -w;
    };
    L.d_t = zero_t;
    return L;
}

Lagrangian gauge_pair() {
    Lagrangian L;
    L.name = "gauge-pair";
    L.n = 2;
    L.value = [](double, Span u, Span v) {
        const double w = v[0] - u[1];
        return 0.5 * w * w;
    };
    L.d_u = [](double, Span u, Span v, Out out) {
        out[0] = 0.0;
        out[1] = -(v[0] - u[1]);
    };
    L.d_v = [](double, Span u, Span v, Out out) {
        out[0] = v[0] - u[1];
        out[1] = 0.0;
    };
    L.d_t = zero_t;
    return L;
}

Lagrangian arc_length() {
    Lagrangian L;
    L.name = "arc-length";
    L.n = 2;
    L.value = [](double, Span, Span v) { return std::hypot(v[0], v[1]); };
    L.d_u = [](double, Span, Span, Out out) { out[0] = out[1] = 0.0; };
    L.d_v = [](double, Span, Span v, Out out) {
        const double r = std::hypot(v[0], v[1]);
        out[0] = r > 0.0 ? v[0] / r : 0.0;
        out[1] = r > 0.0 ? v[1] / r : 0.0;
    };
    L.d_t = zero_t;
    return L;
}

Lagrangian lookup(std::string_view name) {
    if (name == "dirichlet") return dirichlet(1);
    if (name == "poisson") return poisson();
    if (name == "harmonic") return harmonic();
    if (name == "pair-difference") return pair_difference();
    if (name == "gauge-pair") return gauge_pair();
    if (name == "arc-length") return arc_length();
    throw ParseError("unknown Lagrangian '" + std::string(name) + "'");
}

std::vector<std::string> names() {
    return {"dirichlet", "poisson", "harmonic", "pair-difference", "gauge-pair", "arc-length"};
}

}  // namespace noether::catalog
