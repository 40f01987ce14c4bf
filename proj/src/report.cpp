#include "noether/report.hpp"

#include <cmath>

#include "noether/error.hpp"

namespace noether {

std::size_t IndexBox::count() const noexcept {
    if (lo.empty()) return 0;
    std::size_t c = 1;
    for (std::size_t a = 0; a < lo.size(); ++a) {
        if (hi[a] < lo[a]) return 0;
        c *= hi[a] - lo[a] + 1;
    }
    return c;
}

bool IndexBox::empty() const noexcept { return count() == 0; }

IndexBox box1(std::size_t lo, std::size_t hi) { return IndexBox{{lo}, {hi}}; }

ResidualReport make_report(std::string label, IndexBox domain, std::size_t width,
                           std::vector<double> per_point, double tolerance) {
    if (per_point.size() != domain.count() * width) throw DomainError("report size does not match its domain");
    ResidualReport r;
    r.label = std::move(label);
    r.domain = std::move(domain);
    r.width = width;
    r.per_point = std::move(per_point);
    r.tolerance = tolerance;
    double sup = 0.0;
    double sq = 0.0;
    bool finite = true;
    for (double x : r.per_point) {
        if (!std::isfinite(x)) finite = false;
        sup = std::max(sup, std::abs(x));
        sq += x * x;
    }
    r.sup_norm = finite ? sup : INFINITY;
    r.l2_norm = finite ? std::sqrt(sq) : INFINITY;
    r.pass = finite && r.sup_norm <= tolerance;
    return r;
}

nlohmann::ordered_json to_json(const ResidualReport& r, bool verbose) {
    nlohmann::ordered_json j;
    j["label"] = r.label;
    j["domain"] = {{"lo", r.domain.lo}, {"hi", r.domain.hi}};
    j["sup_norm"] = r.sup_norm;
    j["l2_norm"] = r.l2_norm;
    if (verbose) {
        j["width"] = r.width;
        j["per_point"] = r.per_point;
    }
    j["verdict"] = r.pass ? "pass" : "fail";
    j["tolerance"] = r.tolerance;
    return j;
}

}  // namespace noether
