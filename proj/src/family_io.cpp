#include "noether/family_io.hpp"

#include <fstream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "noether/error.hpp"

namespace noether {

namespace {

std::size_t require_size(const toml::table& t, std::string_view key, std::int64_t min) {
    auto v = t[key].value<std::int64_t>();
    if (!v) throw ParseError("family entry is missing integer '" + std::string(key) + "'");
    if (*v < min) throw ParseError("family field '" + std::string(key) + "' is out of range");
    return static_cast<std::size_t>(*v);
}

GridFunction coefficient(const toml::table& entry, const ScalePtr& scale) {
    const auto last = scale->size() - 1;
    int given = 0;
    for (auto key : {"value", "poly", "csv"}) given += entry.contains(key) ? 1 : 0;
    if (given != 1) throw ParseError("each coefficient needs exactly one of value, poly, csv");

    if (auto node = entry["value"]; node) {
        if (auto s = node.value<std::string>()) {
            if (*s != "b1") throw ParseError("string coefficient must be \"b1\"");
            const auto& h = scale->condition_h();
            if (!h) throw DomainError("coefficient \"b1\" needs a scale with condition (H)");
            return GridFunction::constant(scale, 0, last, {h->b1});
        }
        auto x = node.value<double>();
        if (!x) throw ParseError("coefficient value must be a number or \"b1\"");
        return GridFunction::constant(scale, 0, last, {*x});
    }
    if (auto arr = entry["poly"].as_array()) {
        std::vector<double> c;
        for (const auto& e : *arr) {
            auto x = e.value<double>();
            if (!x) throw ParseError("poly coefficients must be numbers");
            c.push_back(*x);
        }
        return GridFunction::scalar(scale, 0, last, [&](double t) {
            double acc = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
            return acc;
        });
    }
    auto path = entry["csv"].value<std::string>();
    if (!path) throw ParseError("csv coefficient must be a path string");
    std::ifstream in(*path);
    if (!in) throw ParseError("cannot open coefficient file '" + *path + "'");
    auto f = read_csv(in, scale);
    if (f.n() != 1) throw ParseError("coefficient CSV must have one value column");
    if (f.lo() != 0 || f.hi() != last) throw ParseError("coefficient CSV must cover the whole scale");
    return f;
}

}  // namespace

GaugeFamily parse_family(std::string_view text, const ScalePtr& scale) {
    toml::table doc;
    try {
        doc = toml::parse(text);
    } catch (const toml::parse_error& e) {
        throw ParseError(std::string("family file: ") + std::string(e.description()));
    }
    const auto r = require_size(doc, "r", 1);
    const auto m = require_size(doc, "m", 0);
    const auto n = require_size(doc, "n", 1);
    GaugeFamily fam(scale, n, m, r);

    if (auto gs = doc["g"]; gs) {
        auto arr = gs.as_array();
        if (!arr) throw ParseError("'g' must be an array of tables");
        for (const auto& node : *arr) {
            auto entry = node.as_table();
            if (!entry) throw ParseError("'g' entries must be tables");
            const auto k = require_size(*entry, "k", 1);
            const auto i = require_size(*entry, "i", 0);
            const auto j = require_size(*entry, "j", 1);
            if (k > n || i > m || j > r) throw ParseError("g entry index outside the declared n, m, r");
            fam.set_g(k - 1, i, j - 1, coefficient(*entry, scale));
        }
    }
    if (auto fs = doc["f"]; fs) {
        auto arr = fs.as_array();
        if (!arr) throw ParseError("'f' must be an array of tables");
        fam.enable_time();
        for (const auto& node : *arr) {
            auto entry = node.as_table();
            if (!entry) throw ParseError("'f' entries must be tables");
            const auto i = require_size(*entry, "i", 0);
            const auto j = require_size(*entry, "j", 1);
            if (i > m || j > r) throw ParseError("f entry index outside the declared m, r");
            fam.set_f(i, j - 1, coefficient(*entry, scale));
        }
    }
    return fam;
}

GaugeFamily load_family(const std::string& path, const ScalePtr& scale) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open family file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_family(buf.str(), scale);
}

}  // namespace noether
