#include "gbv/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gbv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw validation_error("config error at " + path + ": " + why);
}

const json* find(const json& j, const std::string& key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

cplx as_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
    return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

struct FamilyInfo {
    std::string surface;
    std::set<std::string> params;
};

const std::map<std::string, FamilyInfo>& family_table() {
    static const std::map<std::string, FamilyInfo> table = {
        {"football", {"sphere", {"beta"}}},
        {"round_sphere", {"sphere", {}}},
        {"flat_torus", {"torus", {}}},
        {"flat_cone", {"disk", {"beta"}}},
        {"cusp_model", {"disk", {}}},
    };
    return table;
}

const std::set<std::string>& known_checks() {
    static const std::set<std::string> checks = {"gauss_bonnet", "green", "flux", "decay",
                                                 "lp",          "energy", "hurwitz"};
    return checks;
}

int chart_id(const std::string& name, const std::string& surface, const std::string& path) {
    if (name == "z") return 0;
    if (name == "w") {
        if (surface != "sphere") fail(path, "chart \"w\" exists only on the sphere");
        return 1;
    }
    fail(path, "unknown chart \"" + name + "\" (use \"z\" or \"w\")");
}

// Typoed keys silently falling back to defaults would corrupt results.
void reject_unknown_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) fail(path + "." + it.key(), "unknown field");
    }
}

// The divisor each family carries; used to validate a user-supplied divisor block.
std::vector<DivisorEntrySpec> family_divisor(const ExperimentConfig& c) {
    if (c.family == "football") {
        double beta = c.params.at("beta");
        return {{"z", {0.0, 0.0}, "cone", beta}, {"w", {0.0, 0.0}, "cone", beta}};
    }
    if (c.family == "flat_cone") return {{"z", {0.0, 0.0}, "cone", c.params.at("beta")}};
    if (c.family == "cusp_model") return {{"z", {0.0, 0.0}, "cusp", std::nullopt}};
    return {};
}

} // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) fail("$", "top-level must be an object");
    ExperimentConfig c;
    reject_unknown_keys(j, "$", {"surface", "metric", "divisor", "scheme", "checks",
                                 "hurwitz_degree", "lp_p", "tolerance"});

    const json* surface = find(j, "surface");
    if (!surface || !surface->is_object()) fail("surface", "required object");
    reject_unknown_keys(*surface, "surface", {"model", "tau", "radius"});
    c.surface_model = as_string((*surface).value("model", json()), "surface.model");
    if (c.surface_model != "sphere" && c.surface_model != "torus" && c.surface_model != "disk")
        fail("surface.model", "must be \"sphere\", \"torus\" or \"disk\"");
    if (const json* tau = find(*surface, "tau")) {
        c.tau = as_complex(*tau, "surface.tau");
        if (!(c.tau.imag() > 0.0)) fail("surface.tau", "imaginary part must be positive");
    }
    if (const json* radius = find(*surface, "radius")) {
        c.radius = as_number(*radius, "surface.radius");
        if (!(c.radius > 0.0)) fail("surface.radius", "must be positive");
    }

    const json* metric = find(j, "metric");
    if (!metric || !metric->is_object()) fail("metric", "required object");
    reject_unknown_keys(*metric, "metric", {"family", "params", "perturbations"});
    c.family = as_string(metric->value("family", json()), "metric.family");
    auto fam = family_table().find(c.family);
    if (fam == family_table().end()) fail("metric.family", "unknown family \"" + c.family + "\"");
    if (fam->second.surface != c.surface_model)
        fail("metric.family", "family \"" + c.family + "\" lives on a " + fam->second.surface);
    if (const json* params = find(*metric, "params")) {
        if (!params->is_object()) fail("metric.params", "expected an object");
        for (auto it = params->begin(); it != params->end(); ++it)
            c.params[it.key()] = as_number(it.value(), "metric.params." + it.key());
    }
    for (const std::string& need : fam->second.params)
        if (!c.params.count(need)) fail("metric.params." + need, "required by family " + c.family);
    if (c.params.count("beta") && !(c.params["beta"] > -1.0))
        fail("metric.params.beta", "cone order must be > -1");
    if (c.family == "cusp_model" && !(c.radius < 1.0))
        fail("surface.radius", "cusp model requires radius in (0, 1)");

    if (const json* perts = find(*metric, "perturbations")) {
        if (!perts->is_array()) fail("metric.perturbations", "expected an array");
        for (std::size_t i = 0; i < perts->size(); ++i) {
            std::string path = "metric.perturbations[" + std::to_string(i) + "]";
            const json& p = (*perts)[i];
            if (!p.is_object()) fail(path, "expected an object");
            reject_unknown_keys(p, path, {"center", "amplitude", "width", "chart"});
            PerturbationSpec spec;
            spec.center = as_complex(p.value("center", json()), path + ".center");
            spec.amplitude = as_number(p.value("amplitude", json()), path + ".amplitude");
            spec.width = as_number(p.value("width", json()), path + ".width");
            if (!(spec.width > 0.0)) fail(path + ".width", "must be positive");
            if (const json* chart = find(p, "chart"))
                spec.chart = as_string(*chart, path + ".chart");
            chart_id(spec.chart, c.surface_model, path + ".chart");
            c.perturbations.push_back(spec);
        }
    }

    if (const json* divisor = find(j, "divisor")) {
        if (!divisor->is_array()) fail("divisor", "expected an array");
        for (std::size_t i = 0; i < divisor->size(); ++i) {
            std::string path = "divisor[" + std::to_string(i) + "]";
            const json& d = (*divisor)[i];
            if (!d.is_object()) fail(path, "expected an object");
            reject_unknown_keys(d, path, {"chart", "location", "kind", "order"});
            DivisorEntrySpec spec;
            spec.chart = as_string(d.value("chart", json("z")), path + ".chart");
            chart_id(spec.chart, c.surface_model, path + ".chart");
            spec.location = as_complex(d.value("location", json()), path + ".location");
            spec.kind = as_string(d.value("kind", json()), path + ".kind");
            if (spec.kind != "cone" && spec.kind != "cusp")
                fail(path + ".kind", "must be \"cone\" or \"cusp\"");
            if (const json* order = find(d, "order")) {
                spec.order = as_number(*order, path + ".order");
                if (spec.kind == "cone" && !(*spec.order > -1.0))
                    fail(path + ".order", "cone order must be > -1");
            } else if (spec.kind == "cone") {
                fail(path + ".order", "cone entries need an order");
            }
            c.divisor.push_back(spec);
        }
        // The library never infers singular structure: a user divisor may only
        // restate what the family defines.
        std::vector<DivisorEntrySpec> expected = family_divisor(c);
        if (c.divisor.size() != expected.size())
            fail("divisor", "family " + c.family + " carries "
                                + std::to_string(expected.size()) + " singular points");
        for (std::size_t i = 0; i < expected.size(); ++i) {
            std::string path = "divisor[" + std::to_string(i) + "]";
            if (c.divisor[i].chart != expected[i].chart)
                fail(path + ".chart", "family " + c.family + " places this point in chart \""
                                          + expected[i].chart + "\"");
            if (c.divisor[i].location != expected[i].location)
                fail(path + ".location", "family divisor point sits at the chart center");
            if (c.divisor[i].kind != expected[i].kind)
                fail(path + ".kind", "kind disagrees with family " + c.family);
            if (expected[i].order
                && std::abs(c.divisor[i].order.value_or(-2.0) - *expected[i].order) > 1e-12)
                fail(path + ".order", "order disagrees with metric.params");
        }
    }

    if (const json* scheme = find(j, "scheme")) {
        if (!scheme->is_object()) fail("scheme", "expected an object");
        reject_unknown_keys(*scheme, "scheme",
                            {"excision_ladder", "radial_levels", "angular_count",
                             "bulk_resolution", "richardson_order"});
        if (const json* ladder = find(*scheme, "excision_ladder")) {
            if (!ladder->is_array() || ladder->empty()) fail("scheme.excision_ladder", "expected a nonempty array");
            c.scheme.excision_ladder.clear();
            for (std::size_t i = 0; i < ladder->size(); ++i)
                c.scheme.excision_ladder.push_back(
                    as_number((*ladder)[i], "scheme.excision_ladder[" + std::to_string(i) + "]"));
        }
        if (const json* m = find(*scheme, "radial_levels"))
            c.scheme.radial_levels = as_int(*m, "scheme.radial_levels");
        if (const json* n = find(*scheme, "angular_count"))
            c.scheme.angular_count = as_int(*n, "scheme.angular_count");
        if (const json* b = find(*scheme, "bulk_resolution"))
            c.scheme.bulk_resolution = as_int(*b, "scheme.bulk_resolution");
        if (const json* q = find(*scheme, "richardson_order"))
            c.scheme.richardson_order = as_number(*q, "scheme.richardson_order");
        try {
            c.scheme.validate();
        } catch (const validation_error& e) {
            fail("scheme", e.what());
        }
    }

    if (const json* checks = find(j, "checks")) {
        if (!checks->is_array()) fail("checks", "expected an array");
        c.checks.clear();
        for (std::size_t i = 0; i < checks->size(); ++i) {
            std::string name = as_string((*checks)[i], "checks[" + std::to_string(i) + "]");
            if (!known_checks().count(name))
                fail("checks[" + std::to_string(i) + "]", "unknown check \"" + name + "\"");
            c.checks.push_back(name);
        }
        if (c.checks.empty()) fail("checks", "at least one check is required");
    }

    if (const json* n = find(j, "hurwitz_degree")) {
        c.hurwitz_degree = as_int(*n, "hurwitz_degree");
        if (c.hurwitz_degree < 1) fail("hurwitz_degree", "must be >= 1");
    }
    if (const json* p = find(j, "lp_p")) {
        c.lp_p = as_number(*p, "lp_p");
        if (!(c.lp_p >= 1.0)) fail("lp_p", "must be >= 1");
    }
    if (const json* tol = find(j, "tolerance")) {
        c.tolerance = as_number(*tol, "tolerance");
        if (!(c.tolerance > 0.0)) fail("tolerance", "must be positive");
    }

    // The excision ladder must stay below every decomposition radius
    // (0.5 at football cone points, the patch radius on disk families).
    if (!family_divisor(c).empty()) {
        double min_radius = c.surface_model == "disk" ? c.radius : 0.5;
        if (!(c.scheme.excision_ladder.front() < min_radius))
            fail("scheme.excision_ladder",
                 "largest excision radius must stay below the decomposition radius "
                     + std::to_string(min_radius));
    }

    // Checks that need structure the surface cannot offer are config errors,
    // not runtime failures.
    bool compact = c.surface_model != "disk";
    for (const std::string& check : c.checks) {
        if ((check == "gauss_bonnet" || check == "green" || check == "hurwitz") && !compact)
            fail("checks", "check \"" + check + "\" requires a compact surface");
        if (check == "hurwitz" && c.surface_model != "sphere")
            fail("checks", "hurwitz check requires a sphere metric");
        if ((check == "flux" || check == "decay" || check == "energy")
            && family_divisor(c).empty())
            fail("checks", "check \"" + check + "\" needs at least one singular point");
    }
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw validation_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

nlohmann::ordered_json effective_config_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["surface"]["model"] = c.surface_model;
    if (c.surface_model == "torus") j["surface"]["tau"] = {c.tau.real(), c.tau.imag()};
    if (c.surface_model == "disk") j["surface"]["radius"] = c.radius;
    j["metric"]["family"] = c.family;
    j["metric"]["params"] = c.params;
    nlohmann::ordered_json perts = nlohmann::ordered_json::array();
    for (const PerturbationSpec& p : c.perturbations) {
        nlohmann::ordered_json e;
        e["chart"] = p.chart;
        e["center"] = {p.center.real(), p.center.imag()};
        e["amplitude"] = p.amplitude;
        e["width"] = p.width;
        perts.push_back(std::move(e));
    }
    j["metric"]["perturbations"] = std::move(perts);
    nlohmann::ordered_json div = nlohmann::ordered_json::array();
    for (const DivisorEntrySpec& d : family_divisor(c)) {
        nlohmann::ordered_json e;
        e["chart"] = d.chart;
        e["location"] = {d.location.real(), d.location.imag()};
        e["kind"] = d.kind;
        if (d.order) e["order"] = *d.order;
        div.push_back(std::move(e));
    }
    j["divisor"] = std::move(div);
    j["scheme"]["excision_ladder"] = c.scheme.excision_ladder;
    j["scheme"]["radial_levels"] = c.scheme.radial_levels;
    j["scheme"]["angular_count"] = c.scheme.angular_count;
    j["scheme"]["bulk_resolution"] = c.scheme.bulk_resolution;
    if (c.scheme.richardson_order)
        j["scheme"]["richardson_order"] = *c.scheme.richardson_order;
    else
        j["scheme"]["richardson_order"] = "fitted";
    j["checks"] = c.checks;
    j["hurwitz_degree"] = c.hurwitz_degree;
    j["lp_p"] = c.lp_p;
    j["tolerance"] = c.tolerance;
    return j;
}

ConformalMetric build_metric(const ExperimentConfig& c) {
    ConformalMetric m;
    if (c.family == "football") m = football_metric(c.params.at("beta"));
    else if (c.family == "round_sphere") m = round_sphere_metric();
    else if (c.family == "flat_torus") m = flat_torus_metric(c.tau);
    else if (c.family == "flat_cone") m = flat_cone_metric(c.params.at("beta"), c.radius);
    else if (c.family == "cusp_model") m = cusp_model_metric(c.radius);
    else throw validation_error("unknown family " + c.family);

    for (std::size_t i = 0; i < c.perturbations.size(); ++i) {
        const PerturbationSpec& p = c.perturbations[i];
        Bump bump;
        bump.chart = p.chart == "w" ? 1 : 0;
        bump.center = p.center;
        bump.amplitude = p.amplitude;
        bump.width = p.width;
        try {
            m = perturb(m, bump);
        } catch (const validation_error& e) {
            throw validation_error("config error at metric.perturbations["
                                   + std::to_string(i) + "]: " + e.what());
        }
    }
    return m;
}

} // namespace gbv
