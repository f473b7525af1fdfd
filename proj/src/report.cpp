#include "gbv/report.hpp"

#include <cstdio>

namespace gbv {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

nlohmann::ordered_json extrapolation_json(const ExtrapolationInfo& e) {
    nlohmann::ordered_json j;
    j["model"] = e.model;
    j["exponent"] = e.exponent;
    j["value"] = e.value;
    return j;
}

nlohmann::ordered_json ladder_json(const std::vector<LadderEntry>& ladder) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const LadderEntry& e : ladder) {
        nlohmann::ordered_json r;
        r["epsilon"] = e.epsilon;
        r["value"] = e.value;
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

nlohmann::ordered_json flux_records_json(const std::vector<FluxRecord>& records) {
    nlohmann::ordered_json sing = nlohmann::ordered_json::array();
    for (const FluxRecord& rec : records) {
        nlohmann::ordered_json r;
        r["point"] = rec.point;
        r["kind"] = rec.kind == SingularKind::Cusp ? "cusp" : "cone";
        r["order"] = rec.order;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const FluxLadderRow& row : rec.ladder) {
            nlohmann::ordered_json x;
            x["epsilon"] = row.epsilon;
            x["flux_v_over_2pi"] = row.flux_v_over_2pi;
            x["flux_u_over_2pi"] = row.flux_u_over_2pi;
            x["abs_du_flux"] = row.abs_du_flux;
            rows.push_back(std::move(x));
        }
        r["ladder"] = std::move(rows);
        sing.push_back(std::move(r));
    }
    return sing;
}

nlohmann::ordered_json report_to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["chi"] = report.chi;
    j["total_curvature_over_2pi"] = report.total_curvature_over_2pi;
    j["residual"] = report.residual;
    j["per_singularity"] = flux_records_json(report.per_singularity);

    nlohmann::ordered_json diag;
    diag["total_ladder"] = ladder_json(report.ladder_diagnostics.total_ladder);
    diag["extrapolation"] = extrapolation_json(report.ladder_diagnostics.extrapolation);
    nlohmann::ordered_json decay = nlohmann::ordered_json::array();
    for (const auto& [point, exponent] : report.ladder_diagnostics.decay_exponents) {
        nlohmann::ordered_json d;
        d["point"] = point;
        d["exponent"] = exponent;
        decay.push_back(std::move(d));
    }
    diag["decay_exponents"] = std::move(decay);
    j["ladder_diagnostics"] = std::move(diag);

    nlohmann::ordered_json hyp;
    hyp["l1_curvature"] = to_string(report.hypothesis_checks.l1_curvature);
    nlohmann::ordered_json energies = nlohmann::ordered_json::array();
    for (const auto& [point, verdict] : report.hypothesis_checks.dirichlet_energy) {
        nlohmann::ordered_json e;
        e["point"] = point;
        e["verdict"] = to_string(verdict);
        energies.push_back(std::move(e));
    }
    hyp["dirichlet_energy"] = std::move(energies);
    j["hypothesis_checks"] = std::move(hyp);

    j["tolerance"] = report.tolerance;
    j["verdict"] = report.pass ? "PASS" : "FAIL";
    return j;
}

std::string ladder_csv(const std::vector<LadderEntry>& ladder) {
    std::string out = "epsilon,value\r\n";
    for (const LadderEntry& e : ladder) {
        out += format_double(e.epsilon);
        out += ',';
        out += format_double(e.value);
        out += "\r\n";
    }
    return out;
}

} // namespace gbv
