#pragma once

#include "gbv/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>

namespace gbv {

struct PerturbationSpec {
    std::string chart = "z";
    cplx center{0.0, 0.0};
    double amplitude = 0.0;
    double width = 0.1;
};

struct DivisorEntrySpec {
    std::string chart = "z";
    cplx location{0.0, 0.0};
    std::string kind = "cone";
    std::optional<double> order;
};

/// One experiment: surface + metric family + scheme + requested checks.
/// Parsing validates every precondition of the operations it will invoke and
/// reports failures with a field-precise path.
struct ExperimentConfig {
    std::string surface_model = "sphere"; // sphere | torus | disk
    cplx tau{0.0, 1.0};
    double radius = 0.8;

    std::string family; // football | flat_cone | cusp_model | round_sphere | flat_torus
    std::map<std::string, double> params;
    std::vector<PerturbationSpec> perturbations;
    std::vector<DivisorEntrySpec> divisor; // optional, must restate the family divisor

    GradedScheme scheme;
    std::vector<std::string> checks = {"gauss_bonnet"};
    int hurwitz_degree = 2;
    double lp_p = 1.0;
    double tolerance = 1e-4;
};

/// Parses and validates; throws validation_error with messages of the form
/// "config error at <field.path>: <reason>".
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

/// Fully resolved configuration (all defaults applied), for reproducibility.
nlohmann::ordered_json effective_config_json(const ExperimentConfig& c);

/// Builds the configured metric (family plus perturbations).
ConformalMetric build_metric(const ExperimentConfig& c);

/// Runs the requested checks, writes report.json and ladder CSVs into out_dir,
/// prints a human-readable summary. Returns the process exit code:
/// 0 all checks pass, 1 some check failed, 3 numerical error.
int run_experiment(const ExperimentConfig& c, const std::string& out_dir, std::ostream& log);

/// Text catalog of the built-in metric families.
std::string list_families();

} // namespace gbv
