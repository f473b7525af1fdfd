#include "gbv/config.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of the singular Gauss-Bonnet identity"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    double tolerance = -1.0;
    bool print_effective = false;

    CLI::App* run = app.add_subcommand("run", "run the checks of a config file");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory for report.json and CSV tables");
    run->add_option("--tolerance", tolerance, "override the config PASS/FAIL tolerance");
    run->add_flag("--print-effective-config", print_effective,
                  "print the fully resolved config before running");

    CLI::App* families = app.add_subcommand("families", "list the built-in metric families");

    CLI11_PARSE(app, argc, argv);

    if (families->parsed()) {
        std::cout << gbv::list_families();
        return 0;
    }

    gbv::ExperimentConfig config;
    try {
        config = gbv::load_config_file(config_path);
        if (tolerance > 0.0) config.tolerance = tolerance;
    } catch (const gbv::validation_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    if (print_effective) std::cout << gbv::effective_config_json(config).dump(2) << "\n";

    try {
        return gbv::run_experiment(config, out_dir, std::cout);
    } catch (const gbv::validation_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const gbv::numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
