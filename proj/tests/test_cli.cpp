#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path log = fs::temp_directory_path() / ("gbv_cli_" + std::to_string(counter++) + ".log");
    std::string cmd = std::string(GBVERIFY_BIN) + " " + args + " > " + log.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    fs::remove(log);
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, ss.str()};
}

fs::path write_config(const std::string& name, const json& config) {
    fs::path dir = fs::temp_directory_path() / "gbv_cli_cfg";
    fs::create_directories(dir);
    fs::path path = dir / name;
    std::ofstream out(path);
    out << config.dump(2);
    return path;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json football_config() {
    return json{{"surface", {{"model", "sphere"}}},
                {"metric", {{"family", "football"}, {"params", {{"beta", 0.5}}}}},
                {"checks", {"gauss_bonnet"}}};
}

// Minimal structural validator for the subset of JSON Schema the published
// schema uses: type, required, properties, items, enum.
bool validates(const json& schema, const json& value, std::string& why, std::string path = "$") {
    if (schema.contains("enum")) {
        for (const json& option : schema["enum"])
            if (option == value) return true;
        why = path + ": value not in enum";
        return false;
    }
    if (schema.contains("type")) {
        auto matches = [&](const std::string& t) {
            if (t == "object") return value.is_object();
            if (t == "array") return value.is_array();
            if (t == "string") return value.is_string();
            if (t == "number") return value.is_number();
            if (t == "null") return value.is_null();
            if (t == "boolean") return value.is_boolean();
            return false;
        };
        bool ok = false;
        if (schema["type"].is_array()) {
            for (const json& t : schema["type"]) ok = ok || matches(t.get<std::string>());
        } else {
            ok = matches(schema["type"].get<std::string>());
        }
        if (!ok) {
            why = path + ": wrong type";
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const json& key : schema["required"])
                if (!value.contains(key.get<std::string>())) {
                    why = path + ": missing required key " + key.get<std::string>();
                    return false;
                }
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (value.contains(it.key()))
                    if (!validates(it.value(), value[it.key()], why, path + "." + it.key()))
                        return false;
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i)
            if (!validates(schema["items"], value[i], why, path + "[" + std::to_string(i) + "]"))
                return false;
    }
    return true;
}

} // namespace

TEST_CASE("families catalog") {
    RunResult r = run_cli("families");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("football: chi = 2 + 2*beta") != std::string::npos);
    CHECK(r.output.find("flat_torus: chi = 0") != std::string::npos);
    CHECK(r.output.find("round_sphere") != std::string::npos);
    CHECK(r.output.find("flat_cone") != std::string::npos);
    CHECK(r.output.find("cusp_model") != std::string::npos);
}

TEST_CASE("every catalog family is accepted by run") {
    fs::path out = fs::temp_directory_path() / "gbv_cli_families";
    auto run_family = [&](const json& config, const std::string& name) {
        fs::path cfg = write_config(name + ".json", config);
        RunResult r = run_cli("run " + cfg.string() + " --out " + (out / name).string());
        CAPTURE(name);
        CAPTURE(r.output);
        CHECK(r.exit_code == 0);
    };
    run_family(json{{"surface", {{"model", "sphere"}}},
                    {"metric", {{"family", "round_sphere"}}},
                    {"checks", {"gauss_bonnet"}}},
               "round_sphere");
    run_family(football_config(), "football");
    run_family(json{{"surface", {{"model", "torus"}, {"tau", {0.0, 1.0}}}},
                    {"metric", {{"family", "flat_torus"}}},
                    {"checks", {"gauss_bonnet", "green"}}},
               "flat_torus");
    run_family(json{{"surface", {{"model", "disk"}, {"radius", 1.0}}},
                    {"metric", {{"family", "flat_cone"}, {"params", {{"beta", 0.5}}}}},
                    {"checks", {"flux", "decay", "energy"}}},
               "flat_cone");
    run_family(json{{"surface", {{"model", "disk"}, {"radius", 0.8}}},
                    {"metric", {{"family", "cusp_model"}}},
                    {"checks", {"flux", "decay", "energy"}}},
               "cusp_model");
}

TEST_CASE("gauss-bonnet run produces a validating report and exits 0") {
    fs::path cfg = write_config("fb.json", football_config());
    fs::path out = fs::temp_directory_path() / "gbv_cli_fb";
    RunResult r = run_cli("run " + cfg.string() + " --out " + out.string());
    CAPTURE(r.output);
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("[PASS] gauss_bonnet") != std::string::npos);

    json report = json::parse(slurp(out / "report.json"));
    CHECK(report["chi"].get<double>() == 3.0);
    CHECK(std::abs(report["residual"].get<double>()) <= 1e-4);
    CHECK(report["verdict"] == "PASS");
    CHECK(report["checks"]["gauss_bonnet"]["verdict"] == "PASS");

    json schema = json::parse(slurp(fs::path(GBV_SOURCE_DIR) / "docs" / "report.schema.json"));
    std::string why;
    CHECK_MESSAGE(validates(schema, report, why), why);

    // CSV table: RFC-4180 line endings, documented header, full precision
    std::string csv = slurp(out / "ladder_gauss_bonnet_global.csv");
    CHECK(csv.rfind("epsilon,value\r\n", 0) == 0);
    CHECK(csv.find("0.10000000000000001,") != std::string::npos); // 0.1 at 17 digits
}

TEST_CASE("local patch run reports flux ladders with null chi") {
    json cfg_json{{"surface", {{"model", "disk"}, {"radius", 0.8}}},
                  {"metric", {{"family", "cusp_model"}}},
                  {"checks", {"flux", "decay"}}};
    fs::path cfg = write_config("cusp.json", cfg_json);
    fs::path out = fs::temp_directory_path() / "gbv_cli_cusp";
    RunResult r = run_cli("run " + cfg.string() + " --out " + out.string());
    CAPTURE(r.output);
    REQUIRE(r.exit_code == 0);
    json report = json::parse(slurp(out / "report.json"));
    CHECK(report["chi"].is_null());
    CHECK(report["per_singularity"].size() == 1);
    CHECK(report["per_singularity"][0]["kind"] == "cusp");
    CHECK(fs::exists(out / "ladder_flux_p0.csv"));
    CHECK(fs::exists(out / "ladder_decay_p0.csv"));

    json schema = json::parse(slurp(fs::path(GBV_SOURCE_DIR) / "docs" / "report.schema.json"));
    std::string why;
    CHECK_MESSAGE(validates(schema, report, why), why);
}

TEST_CASE("repeated runs are byte-identical") {
    fs::path cfg = write_config("det.json", football_config());
    fs::path out1 = fs::temp_directory_path() / "gbv_cli_det1";
    fs::path out2 = fs::temp_directory_path() / "gbv_cli_det2";
    REQUIRE(run_cli("run " + cfg.string() + " --out " + out1.string()).exit_code == 0);
    REQUIRE(run_cli("run " + cfg.string() + " --out " + out2.string()).exit_code == 0);
    CHECK(slurp(out1 / "report.json") == slurp(out2 / "report.json"));
    CHECK(slurp(out1 / "ladder_gauss_bonnet_global.csv")
          == slurp(out2 / "ladder_gauss_bonnet_global.csv"));
}

TEST_CASE("config validation failures exit 2 with field-precise messages") {
    json bad_order = football_config();
    bad_order["divisor"] = json::array(
        {{{"chart", "z"}, {"location", {0.0, 0.0}}, {"kind", "cone"}, {"order", -1.5}}});
    fs::path cfg = write_config("bad_order.json", bad_order);
    RunResult r = run_cli("run " + cfg.string() + " --out /tmp/gbv_cli_unused");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("divisor[0].order") != std::string::npos);

    json bad_radius{{"surface", {{"model", "disk"}, {"radius", 1.5}}},
                    {"metric", {{"family", "cusp_model"}}},
                    {"checks", {"flux"}}};
    r = run_cli("run " + write_config("bad_radius.json", bad_radius).string()
                + " --out /tmp/gbv_cli_unused");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("surface.radius") != std::string::npos);

    json mismatched{{"surface", {{"model", "torus"}, {"tau", {0.0, 1.0}}}},
                    {"metric", {{"family", "football"}, {"params", {{"beta", 0.5}}}}},
                    {"checks", {"gauss_bonnet"}}};
    r = run_cli("run " + write_config("mismatch.json", mismatched).string()
                + " --out /tmp/gbv_cli_unused");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("metric.family") != std::string::npos);

    json unknown_check = football_config();
    unknown_check["checks"] = {"gauss_bonnett"};
    r = run_cli("run " + write_config("unknown_check.json", unknown_check).string()
                + " --out /tmp/gbv_cli_unused");
    CHECK(r.exit_code == 2);

    json global_on_disk{{"surface", {{"model", "disk"}, {"radius", 1.0}}},
                        {"metric", {{"family", "flat_cone"}, {"params", {{"beta", 0.5}}}}},
                        {"checks", {"gauss_bonnet"}}};
    r = run_cli("run " + write_config("global_on_disk.json", global_on_disk).string()
                + " --out /tmp/gbv_cli_unused");
    CHECK(r.exit_code == 2);

    json typo = football_config();
    typo["tolerence"] = 1e-9;
    r = run_cli("run " + write_config("typo.json", typo).string() + " --out /tmp/gbv_cli_unused");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("tolerence") != std::string::npos);

    json wide_ladder = football_config();
    wide_ladder["scheme"] = {{"excision_ladder", {0.9, 0.4}}};
    r = run_cli("run " + write_config("wide_ladder.json", wide_ladder).string()
                + " --out /tmp/gbv_cli_unused");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("scheme.excision_ladder") != std::string::npos);

    r = run_cli("run /nonexistent/config.json --out /tmp/gbv_cli_unused");
    CHECK(r.exit_code == 2);
}

TEST_CASE("a failing verdict exits 1") {
    // The cusp L1 ladder converges only logarithmically; at the default ladder
    // the verdict is inconclusive, which fails the lp check.
    json cfg_json{{"surface", {{"model", "disk"}, {"radius", 0.8}}},
                  {"metric", {{"family", "cusp_model"}}},
                  {"checks", {"lp"}}};
    fs::path cfg = write_config("lp_fail.json", cfg_json);
    RunResult r = run_cli("run " + cfg.string() + " --out " + (fs::temp_directory_path() / "gbv_cli_lpfail").string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("[FAIL] lp") != std::string::npos);
}

TEST_CASE("numerical breakdown exits 3 and names the location") {
    // An amplitude-400 bump overflows e^{2v} on its support; the first
    // non-finite sample must be reported with its chart location.
    json cfg_json = football_config();
    cfg_json["metric"]["perturbations"] = json::array(
        {{{"center", {0.7, 0.0}}, {"amplitude", 400.0}, {"width", 0.15}}});
    fs::path cfg = write_config("exit3.json", cfg_json);
    RunResult r = run_cli("run " + cfg.string() + " --out "
                          + (fs::temp_directory_path() / "gbv_cli_e3").string());
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("chart 0") != std::string::npos);
}

TEST_CASE("hurwitz check through the CLI") {
    json cfg_json = football_config();
    cfg_json["checks"] = {"hurwitz"};
    cfg_json["hurwitz_degree"] = 2;
    fs::path cfg = write_config("hurwitz.json", cfg_json);
    fs::path out = fs::temp_directory_path() / "gbv_cli_hurwitz";
    RunResult r = run_cli("run " + cfg.string() + " --out " + out.string());
    CAPTURE(r.output);
    REQUIRE(r.exit_code == 0);
    json report = json::parse(slurp(out / "report.json"));
    CHECK(report["checks"]["hurwitz"]["verdict"] == "PASS");
    CHECK(report["checks"]["hurwitz"]["chi_pullback"].get<double>() == 6.0);
    CHECK(report["checks"]["hurwitz"]["chi_relation_residual"].get<double>() == 0.0);
}

TEST_CASE("restated divisor, forced extrapolation exponent, and lp exponent") {
    json cfg_json = football_config();
    cfg_json["checks"] = {"gauss_bonnet", "lp"};
    cfg_json["lp_p"] = 2.0;
    cfg_json["scheme"] = {{"richardson_order", 3.0}};
    cfg_json["divisor"] = json::array(
        {{{"chart", "z"}, {"location", {0.0, 0.0}}, {"kind", "cone"}, {"order", 0.5}},
         {{"chart", "w"}, {"location", {0.0, 0.0}}, {"kind", "cone"}, {"order", 0.5}}});
    fs::path cfg = write_config("restated.json", cfg_json);
    fs::path out = fs::temp_directory_path() / "gbv_cli_restated";
    RunResult r = run_cli("run " + cfg.string() + " --out " + out.string());
    CAPTURE(r.output);
    REQUIRE(r.exit_code == 0);
    json report = json::parse(slurp(out / "report.json"));
    CHECK(std::abs(report["residual"].get<double>()) <= 1e-4);
    CHECK(report["checks"]["lp"]["p"].get<double>() == 2.0);
    // |K| = 1: the L2 norm is the square root of the area 6 pi
    CHECK(std::abs(report["checks"]["lp"]["norm"].get<double>()
                   - std::sqrt(6.0 * 3.14159265358979324))
          <= 1e-5);
}

TEST_CASE("effective config and tolerance override") {
    fs::path cfg = write_config("eff.json", football_config());
    fs::path out = fs::temp_directory_path() / "gbv_cli_eff";
    RunResult r = run_cli("run " + cfg.string() + " --out " + out.string()
                          + " --tolerance 1e-2 --print-effective-config");
    REQUIRE(r.exit_code == 0);
    std::string::size_type brace = r.output.find('{');
    REQUIRE(brace != std::string::npos);
    json eff = json::parse(r.output.substr(brace, r.output.rfind('}') - brace + 1));
    CHECK(eff["scheme"]["angular_count"] == 512);
    CHECK(eff["scheme"]["bulk_resolution"] == 64);
    CHECK(eff["scheme"]["radial_levels"] == 48);
    CHECK(eff["scheme"]["excision_ladder"].size() == 9);
    CHECK(eff["tolerance"].get<double>() == 1e-2);
    CHECK(eff["divisor"].size() == 2);

    json report = json::parse(slurp(out / "report.json"));
    CHECK(report["tolerance"].get<double>() == 1e-2);
}
