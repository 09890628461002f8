// vlab.cpp
// Command-line front end. Builds a flat JSON config from subcommand flags and
// hands it to the shared library through the C API; prints the report JSON.
//
// Exit codes: 0 success, 1 failed verification, 2 usage/config error,
// 3 numerical failure.
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vortexlab/vortexlab.h"

namespace {

struct Flags {
    int n = 3;
    double alpha = 1.0;
    double delta = 0.75;
    double epsilon = 1e-4;
    double beta = 0.75;
    double nu = 4.0;
    int markers = 200;
    bool curve = false;
    std::string alpha_grid;
    bool svg = false;
    bool dump_markers = false;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double t_end = 0.0;
    double time_budget = 0.0;
    int threads = 1;
    std::string out_dir = ".";
    std::string config_file;
};

nlohmann::json flags_to_json(const std::string& experiment, const Flags& f) {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["n"] = f.n;
    j["alpha"] = f.alpha;
    j["delta"] = f.delta;
    j["epsilon"] = f.epsilon;
    j["beta"] = f.beta;
    j["nu"] = f.nu;
    j["markers"] = f.markers;
    j["curve"] = f.curve;
    j["alpha_grid"] = f.alpha_grid;
    j["svg"] = f.svg;
    j["dump_markers"] = f.dump_markers;
    j["rel_tol"] = f.rel_tol;
    j["abs_tol"] = f.abs_tol;
    j["t_end"] = f.t_end;
    j["time_budget"] = f.time_budget;
    j["threads"] = f.threads;
    j["out_dir"] = f.out_dir;
    return j;
}

// Optional flat key = value file, overridden by explicit flags.
bool load_config_file(const std::string& path, nlohmann::json& j) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) return false;
    char line[512];
    while (std::fgets(line, sizeof(line), fp)) {
        std::string text(line);
        const auto eq = text.find('=');
        if (eq == std::string::npos || text[0] == '#') continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r\n");
            const auto b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "curve" || key == "svg" || key == "dump_markers") {
            j[key] = (value == "true" || value == "1");
        } else if (key == "experiment" || key == "alpha_grid" || key == "out_dir") {
            j[key] = value;
        } else if (key == "n" || key == "markers" || key == "threads") {
            j[key] = std::stoi(value);
        } else {
            j[key] = std::stod(value);
        }
    }
    std::fclose(fp);
    return true;
}

int run(const std::string& experiment, const Flags& flags) {
    nlohmann::json config;
    if (!flags.config_file.empty()) {
        if (!load_config_file(flags.config_file, config)) {
            std::fprintf(stderr, "error: cannot read config file %s\n",
                         flags.config_file.c_str());
            return 2;
        }
    }
    nlohmann::json from_flags = flags_to_json(experiment, flags);
    for (auto it = from_flags.begin(); it != from_flags.end(); ++it) {
        config[it.key()] = it.value();
    }

    vl_report* report = nullptr;
    const vl_status status = vl_run_experiment(config.dump().c_str(), &report);
    if (status != VL_OK) {
        std::fprintf(stderr, "error: %s\n", vl_last_error());
        return status == VL_ERR_CONFIG ? 2 : 3;
    }
    std::printf("%s\n", vl_report_json(report));
    const bool passed = vl_report_passed(report) == 1;
    vl_report_free(report);
    return passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortex laboratory: crystals, spectra, escape runs, marker clouds, "
                 "hexagonal domains"};
    app.require_subcommand(1);
    Flags f;

    const auto add_common = [&f](CLI::App* cmd) {
        cmd->add_option("--out-dir", f.out_dir, "output directory");
        cmd->add_option("--config", f.config_file, "flat key = value config file");
        cmd->add_option("--rel-tol", f.rel_tol, "integrator relative tolerance");
        cmd->add_option("--abs-tol", f.abs_tol, "integrator absolute tolerance");
        cmd->add_option("--threads", f.threads, "worker threads for marker sums");
    };

    CLI::App* crystal = app.add_subcommand("crystal", "build a crystal, report residual");
    crystal->add_option("--n", f.n, "total vortex count");
    crystal->add_option("--alpha", f.alpha, "interaction exponent in [1,2)");
    add_common(crystal);

    CLI::App* spectrumc = app.add_subcommand("spectrum", "Jacobian spectrum report");
    spectrumc->add_option("--n", f.n, "total vortex count");
    spectrumc->add_option("--alpha", f.alpha, "interaction exponent in [1,2)");
    add_common(spectrumc);

    CLI::App* bounds = app.add_subcommand("bounds", "concentration thresholds");
    bounds->add_option("--n", f.n, "total vortex count");
    bounds->add_option("--alpha", f.alpha, "interaction exponent in [1,2)");
    bounds->add_option("--nu", f.nu, "concentration exponent for the beta0 report");
    bounds->add_flag("--curve", f.curve, "emit the threshold curve CSV");
    bounds->add_option("--alpha-grid", f.alpha_grid, "grid lo:hi:step for --curve");
    add_common(bounds);

    CLI::App* escape = app.add_subcommand("escape", "unstable-crystal escape run");
    escape->add_option("--n", f.n, "total vortex count");
    escape->add_option("--alpha", f.alpha, "interaction exponent in [1,2)");
    escape->add_option("--epsilon", f.epsilon, "initial offset scale");
    escape->add_option("--beta", f.beta, "exit-radius exponent in (0,1)");
    add_common(escape);

    CLI::App* blob = app.add_subcommand("blob", "marker-cloud confinement run");
    blob->add_option("--n", f.n, "total vortex count");
    blob->add_option("--alpha", f.alpha, "interaction exponent in [1,2)");
    blob->add_option("--epsilon", f.epsilon, "blob scale");
    blob->add_option("--beta", f.beta, "exit-radius exponent in (0,1)");
    blob->add_option("--nu", f.nu, "concentration exponent >= 2");
    blob->add_option("--markers", f.markers, "markers per blob");
    blob->add_option("--t-end", f.t_end, "horizon override (0 = to tau_Z)");
    blob->add_option("--time-budget", f.time_budget, "wall-clock guard in seconds");
    blob->add_flag("--dump-markers", f.dump_markers, "raw marker CSV per snapshot");
    add_common(blob);

    CLI::App* domain = app.add_subcommand("domain", "hexagonal-domain report and figures");
    domain->add_option("--delta", f.delta, "domain parameter in (0,1)");
    domain->add_flag("--svg", f.svg, "render SVG figures");
    add_common(domain);

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--time-budget", f.time_budget,
                       "wall budget for the pinned cloud run (seconds)");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    return run(app.get_subcommands().front()->get_name(), f);
}
