// test_report.cpp
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vortexlab/report.hpp"

using namespace vortexlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "vortexlab_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("g17 formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, M_PI, 2.3e-17, -4.567e11, 0.0}) {
        const std::string text = format_g17(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
}

TEST_CASE("config parsing and validation") {
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"experiment", "nonsense"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"experiment", "crystal"}, {"alpha", 2.5}}),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"experiment", "crystal"}, {"typo", 1}}),
                    ConfigError);
    CHECK_THROWS_AS(
        ExperimentConfig::from_json({{"experiment", "crystal"}, {"n", "three"}}),
        ConfigError);
    const ExperimentConfig c =
        ExperimentConfig::from_json({{"experiment", "spectrum"}, {"n", 7}, {"alpha", 1.5}});
    CHECK(c.n == 7);
    CHECK(c.alpha == 1.5);
}

TEST_CASE("spectrum report carries the three-vortex instability rate") {
    ExperimentConfig c;
    c.experiment = "spectrum";
    c.n = 3;
    c.alpha = 1.0;
    c.out_dir = scratch_dir("spectrum").string();
    const RunResult rr = run_experiment(c);
    const double lambda0 = rr.report.at("lambda0").get<double>();
    CHECK(std::abs(lambda0 - 3.0 / (4.0 * M_PI)) < 1e-10);
    CHECK(rr.report.at("config").at("n").get<int>() == 3);
    CHECK(rr.report.contains("definitions"));
    CHECK(fs::exists(fs::path(c.out_dir) / "spectrum_report.json"));
}

TEST_CASE("bounds curve emits CSV with all thresholds below four") {
    ExperimentConfig c;
    c.experiment = "bounds";
    c.n = 9;
    c.curve = true;
    c.alpha_grid = "1.0:1.95:0.05";
    c.out_dir = scratch_dir("bounds").string();
    const RunResult rr = run_experiment(c);
    CHECK(rr.report.at("all_nu_below_4").get<bool>());
    CHECK(rr.report.at("points").get<int>() == 20);
    const std::string csv = slurp(fs::path(c.out_dir) / "bounds_curve.csv");
    CHECK(csv.rfind("alpha,nu_min,lambda0,kappa1,kappa2,complex_dominant\n", 0) == 0);
    // Header plus 20 data rows.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
}

TEST_CASE("escape experiment writes a trajectory table") {
    ExperimentConfig c;
    c.experiment = "escape";
    c.n = 3;
    c.alpha = 1.0;
    c.epsilon = 1e-3;
    c.beta = 0.75;
    c.out_dir = scratch_dir("escape").string();
    const RunResult rr = run_experiment(c);
    CHECK(rr.report.at("tau_z").get<double>() > 0.0);
    CHECK(std::abs(rr.report.at("fitted_rate").get<double>() - 3.0 / (4.0 * M_PI)) <
          0.05 * 3.0 / (4.0 * M_PI));
    const std::string csv = slurp(fs::path(c.out_dir) / "escape_trajectory.csv");
    CHECK(csv.rfind("time,p1,q1,p2,q2,p3,q3\n", 0) == 0);
}

TEST_CASE("domain experiment writes boundary, field, and figures") {
    ExperimentConfig c;
    c.experiment = "domain";
    c.delta = 0.75;
    c.svg = true;
    c.out_dir = scratch_dir("domain").string();
    const RunResult rr = run_experiment(c);
    CHECK(std::abs(rr.report.at("taylor").at("s3_abs").get<double>() - 2.5) < 1e-8);
    CHECK(rr.report.at("thresholds").at("saddle").get<bool>());
    const std::string svg = slurp(fs::path(c.out_dir) / "domain_boundary.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(fs::exists(fs::path(c.out_dir) / "domain_robin.svg"));
    const std::string boundary = slurp(fs::path(c.out_dir) / "domain_boundary.csv");
    CHECK(boundary.rfind("x,y\n", 0) == 0);
    const std::string robin = slurp(fs::path(c.out_dir) / "domain_robin.csv");
    CHECK(std::count(robin.begin(), robin.end(), '\n') == 1 + 24 * 72);
}

TEST_CASE("stable domain has no saddle") {
    ExperimentConfig c;
    c.experiment = "domain";
    c.delta = 0.4;
    c.out_dir = scratch_dir("domain_stable").string();
    const RunResult rr = run_experiment(c);
    CHECK_FALSE(rr.report.at("thresholds").at("saddle").get<bool>());
}

TEST_CASE("blob experiment on a light configuration") {
    ExperimentConfig c;
    c.experiment = "blob";
    c.n = 3;
    c.alpha = 1.0;
    c.epsilon = 0.05;
    c.nu = 2.0;
    c.beta = 0.75;
    c.markers = 24;
    c.t_end = 0.5;
    c.rel_tol = 1e-8;
    c.abs_tol = 1e-11;
    c.threads = 2;
    c.out_dir = scratch_dir("blob").string();
    const RunResult rr = run_experiment(c);
    CHECK(rr.report.at("completed").get<bool>());
    const double i0 = rr.report.at("initial_inertia")[0].get<double>();
    const double expected = rr.report.at("expected_initial_inertia").get<double>();
    CHECK(std::abs(i0 - expected) < 0.03 * expected);
    const std::string csv = slurp(fs::path(c.out_dir) / "blob_diagnostics.csv");
    CHECK(csv.rfind("time,", 0) == 0);
    CHECK(csv.find("oracle_gap") != std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
    ExperimentConfig c;
    c.experiment = "spectrum";
    c.n = 9;
    c.alpha = 1.35;
    c.out_dir = scratch_dir("determinism").string();
    run_experiment(c);
    const std::string first = slurp(fs::path(c.out_dir) / "spectrum_report.json");
    run_experiment(c);
    const std::string second = slurp(fs::path(c.out_dir) / "spectrum_report.json");
    CHECK(!first.empty());
    CHECK(first == second);
}
