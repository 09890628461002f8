// report.cpp
#include "vortexlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vortexlab/acceptance.hpp"
#include "vortexlab/blob_lab.hpp"
#include "vortexlab/bounds.hpp"
#include "vortexlab/conformal_domain.hpp"
#include "vortexlab/crystal.hpp"
#include "vortexlab/linearization.hpp"
#include "vortexlab/ode_engine.hpp"

namespace vortexlab {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_text_file(const fs::path& path, const std::string& text,
                     std::vector<std::string>& files) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw NumericError("cannot open output file " + path.string());
    }
    out << text;
    files.push_back(path.string());
}

std::string csv_row(const std::vector<double>& values) {
    std::string row;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) row += ',';
        row += format_g17(values[i]);
    }
    row += '\n';
    return row;
}

ordered_json complex_list(const Eigen::VectorXcd& values) {
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < values.size(); ++i) {
        arr.push_back({values[i].real(), values[i].imag()});
    }
    return arr;
}

std::vector<double> parse_alpha_grid(const std::string& text) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0 ||
        hi < lo) {
        throw ConfigError("alpha grid must be lo:hi:step with step > 0, got '" + text + "'");
    }
    std::vector<double> grid;
    for (double a = lo; a <= hi + 0.5 * step; a += step) {
        grid.push_back(std::min(a, hi));
    }
    return grid;
}

// Minimal SVG writers: a closed curve and a polar heat map.
std::string svg_curve(const std::vector<Vec2>& pts, const std::string& stroke) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Vec2& p : pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
        << format_g17(xmin - pad) << ' ' << format_g17(-(ymax + pad)) << ' '
        << format_g17(xmax - xmin + 2 * pad) << ' ' << format_g17(ymax - ymin + 2 * pad)
        << "\">\n<path fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
        << format_g17(0.008 * (xmax - xmin + 2 * pad)) << "\" d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        svg << (i == 0 ? 'M' : 'L') << format_g17(pts[i].x) << ' ' << format_g17(-pts[i].y);
    }
    svg << "Z\"/>\n</svg>\n";
    return svg.str();
}

std::string ramp_color(double v) {
    // Five-stop blue->yellow ramp on [0,1].
    static const double stops[5][3] = {{68, 1, 84},
                                       {59, 82, 139},
                                       {33, 145, 140},
                                       {94, 201, 98},
                                       {253, 231, 37}};
    v = std::clamp(v, 0.0, 1.0) * 4.0;
    const int k = std::min(3, static_cast<int>(v));
    const double f = v - k;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(stops[k][0] + f * (stops[k + 1][0] - stops[k][0])),
                  static_cast<int>(stops[k][1] + f * (stops[k + 1][1] - stops[k][1])),
                  static_cast<int>(stops[k][2] + f * (stops[k + 1][2] - stops[k][2])));
    return buf;
}

std::string svg_disk_heatmap(const HexDomain& domain, int nr, int nt) {
    // Conformal radius of Omega pulled back to the unit disk.
    double vmax = 0.0;
    std::vector<std::vector<double>> value(nr, std::vector<double>(nt));
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) / nr * 0.995;
        for (int j = 0; j < nt; ++j) {
            const double th = 2.0 * M_PI * (j + 0.5) / nt;
            value[i][j] = domain.robin_data(std::polar(r, th)).conformal_radius;
            vmax = std::max(vmax, value[i][j]);
        }
    }
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "viewBox=\"-1.05 -1.05 2.1 2.1\">\n";
    for (int i = 0; i < nr; ++i) {
        const double r0 = static_cast<double>(i) / nr, r1 = (i + 1.0) / nr;
        for (int j = 0; j < nt; ++j) {
            const double t0 = 2.0 * M_PI * j / nt, t1 = 2.0 * M_PI * (j + 1) / nt;
            svg << "<polygon fill=\"" << ramp_color(value[i][j] / vmax)
                << "\" stroke=\"none\" points=\"";
            for (const auto& [rr, tt] : {std::pair{r0, t0}, std::pair{r1, t0},
                                         std::pair{r1, t1}, std::pair{r0, t1}}) {
                svg << format_g17(rr * std::cos(tt)) << ',' << format_g17(-rr * std::sin(tt))
                    << ' ';
            }
            svg << "\"/>\n";
        }
    }
    svg << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" "
           "stroke-width=\"0.01\"/>\n</svg>\n";
    return svg.str();
}

IntegratorSettings settings_from_config(const ExperimentConfig& c) {
    IntegratorSettings s;
    s.rel_tol = c.rel_tol;
    s.abs_tol = c.abs_tol;
    s.threads = c.threads;
    s.wall_budget_seconds = c.time_budget;
    return s;
}

RunResult run_crystal(const ExperimentConfig& c) {
    const CrystalSpec spec{c.n, AlphaModel(c.alpha)};
    const Configuration z = build_crystal(spec);
    RunResult rr;
    rr.report["experiment"] = "crystal";
    rr.report["config"] = c.to_json();
    rr.report["version"] = kVersion;
    ordered_json vortices = ordered_json::array();
    for (const auto& v : z.vortices) {
        vortices.push_back({{"x", v.position.x}, {"y", v.position.y},
                            {"intensity", v.intensity}});
    }
    rr.report["vortices"] = vortices;
    rr.report["center_intensity"] = center_intensity(spec);
    rr.report["stationarity_residual"] = stationarity_residual(spec.model, z);
    rr.report["definitions"] = {
        {"center_intensity", "-sum_j (1-zeta^j)/|1-zeta^j|^(alpha+1), zeta = exp(2 pi i/(N-1))"},
        {"stationarity_residual", "max_i |f_i(Z*)|"}};
    return rr;
}

RunResult run_spectrum(const ExperimentConfig& c) {
    const CrystalSpec spec{c.n, AlphaModel(c.alpha)};
    const Configuration z = build_crystal(spec);
    const Eigen::MatrixXd df = jacobian_analytic(spec.model, z);
    const SpectralReport rep = spectrum(df, spec.model, z);
    RunResult rr;
    rr.report["experiment"] = "spectrum";
    rr.report["config"] = c.to_json();
    rr.report["version"] = kVersion;
    rr.report["c_alpha"] = spec.model.c_alpha;
    rr.report["eigenvalues"] = complex_list(rep.eigenvalues);
    rr.report["lambda0"] = rep.lambda0;
    rr.report["kappa1"] = rep.kappa1;
    rr.report["kappa2"] = rep.kappa2;
    rr.report["kappa2_matrix"] = rep.kappa2_matrix;
    if (rep.has_real_unstable_vector) {
        rr.report["unstable_eigenvector"] = std::vector<double>(
            rep.unstable_eigenvector.data(),
            rep.unstable_eigenvector.data() + rep.unstable_eigenvector.size());
    } else {
        rr.report["unstable_eigenvector"] = nullptr;
    }
    if (rep.lambda0 > 0.0) {
        rr.report["nu_min"] = nu_threshold(c.alpha, rep.kappa1, rep.kappa2, rep.lambda0);
        rr.report["xi1_factor"] = 1.0 / rep.lambda0;
    }
    rr.report["definitions"] = {
        {"kappa1", "c_alpha max_i sum_{j != i} |a_j| / |z_i - z_j|^(alpha+1)"},
        {"kappa2", "largest singular value of Df(Z*)"},
        {"kappa2_matrix", "kappa2 / c_alpha (entry matrix without the kernel prefactor)"},
        {"xi1_factor", "coefficient of (1-beta) in the smallest escape-time factor"}};
    return rr;
}

RunResult run_bounds(const ExperimentConfig& c) {
    RunResult rr;
    rr.report["experiment"] = "bounds";
    rr.report["config"] = c.to_json();
    rr.report["version"] = kVersion;
    if (c.curve) {
        const std::vector<double> grid =
            parse_alpha_grid(c.alpha_grid.empty() ? "1.0:1.95:0.05" : c.alpha_grid);
        const std::vector<NuCurvePoint> curve = nu_curve(c.n, grid);
        std::string csv = "alpha,nu_min,lambda0,kappa1,kappa2,complex_dominant\n";
        bool all_below_4 = true;
        for (const auto& pt : curve) {
            csv += csv_row({pt.alpha, pt.nu_min, pt.lambda0, pt.kappa1, pt.kappa2,
                            pt.complex_dominant ? 1.0 : 0.0});
            all_below_4 = all_below_4 && pt.nu_min < 4.0;
        }
        fs::path out = fs::path(c.out_dir) / "bounds_curve.csv";
        write_text_file(out, csv, rr.files_written);
        rr.report["curve_file"] = out.string();
        rr.report["points"] = curve.size();
        rr.report["all_nu_below_4"] = all_below_4;
        rr.report["max_nu_min"] =
            std::max_element(curve.begin(), curve.end(), [](const auto& a, const auto& b) {
                return a.nu_min < b.nu_min;
            })->nu_min;
    } else {
        const auto pts = nu_curve(c.n, {c.alpha});
        const NuCurvePoint& pt = pts.front();
        rr.report["nu_min"] = pt.nu_min;
        rr.report["lambda0"] = pt.lambda0;
        rr.report["kappa1"] = pt.kappa1;
        rr.report["kappa2"] = pt.kappa2;
        rr.report["xi1_factor"] = 1.0 / pt.lambda0;
        if (c.nu > 2.0 && c.nu < phi_exponent(0.0, pt.kappa1, pt.kappa2, pt.lambda0)) {
            rr.report["beta0"] = beta_threshold(c.nu, pt.kappa1, pt.kappa2, pt.lambda0);
        } else {
            rr.report["beta0"] = nullptr;
        }
        rr.report["complex_dominant"] = pt.complex_dominant;
    }
    rr.report["definitions"] = {
        {"nu_min", "(2/(5-alpha))((1+alpha)(kappa1+kappa2)/lambda0 + 4-2alpha)"},
        {"beta0", "solution of phi(beta) = nu, phi(beta) = 2(kappa1+kappa2)/lambda0 (1-beta) + 2 beta"},
        {"xi1_factor", "1/lambda0"}};
    return rr;
}

RunResult run_escape(const ExperimentConfig& c) {
    const CrystalSpec spec{c.n, AlphaModel(c.alpha)};
    EscapeSettings es;
    es.ode = settings_from_config(c);
    es.ode.threads = 1;
    const EscapeResult res = escape_experiment(spec.model, spec, c.epsilon, c.beta, es);

    RunResult rr;
    rr.report["experiment"] = "escape";
    rr.report["config"] = c.to_json();
    rr.report["version"] = kVersion;
    rr.report["epsilon"] = res.epsilon;
    rr.report["beta"] = res.beta;
    rr.report["tau_z"] = res.tau_z;
    rr.report["fitted_rate"] = res.fitted_rate;
    rr.report["lambda0"] = res.lambda0;
    rr.report["prediction"] = res.prediction;
    rr.report["prediction_linear"] = res.prediction_linear;
    rr.report["fit_window"] = {res.fit_lo, res.fit_hi};
    rr.report["hamiltonian_drift"] = res.trajectory.hamiltonian_drift;
    rr.report["momentum_drift"] = res.trajectory.momentum_drift;
    rr.report["steps_accepted"] = res.trajectory.steps_accepted;
    rr.report["definitions"] = {
        {"tau_z", "first time |Z(t)-Z*|_inf = 2 eps^beta from |Z0-Z*|_inf = eps/2"},
        {"prediction", "(1-beta)/lambda0 |ln eps| (asymptotic)"},
        {"prediction_linear", "(ln 4 + (1-beta)|ln eps|)/lambda0 (finite-eps linear theory)"},
        {"fitted_rate", "least-squares slope of ln|Z-Z*|_inf over the fit window"}};

    std::string csv = "time";
    for (int i = 0; i < c.n; ++i) {
        csv += ",p" + std::to_string(i + 1) + ",q" + std::to_string(i + 1);
    }
    csv += '\n';
    for (std::size_t k = 0; k < res.solution.times.size(); ++k) {
        std::vector<double> row{res.solution.times[k]};
        row.insert(row.end(), res.solution.states[k].begin(), res.solution.states[k].end());
        csv += csv_row(row);
    }
    fs::path out = fs::path(c.out_dir) / "escape_trajectory.csv";
    write_text_file(out, csv, rr.files_written);
    rr.report["trajectory_file"] = out.string();
    return rr;
}

RunResult run_blob(const ExperimentConfig& c) {
    ConfinementParams params;
    params.n = c.n;
    params.alpha = c.alpha;
    params.epsilon = c.epsilon;
    params.nu = c.nu;
    params.beta = c.beta;
    params.markers = c.markers;
    params.ode = settings_from_config(c);
    params.t_end = c.t_end;
    const ConfinementResult res = confinement_experiment(params);

    RunResult rr;
    rr.report["experiment"] = "blob";
    rr.report["config"] = c.to_json();
    rr.report["version"] = kVersion;
    rr.report["completed"] = res.completed;
    rr.report["kappa1"] = res.kappa1;
    rr.report["lambda0"] = res.lambda0;
    rr.report["oracle_tau_z"] = res.oracle.tau_z;
    if (res.diag.exit_time) {
        rr.report["exit_time"] = *res.diag.exit_time;
    } else {
        rr.report["exit_time"] = nullptr;
    }
    rr.report["floor_activations"] = res.cloud.floor_activations;
    rr.report["momentum_drift"] = res.cloud.momentum_drift;
    rr.report["hamiltonian_drift"] = res.cloud.hamiltonian_drift;
    rr.report["steps_accepted"] = res.cloud.steps_accepted;

    const int nb = res.z_star.size();
    double max_gap = 0.0;
    for (double g : res.oracle_gap) max_gap = std::max(max_gap, g);
    rr.report["max_barycenter_gap"] = max_gap;
    ordered_json inertia0 = ordered_json::array();
    for (int b = 0; b < nb; ++b) inertia0.push_back(res.diag.inertia[b].front());
    rr.report["initial_inertia"] = inertia0;
    rr.report["expected_initial_inertia"] = std::pow(c.epsilon, c.nu) / 32.0;
    rr.report["definitions"] = {
        {"exit_time", "first time a marker leaves D(z_i*, eps^beta)"},
        {"initial_inertia", "per blob: mean |x - B|^2 over markers"},
        {"max_barycenter_gap", "max over time of sup_i |B_i(t) - Z_i(t)|"}};

    std::string csv = "time";
    for (int b = 0; b < nb; ++b) {
        const std::string s = std::to_string(b + 1);
        csv += ",bx" + s + ",by" + s + ",inertia" + s + ",support" + s;
    }
    csv += ",oracle_gap\n";
    for (std::size_t k = 0; k < res.diag.times.size(); ++k) {
        std::vector<double> row{res.diag.times[k]};
        for (int b = 0; b < nb; ++b) {
            row.push_back(res.diag.barycenter[b][k].x);
            row.push_back(res.diag.barycenter[b][k].y);
            row.push_back(res.diag.inertia[b][k]);
            row.push_back(res.diag.support_radius[b][k]);
        }
        row.push_back(res.oracle_gap[k]);
        csv += csv_row(row);
    }
    fs::path out = fs::path(c.out_dir) / "blob_diagnostics.csv";
    write_text_file(out, csv, rr.files_written);
    rr.report["diagnostics_file"] = out.string();

    if (c.dump_markers) {
        std::string mcsv = "snapshot,time,marker,blob,x,y\n";
        for (std::size_t s = 0; s < res.cloud.snapshots.size(); ++s) {
            for (int m = 0; m < res.cloud.initial.markers(); ++m) {
                mcsv += std::to_string(s) + ',' + format_g17(res.cloud.times[s]) + ',' +
                        std::to_string(m) + ',' +
                        std::to_string(res.cloud.initial.blob_of(m)) + ',' +
                        format_g17(res.cloud.snapshots[s][m].x) + ',' +
                        format_g17(res.cloud.snapshots[s][m].y) + '\n';
            }
        }
        fs::path mout = fs::path(c.out_dir) / "blob_markers.csv";
        write_text_file(mout, mcsv, rr.files_written);
        rr.report["markers_file"] = mout.string();
    }
    return rr;
}

RunResult run_domain(const ExperimentConfig& c) {
    const HexDomain domain(c.delta);
    const TaylorData& taylor = domain.taylor();
    const DomainThresholds th = domain_thresholds(taylor.t1_abs, taylor.t3_abs, 1.0);

    RunResult rr;
    rr.report["experiment"] = "domain";
    rr.report["config"] = c.to_json();
    rr.report["version"] = kVersion;
    rr.report["taylor"] = {{"s1_abs", std::abs(taylor.s1)},
                           {"s2_abs", std::abs(taylor.s2)},
                           {"s3_abs", std::abs(taylor.s3)},
                           {"t1_abs", taylor.t1_abs},
                           {"t3_abs", taylor.t3_abs},
                           {"six_delta_minus_two", 6.0 * c.delta - 2.0}};
    rr.report["thresholds"] = {{"saddle", th.saddle},
                               {"lambda_plus", th.lambda_plus},
                               {"lambda_minus", th.lambda_minus},
                               {"lambda0", th.lambda0},
                               {"nu_min", th.saddle ? ordered_json(th.nu_min) : nullptr},
                               {"c0", saddle_ratio_c0()},
                               {"ratio_t3_over_t1_cubed",
                                taylor.t3_abs / std::pow(taylor.t1_abs, 3.0)}};
    rr.report["definitions"] = {
        {"saddle", "|T'''(0)| > 2 |T'(0)|^3"},
        {"lambda0", "|a| sqrt(|T'''|^2 - 4|T'|^6) / (4 pi |T'|)"},
        {"c0", "(15 + 9 sqrt(65))/28; ratio above c0 gives nu_min < 4"}};

    std::string bcsv = "x,y\n";
    for (const Vec2& p : domain.boundary()) {
        bcsv += csv_row({p.x, p.y});
    }
    fs::path bout = fs::path(c.out_dir) / "domain_boundary.csv";
    write_text_file(bout, bcsv, rr.files_written);
    rr.report["boundary_file"] = bout.string();

    std::string rcsv = "wx,wy,gamma_tilde,conformal_radius\n";
    constexpr int kNr = 24, kNt = 72;
    for (int i = 0; i < kNr; ++i) {
        const double r = (i + 0.5) / kNr * 0.995;
        for (int j = 0; j < kNt; ++j) {
            const double theta = 2.0 * M_PI * j / kNt;
            const Complex w = std::polar(r, theta);
            const RobinData rd = domain.robin_data(w);
            rcsv += csv_row({w.real(), w.imag(), rd.gamma_tilde, rd.conformal_radius});
        }
    }
    fs::path rout = fs::path(c.out_dir) / "domain_robin.csv";
    write_text_file(rout, rcsv, rr.files_written);
    rr.report["robin_file"] = rout.string();

    if (c.svg) {
        fs::path dsvg = fs::path(c.out_dir) / "domain_boundary.svg";
        write_text_file(dsvg, svg_curve(domain.boundary(), "#1f4e8c"), rr.files_written);
        fs::path rsvg = fs::path(c.out_dir) / "domain_robin.svg";
        write_text_file(rsvg, svg_disk_heatmap(domain, 36, 108), rr.files_written);
        rr.report["figures"] = {dsvg.string(), rsvg.string()};
    }
    return rr;
}

RunResult run_verify(const ExperimentConfig& c) {
    AcceptanceOptions opts;
    opts.threads = c.threads;
    if (c.time_budget > 0.0) opts.blob_wall_budget = c.time_budget;
    opts.scratch_dir = c.out_dir;
    const std::vector<CriterionResult> results = run_acceptance(0, opts);

    RunResult rr;
    rr.report["experiment"] = "verify";
    rr.report["config"] = c.to_json();
    rr.report["version"] = kVersion;
    bool all = true;
    ordered_json arr = ordered_json::array();
    for (const CriterionResult& r : results) {
        all = all && r.passed;
        arr.push_back({{"id", r.id},
                       {"title", r.title},
                       {"passed", r.passed},
                       {"seconds", r.seconds},
                       {"detail", r.lines}});
    }
    rr.report["criteria"] = arr;
    rr.report["passed"] = all;
    return rr;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    static const std::vector<std::string> known{
        "experiment", "n",       "alpha",   "delta",        "epsilon",   "beta",
        "nu",         "markers", "curve",   "alpha_grid",   "svg",       "dump_markers",
        "rel_tol",    "abs_tol", "t_end",   "time_budget",  "threads",   "out_dir"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            throw ConfigError("unknown config key '" + it.key() + "'");
        }
    }
    const auto get = [&j](const char* key, auto fallback) {
        using T = decltype(fallback);
        if (!j.contains(key)) return fallback;
        try {
            return j.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(std::string("config key '") + key + "' has the wrong type");
        }
    };
    c.experiment = get("experiment", std::string{});
    c.n = get("n", c.n);
    c.alpha = get("alpha", c.alpha);
    c.delta = get("delta", c.delta);
    c.epsilon = get("epsilon", c.epsilon);
    c.beta = get("beta", c.beta);
    c.nu = get("nu", c.nu);
    c.markers = get("markers", c.markers);
    c.curve = get("curve", c.curve);
    c.alpha_grid = get("alpha_grid", c.alpha_grid);
    c.svg = get("svg", c.svg);
    c.dump_markers = get("dump_markers", c.dump_markers);
    c.rel_tol = get("rel_tol", c.rel_tol);
    c.abs_tol = get("abs_tol", c.abs_tol);
    c.t_end = get("t_end", c.t_end);
    c.time_budget = get("time_budget", c.time_budget);
    c.threads = get("threads", c.threads);
    c.out_dir = get("out_dir", c.out_dir);
    c.validate();
    return c;
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> experiments{"crystal", "spectrum", "bounds",
                                                      "escape",  "blob",     "domain",
                                                      "verify"};
    if (std::find(experiments.begin(), experiments.end(), experiment) == experiments.end()) {
        throw ConfigError("unknown experiment '" + experiment + "'");
    }
    if (!(alpha >= 1.0 && alpha < 2.0)) throw ConfigError("alpha must lie in [1,2)");
    if (n < 3) throw ConfigError("n must be >= 3");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0,1)");
    if (!(nu >= 2.0)) throw ConfigError("nu must be >= 2");
    if (markers < 1) throw ConfigError("markers must be >= 1");
    if (!(rel_tol > 0.0 && abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
    if (threads < 1) throw ConfigError("threads must be >= 1");
}

ordered_json ExperimentConfig::to_json() const {
    ordered_json j;
    j["experiment"] = experiment;
    j["n"] = n;
    j["alpha"] = alpha;
    j["delta"] = delta;
    j["epsilon"] = epsilon;
    j["beta"] = beta;
    j["nu"] = nu;
    j["markers"] = markers;
    j["curve"] = curve;
    j["alpha_grid"] = alpha_grid;
    j["svg"] = svg;
    j["dump_markers"] = dump_markers;
    j["rel_tol"] = rel_tol;
    j["abs_tol"] = abs_tol;
    j["t_end"] = t_end;
    j["time_budget"] = time_budget;
    j["threads"] = threads;
    j["out_dir"] = out_dir;
    return j;
}

RunResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    fs::create_directories(config.out_dir);
    RunResult rr;
    if (config.experiment == "crystal") {
        rr = run_crystal(config);
    } else if (config.experiment == "spectrum") {
        rr = run_spectrum(config);
    } else if (config.experiment == "bounds") {
        rr = run_bounds(config);
    } else if (config.experiment == "escape") {
        rr = run_escape(config);
    } else if (config.experiment == "blob") {
        rr = run_blob(config);
    } else if (config.experiment == "domain") {
        rr = run_domain(config);
    } else if (config.experiment == "verify") {
        rr = run_verify(config);
    } else {
        throw ConfigError("unknown experiment '" + config.experiment + "'");
    }
    const fs::path report_path =
        fs::path(config.out_dir) / (config.experiment + "_report.json");
    write_text_file(report_path, rr.report.dump(2) + "\n", rr.files_written);
    return rr;
}

} // namespace vortexlab
