// acceptance.cpp
#include "vortexlab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "vortexlab/blob_lab.hpp"
#include "vortexlab/bounds.hpp"
#include "vortexlab/conformal_domain.hpp"
#include "vortexlab/crystal.hpp"
#include "vortexlab/linearization.hpp"
#include "vortexlab/ode_engine.hpp"
#include "vortexlab/report.hpp"

namespace vortexlab {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
    std::vector<std::string> lines;
    bool ok = true;

    void require(bool cond, const std::string& text) {
        lines.push_back(std::string(cond ? "  ok   " : "  FAIL ") + text);
        ok = ok && cond;
    }
    void note(const std::string& text) { lines.push_back("  note " + text); }
};

std::string num(double v, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

// Greedy nearest matching of a computed eigenvalue multiset against an
// expected one.
double multiset_distance(std::vector<std::complex<double>> computed,
                         const std::vector<std::complex<double>>& expected) {
    double worst = 0.0;
    for (const auto& e : expected) {
        std::size_t best = 0;
        double best_dist = 1e300;
        for (std::size_t i = 0; i < computed.size(); ++i) {
            const double d = std::abs(computed[i] - e);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        worst = std::max(worst, best_dist);
        computed.erase(computed.begin() + best);
    }
    return worst;
}

const std::vector<double> kAlphaGrid5 = {1.0, 1.25, 1.5, 1.75, 1.99};

// --- criterion 1 -----------------------------------------------------------
CriterionResult criterion1() {
    CriterionResult r{1, "crystal stationarity, N = 3..12, five alphas"};
    const auto start = Clock::now();
    Check c;
    double worst = 0.0;
    for (int n = 3; n <= 12; ++n) {
        for (double alpha : kAlphaGrid5) {
            const CrystalSpec spec{n, AlphaModel(alpha)};
            worst = std::max(worst, stationarity_residual(spec.model, build_crystal(spec)));
        }
    }
    c.require(worst < 1e-12, "max ||f(Z*)||_inf over the grid = " + num(worst, 3) +
                                 " < 1e-12");
    r.seconds = seconds_since(start);
    c.require(r.seconds < 1.0, "runtime " + num(r.seconds, 3) + " s < 1 s");
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

// --- criterion 2 -----------------------------------------------------------
CriterionResult criterion2() {
    CriterionResult r{2, "N=3 spectrum and eigenvector across the alpha grid"};
    const auto start = Clock::now();
    Check c;
    double worst_eig = 0.0, worst_vec = 0.0, worst_res = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double alpha = 1.0 + 0.05 * k;
        const CrystalSpec spec{3, AlphaModel(alpha)};
        const Configuration z = build_crystal(spec);
        const Eigen::MatrixXd df = jacobian_analytic(spec.model, z);
        const SpectralReport rep = spectrum(df, spec.model, z);
        const double lam = n3_lambda0(alpha);

        std::vector<std::complex<double>> computed(rep.eigenvalues.data(),
                                                   rep.eigenvalues.data() + 6);
        const std::vector<std::complex<double>> expected{{-lam, 0}, {0, 0}, {0, 0},
                                                         {0, 0},    {0, 0}, {lam, 0}};
        worst_eig = std::max(worst_eig, multiset_distance(computed, expected));

        // Paper eigenvector, unit sup-norm, first nonzero coordinate positive.
        const double ra = std::sqrt(alpha);
        const double p2 = std::pow(2.0, alpha + 1.0);
        Eigen::VectorXd v(6);
        v << -1.0, ra, -1.0, ra, -p2, ra * p2;
        worst_res = std::max(worst_res, (df * v - lam * v).cwiseAbs().maxCoeff() /
                                            v.cwiseAbs().maxCoeff());
        v /= v.cwiseAbs().maxCoeff();
        if (v[0] < 0.0) v = -v;
        worst_vec =
            std::max(worst_vec, (v - rep.unstable_eigenvector).cwiseAbs().maxCoeff());
    }
    c.require(worst_eig < 1e-10,
              "eigenvalue multiset error " + num(worst_eig, 3) + " < 1e-10");
    c.require(worst_res < 1e-9,
              "paper-eigenvector residual ||Df v - lambda0 v||/||v|| = " +
                  num(worst_res, 3) + " < 1e-9");
    c.require(worst_vec < 1e-8,
              "computed eigenvector parallel to closed form, sup diff " +
                  num(worst_vec, 3));
    r.seconds = seconds_since(start);
    c.require(r.seconds < 1.0, "runtime " + num(r.seconds, 3) + " s < 1 s");
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

// --- criterion 3 -----------------------------------------------------------
CriterionResult criterion3() {
    CriterionResult r{3, "N=7 alpha=1 spectrum and entry-matrix norm"};
    const auto start = Clock::now();
    Check c;
    const CrystalSpec spec{7, AlphaModel(1.0)};
    const Configuration z = build_crystal(spec);
    const Eigen::MatrixXd df = jacobian_analytic(spec.model, z);
    const SpectralReport rep = spectrum(df, spec.model, z);

    const double pi = M_PI;
    const double s35 = std::sqrt(35.0) / (4.0 * pi);
    std::vector<std::complex<double>> expected{
        {9.0 / (4 * pi), 0}, {-9.0 / (4 * pi), 0}, {2.0 / pi, 0}, {2.0 / pi, 0},
        {-2.0 / pi, 0},      {-2.0 / pi, 0},       {0, s35},      {0, s35},
        {0, -s35},           {0, -s35},            {0, 0},        {0, 0},
        {0, 0},              {0, 0}};
    std::vector<std::complex<double>> computed(rep.eigenvalues.data(),
                                               rep.eigenvalues.data() + 14);
    const double dist = multiset_distance(computed, expected);
    c.require(dist < 1e-8, "eigenvalue multiset error " + num(dist, 3) + " < 1e-8");

    const double matrix_norm = rep.kappa2_matrix;
    const double expected_norm = 2.5 * std::sqrt(7.0);
    c.require(std::abs(matrix_norm - expected_norm) < 1e-8,
              "spectral norm of Df/c_alpha = " + num(matrix_norm, 12) + " vs 5 sqrt(7)/2 = " +
                  num(expected_norm, 12));
    c.note("kappa2 conventions: sigma_max(Df) = " + num(rep.kappa2, 12) +
           " = 5 sqrt(7)/(4 pi); the entry matrix without the 1/(2 pi) prefactor has norm "
           "5 sqrt(7)/2. The concentration bound (12+5 sqrt(7))/9 + 1 is consistent only "
           "with the prefactored value, which this library reports as kappa2.");
    r.seconds = seconds_since(start);
    c.require(r.seconds < 1.0, "runtime " + num(r.seconds, 3) + " s < 1 s");
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

// --- criterion 4 -----------------------------------------------------------
CriterionResult criterion4() {
    CriterionResult r{4, "concentration thresholds: g(1) > 4, N=7 value, N=9 curve"};
    const auto start = Clock::now();
    Check c;

    const double g1 = n3_nu_bound(1.0);
    c.require(g1 > 4.0, "g(1) = " + num(g1, 10) + " > 4");
    const auto pipeline3 = nu_curve(3, {1.0});
    c.require(std::abs(pipeline3.front().nu_min - g1) < 1e-10,
              "pipeline value matches closed form at N=3, alpha=1 (diff " +
                  num(std::abs(pipeline3.front().nu_min - g1), 3) + ")");

    const auto pipeline7 = nu_curve(7, {1.0});
    const double expected7 = (12.0 + 5.0 * std::sqrt(7.0)) / 9.0 + 1.0;
    c.require(std::abs(pipeline7.front().nu_min - expected7) < 1e-10,
              "N=7 alpha=1 threshold " + num(pipeline7.front().nu_min, 12) + " = (12+5 sqrt(7))/9 + 1 (diff " +
                  num(std::abs(pipeline7.front().nu_min - expected7), 3) + ")");
    c.require(expected7 < 4.0, "N=7 threshold " + num(expected7, 10) + " < 4");

    std::vector<double> grid;
    for (int k = 0; k <= 19; ++k) grid.push_back(1.0 + 0.05 * k);
    const auto curve9 = nu_curve(9, grid);
    double worst = 0.0;
    bool complex_flag = false;
    for (const auto& pt : curve9) {
        worst = std::max(worst, pt.nu_min);
        complex_flag = complex_flag || pt.complex_dominant;
    }
    c.require(worst < 4.0, "N=9 curve max nu_min = " + num(worst, 10) + " < 4 on the grid");
    c.require(!complex_flag, "dominant eigenvalue real at every grid point");
    r.seconds = seconds_since(start);
    c.require(r.seconds < 10.0, "runtime " + num(r.seconds, 3) + " s < 10 s");
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

// --- criterion 5 -----------------------------------------------------------
CriterionResult criterion5() {
    CriterionResult r{5, "escape law at N=3, alpha=1, beta=0.75"};
    const auto start = Clock::now();
    Check c;
    const CrystalSpec spec{3, AlphaModel(1.0)};
    const double lambda0 = n3_lambda0(1.0);
    EscapeSettings es;
    es.ode.rel_tol = 1e-11;
    es.ode.abs_tol = 1e-13;

    const EscapeResult run4 = escape_experiment(spec.model, spec, 1e-4, 0.75, es);
    const double rate_err = std::abs(run4.fitted_rate - lambda0) / lambda0;
    c.require(rate_err <= 0.05, "fitted rate " + num(run4.fitted_rate, 9) + " within 5% of 3/(4 pi) = " +
                                    num(lambda0, 9) + " (rel err " + num(rate_err, 3) + ")");

    const EscapeResult run5 = escape_experiment(spec.model, spec, 1e-5, 0.75, es);
    const double ratio = run5.tau_z / std::abs(std::log(1e-5));
    const double target = (1.0 - 0.75) / lambda0;
    const double ratio_err = std::abs(ratio - target) / target;
    c.require(ratio_err <= 0.10,
              "tau_Z/|ln eps| = " + num(ratio, 6) + " vs (1-beta)/lambda0 = " + num(target, 6) +
                  " (rel err " + num(ratio_err, 3) + ", tolerance 0.10)");
    if (ratio_err > 0.10) {
        c.note("tau_Z = " + num(run5.tau_z, 6) + " matches finite-eps linear theory (ln 4 + "
               "(1-beta)|ln eps|)/lambda0 = " + num(run5.prediction_linear, 6) +
               "; the |ln eps|-normalized limit converges like ln4/|ln eps| and needs "
               "eps < 1e-24 to land within 10%, below double-precision reach.");
    }

    const EscapeResult run5b = escape_experiment(spec.model, spec, 0.5e-5, 0.75, es);
    const double diff = run5b.tau_z - run5.tau_z;
    const double diff_target = (1.0 - 0.75) * std::log(2.0) / lambda0;
    const double diff_err = std::abs(diff - diff_target) / diff_target;
    c.require(diff_err <= 0.10,
              "tau_Z(eps/2) - tau_Z(eps) = " + num(diff, 6) + " vs (1-beta) ln2/lambda0 = " +
                  num(diff_target, 6) + " (rel err " + num(diff_err, 3) + ")");

    c.require(run4.trajectory.hamiltonian_drift < 1e-8,
              "Hamiltonian drift " + num(run4.trajectory.hamiltonian_drift, 3) + " < 1e-8");
    c.require(run4.trajectory.momentum_drift < 1e-8,
              "momentum drift " + num(run4.trajectory.momentum_drift, 3) + " < 1e-8");

    r.seconds = seconds_since(start);
    c.require(r.seconds < 30.0, "runtime " + num(r.seconds, 3) + " s < 30 s");
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

// --- criterion 6 -----------------------------------------------------------
CriterionResult criterion6() {
    CriterionResult r{6, "analytic Jacobian vs finite differences, 50 random configurations"};
    const auto start = Clock::now();
    Check c;
    std::mt19937 rng(20240815u);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> strength(0.5, 2.0);
    std::uniform_int_distribution<int> nn(2, 8);
    const double alphas[3] = {1.0, 1.4, 1.9};
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const AlphaModel model(alphas[trial % 3]);
        Configuration z;
        const int n = nn(rng);
        while (z.size() < n) {
            const Vec2 p{coord(rng), coord(rng)};
            bool far = true;
            for (const auto& v : z.vortices) {
                far = far && norm(v.position - p) > 0.3;
            }
            if (far) {
                const double sign = (rng() & 1u) ? 1.0 : -1.0;
                z.vortices.push_back({p, sign * strength(rng)});
            }
        }
        const Eigen::MatrixXd analytic = jacobian_analytic(model, z);
        const Eigen::MatrixXd fd = jacobian_fd(model, z, 1e-6 * z.min_pair_distance());
        const double err =
            (analytic - fd).cwiseAbs().maxCoeff() / analytic.cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
    }
    c.require(worst < 1e-6, "max relative entry error over 50 configurations = " +
                                num(worst, 3) + " < 1e-6");
    r.seconds = seconds_since(start);
    c.require(r.seconds < 5.0, "runtime " + num(r.seconds, 3) + " s < 5 s");
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

// --- criterion 7 -----------------------------------------------------------
CriterionResult criterion7(const AcceptanceOptions& options) {
    CriterionResult r{7, "blob confinement at eps=0.05, nu=4, beta=0.75, M=200"};
    const auto start = Clock::now();
    Check c;

    ConfinementParams pinned;
    pinned.n = 3;
    pinned.alpha = 1.0;
    pinned.epsilon = 0.05;
    pinned.nu = 4.0;
    pinned.beta = 0.75;
    pinned.markers = 200;
    pinned.ode.rel_tol = 1e-11;
    pinned.ode.abs_tol = 1e-13;
    pinned.ode.threads = options.threads;
    pinned.ode.wall_budget_seconds = options.blob_wall_budget;

    const ConfinementResult res = confinement_experiment(pinned);
    const double lambda0 = res.lambda0;
    const double bound_exit = 1.1 * (1.0 - pinned.beta) / lambda0 *
                              std::abs(std::log(pinned.epsilon));
    const double t_reached = res.diag.times.back();
    const double elapsed = seconds_since(start);

    c.note("pinned run: patch radius eps^2/4 = " + num(std::pow(0.05, 2.0) / 4.0, 4) +
           ", self-rotation rate a/(2 pi R^2) ~ 4.1e5 rad/time; horizon tau_Z = " +
           num(res.oracle.tau_z, 4) + " requires ~" +
           num(res.oracle.tau_z * 4.07e5 / 0.5 / 1e6, 3) +
           "e6 integrator steps of a 600-marker O(N^2) sum.");
    c.note("wall budget " + num(options.blob_wall_budget, 4) + " s reached t = " +
           num(t_reached, 6) + " of " + num(res.oracle.tau_z, 4) + " with " +
           num(static_cast<double>(res.cloud.steps_accepted), 7) + " steps (" +
           num(elapsed, 4) + " s); projected completion ~" +
           num(t_reached > 1e-9 ? elapsed * res.oracle.tau_z / t_reached : 1e9, 4) + " s.");

    if (res.completed && res.diag.exit_time) {
        // Full evaluation (only reachable with a very large wall budget).
        const double exit = *res.diag.exit_time;
        c.require(exit <= bound_exit, "measured exit time " + num(exit, 5) +
                                          " <= 1.1 (1-beta)/lambda0 |ln eps| = " +
                                          num(bound_exit, 5));
        bool inertia_ok = true;
        for (int b = 0; b < res.z_star.size(); ++b) {
            for (std::size_t s = 0; s < res.diag.times.size(); ++s) {
                if (res.diag.times[s] > exit) break;
                const double bound = res.diag.inertia[b].front() *
                                     std::exp(1.2 * 2.0 * res.kappa1 * res.diag.times[s]);
                inertia_ok = inertia_ok && res.diag.inertia[b][s] <= bound;
            }
        }
        c.require(inertia_ok, "I_i(t) <= I_i(0) exp(1.2 * 2 kappa1 t) up to exit");
        double max_gap = 0.0;
        for (std::size_t s = 0; s < res.oracle_gap.size(); ++s) {
            max_gap = std::max(max_gap, res.oracle_gap[s]);
        }
        const double gap_tol = std::pow(pinned.epsilon, pinned.beta) / 10.0;
        c.require(max_gap < gap_tol, "barycenter gap " + num(max_gap, 4) + " < eps^beta/10 = " +
                                         num(gap_tol, 4));
    } else {
        c.require(false,
                  "pinned run incomplete within the wall budget: the configuration is "
                  "computationally unattainable at the stated 5-minute runtime (the "
                  "eps^(nu/2)/4 patch spins ~2e5 revolutions over the exit horizon).");
        c.note("exit-time clause is also analytically unattainable at eps=0.05: support "
               "exit needs growth ln(eps^beta / (eps/2))/lambda0 = " +
               num(std::log(std::pow(0.05, 0.75) / 0.025) / lambda0, 4) +
               " > bound " + num(bound_exit, 4) +
               "; the asymptotic bound drops the ln-offset, which dominates at |ln eps| = 3.");
    }

    // Reduced-stiffness diagnostic (not an acceptance substitute): same code
    // paths at nu=2, M=100, where the run completes; demonstrates the inertia
    // bound, the barycenter tracking, and the exact invariants.
    ConfinementParams diag_params = pinned;
    diag_params.nu = 2.0;
    diag_params.markers = 100;
    diag_params.ode.rel_tol = 1e-9;
    diag_params.ode.abs_tol = 1e-12;
    diag_params.ode.wall_budget_seconds = 0.0;
    const ConfinementResult dres = confinement_experiment(diag_params);
    const double dexit = dres.diag.exit_time ? *dres.diag.exit_time : -1.0;
    bool inertia_ok = true;
    double worst_margin = 0.0;
    for (int b = 0; b < dres.z_star.size(); ++b) {
        for (std::size_t s = 0; s < dres.diag.times.size(); ++s) {
            if (dexit > 0.0 && dres.diag.times[s] > dexit) break;
            const double bound = dres.diag.inertia[b].front() *
                                 std::exp(1.2 * 2.0 * dres.kappa1 * dres.diag.times[s]);
            inertia_ok = inertia_ok && dres.diag.inertia[b][s] <= bound;
            worst_margin = std::max(worst_margin, dres.diag.inertia[b][s] / bound);
        }
    }
    double max_gap = 0.0;
    for (double g : dres.oracle_gap) max_gap = std::max(max_gap, g);
    const double gap_tol = std::pow(diag_params.epsilon, diag_params.beta) / 10.0;
    c.note("diagnostic nu=2 M=100 run (completes in " + num(seconds_since(start) - elapsed, 4) +
           " s): exit_time = " + num(dexit, 5) + ", inertia bound " +
           (inertia_ok ? "holds" : "VIOLATED") + " (worst ratio " + num(worst_margin, 3) +
           "), barycenter gap " + num(max_gap, 4) + " vs eps^beta/10 = " + num(gap_tol, 4) +
           ", momentum drift " + num(dres.cloud.momentum_drift, 3) + ".");

    r.seconds = seconds_since(start);
    c.require(r.seconds < 300.0, "runtime " + num(r.seconds, 3) + " s < 5 min");
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

// --- criterion 8 -----------------------------------------------------------
CriterionResult criterion8() {
    CriterionResult r{8, "hexagonal-domain Taylor data at four deltas"};
    const auto start = Clock::now();
    Check c;
    for (double delta : {0.5, 2.0 / 3.0, 0.75, 0.9}) {
        const HexDomain domain(delta);
        const TaylorData& t = domain.taylor();
        const double e1 = std::abs(std::abs(t.s1) - 1.0);
        const double e2 = std::abs(t.s2);
        const double e3 = std::abs(std::abs(t.s3) - (6.0 * delta - 2.0));
        c.require(e1 < 1e-8 && e2 < 1e-8 && e3 < 1e-8,
                  "delta = " + num(delta, 6) + ": |S'(0)|-1 = " + num(e1, 3) +
                      ", |S''(0)| = " + num(e2, 3) + ", ||S'''(0)|-(6d-2)| = " + num(e3, 3));
    }
    r.seconds = seconds_since(start);
    c.require(r.seconds < 5.0, "runtime " + num(r.seconds, 3) + " s < 5 s");
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

// --- criterion 9 -----------------------------------------------------------
CriterionResult criterion9() {
    CriterionResult r{9, "single-vortex domain instability at delta=0.9, stability at 2/5"};
    const auto start = Clock::now();
    Check c;

    const HexDomain unstable(0.9);
    const double lambda0_formula = std::sqrt(12.0 * 0.9 * (3.0 * 0.9 - 2.0)) / (4.0 * M_PI);

    // Numerical 2x2 Jacobian of the vortex velocity at 0.
    const double fd_step = 1e-5;
    Eigen::Matrix2d jac;
    for (int col = 0; col < 2; ++col) {
        Complex zp(col == 0 ? fd_step : 0.0, col == 1 ? fd_step : 0.0);
        const Vec2 vp = unstable.vortex_rhs(1.0, zp);
        const Vec2 vm = unstable.vortex_rhs(1.0, -zp);
        jac(0, col) = (vp.x - vm.x) / (2.0 * fd_step);
        jac(1, col) = (vp.y - vm.y) / (2.0 * fd_step);
    }
    const Eigen::EigenSolver<Eigen::Matrix2d> solver(jac);
    int unstable_index = 0;
    for (int k = 0; k < 2; ++k) {
        if (solver.eigenvalues()[k].real() > solver.eigenvalues()[unstable_index].real()) {
            unstable_index = k;
        }
    }
    const double lambda0_num = solver.eigenvalues()[unstable_index].real();
    c.note("numerical lambda0 from the rhs Jacobian: " + num(lambda0_num, 8) +
           " vs closed form " + num(lambda0_formula, 8));
    const Eigen::Vector2d dir = solver.eigenvectors().col(unstable_index).real();

    const double epsilon = 1e-3, beta = 0.7;
    EscapeSettings es;
    es.ode.rel_tol = 1e-11;
    es.ode.abs_tol = 1e-14;
    const RhsFn rhs = [&unstable](double, std::span<const double> y, std::span<double> dydt) {
        const Vec2 v = unstable.vortex_rhs(1.0, Complex(y[0], y[1]));
        dydt[0] = v.x;
        dydt[1] = v.y;
    };
    const std::vector<double> z_star{0.0, 0.0};
    const std::vector<double> direction{dir[0], dir[1]};
    const EscapeResult esc = escape_from_equilibrium(rhs, z_star, direction, lambda0_formula,
                                                     epsilon, beta, es);
    const double rate_err = std::abs(esc.fitted_rate - lambda0_formula) / lambda0_formula;
    c.require(rate_err <= 0.07,
              "delta=0.9 fitted escape rate " + num(esc.fitted_rate, 8) + " within 7% of " +
                  num(lambda0_formula, 8) + " (rel err " + num(rate_err, 4) + ")");

    // Robin-function conservation along the escape trajectory.
    double drift = 0.0;
    double gamma0 = 0.0;
    for (std::size_t s = 0; s < esc.solution.states.size(); ++s) {
        const Complex z(esc.solution.states[s][0], esc.solution.states[s][1]);
        const Complex w = unstable.inverse_map(z);
        const double gamma = unstable.robin_data(w).gamma_tilde;
        if (s == 0) {
            gamma0 = gamma;
        } else {
            drift = std::max(drift, std::abs(gamma - gamma0));
        }
    }
    const double drift_rel = drift / std::max(1.0, std::abs(gamma0));
    c.require(drift_rel < 1e-7, "Robin-level conservation drift " + num(drift_rel, 3) +
                                    " < 1e-7 over the escape run");

    // Stable case delta = 2/5: same protocol, same horizon, bounded orbit.
    const HexDomain stable(0.4);
    const double horizon = esc.tau_z;
    const RhsFn rhs_stable = [&stable](double, std::span<const double> y,
                                       std::span<double> dydt) {
        const Vec2 v = stable.vortex_rhs(1.0, Complex(y[0], y[1]));
        dydt[0] = v.x;
        dydt[1] = v.y;
    };
    IntegratorSettings ode;
    ode.rel_tol = 1e-11;
    ode.abs_tol = 1e-14;
    const std::vector<double> y0{0.5 * epsilon, 0.0};
    const OdeSolution orbit = integrate_ode(rhs_stable, y0, 0.0, horizon, ode);
    double max_radius = 0.0;
    for (const auto& state : orbit.states) {
        max_radius = std::max(max_radius, std::hypot(state[0], state[1]));
    }
    c.require(max_radius <= 2.0 * (0.5 * epsilon),
              "delta=2/5 orbit stays within 2x initial radius over the same horizon (max " +
                  num(max_radius / (0.5 * epsilon), 4) + "x)");

    r.seconds = seconds_since(start);
    c.require(r.seconds < 60.0, "runtime " + num(r.seconds, 3) + " s < 60 s");
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

// --- criterion 10 ----------------------------------------------------------
CriterionResult criterion10(const AcceptanceOptions& options) {
    CriterionResult r{10, "invariant suites and determinism"};
    const auto start = Clock::now();
    Check c;

    // Kernel antisymmetry and perpendicularity on random inputs.
    std::mt19937 rng(777u);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    double worst_anti = 0.0, worst_perp = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const AlphaModel model(1.0 + 0.99 * (trial % 100) / 100.0);
        const Vec2 x{coord(rng), coord(rng)};
        Vec2 y{coord(rng), coord(rng)};
        if (norm(x - y) < 1e-3) y.x += 1.0;
        const Vec2 k1 = kernel(model, x, y);
        const Vec2 k2 = kernel(model, y, x);
        worst_anti = std::max(worst_anti, norm(k1 + k2) / std::max(1e-300, norm(k1)));
        worst_perp = std::max(worst_perp, std::abs(dot(x - y, k1)) /
                                              (norm(k1) * norm(x - y)));
    }
    c.require(worst_anti < 1e-15, "kernel antisymmetry rel error " + num(worst_anti, 3));
    c.require(worst_perp < 1e-14, "kernel perpendicularity rel error " + num(worst_perp, 3));

    // Conservation on a criterion-5-class escape run.
    const CrystalSpec spec{3, AlphaModel(1.0)};
    EscapeSettings es;
    es.ode.rel_tol = 1e-11;
    es.ode.abs_tol = 1e-13;
    const EscapeResult esc = escape_experiment(spec.model, spec, 1e-4, 0.75, es);
    c.require(esc.trajectory.hamiltonian_drift < 1e-8,
              "escape-run Hamiltonian drift " + num(esc.trajectory.hamiltonian_drift, 3) +
                  " < 1e-8");
    c.require(esc.trajectory.momentum_drift < 1e-8,
              "escape-run momentum drift " + num(esc.trajectory.momentum_drift, 3) +
                  " < 1e-8");

    // Marker-cloud exact invariants on a completing configuration.
    ConfinementParams cp;
    cp.n = 3;
    cp.alpha = 1.0;
    cp.epsilon = 0.05;
    cp.nu = 2.0;
    cp.markers = 60;
    cp.t_end = 1.0;
    cp.ode.rel_tol = 1e-10;
    cp.ode.abs_tol = 1e-13;
    cp.ode.threads = options.threads;
    const ConfinementResult cloud = confinement_experiment(cp);
    c.require(cloud.cloud.momentum_drift < 1e-8,
              "marker-cloud momentum drift " + num(cloud.cloud.momentum_drift, 3) +
                  " < 1e-8 (exact invariant of the scheme)");
    c.note("marker-cloud Hamiltonian drift " + num(cloud.cloud.hamiltonian_drift, 3) +
           "; the cloud's exact conserved pair is (circulation, momentum) - the "
           "interaction energy is resolution-limited by the fast intra-patch rotation.");

    // Determinism: rerunning the identical config into the same directory
    // must reproduce every file byte for byte.
    const fs::path scratch = options.scratch_dir.empty()
                                 ? fs::temp_directory_path() / "vortexlab_determinism"
                                 : fs::path(options.scratch_dir) / "determinism";
    const auto run_into = [&scratch] {
        ExperimentConfig cfg;
        cfg.experiment = "spectrum";
        cfg.n = 7;
        cfg.alpha = 1.25;
        cfg.out_dir = (scratch / "run").string();
        run_experiment(cfg);
        ExperimentConfig esc_cfg;
        esc_cfg.experiment = "escape";
        esc_cfg.n = 3;
        esc_cfg.alpha = 1.0;
        esc_cfg.epsilon = 1e-3;
        esc_cfg.beta = 0.75;
        esc_cfg.out_dir = (scratch / "run").string();
        run_experiment(esc_cfg);
    };
    const auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream s;
        s << f.rdbuf();
        return s.str();
    };
    const char* names[] = {"spectrum_report.json", "escape_report.json",
                           "escape_trajectory.csv"};
    run_into();
    std::vector<std::string> first;
    for (const char* name : names) first.push_back(slurp(scratch / "run" / name));
    run_into();
    bool identical = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string again = slurp(scratch / "run" / names[i]);
        const bool same = !first[i].empty() && first[i] == again;
        identical = identical && same;
        if (!same) c.note(std::string("mismatch or missing: ") + names[i]);
    }
    c.require(identical, "byte-identical reruns (spectrum report, escape report and CSV)");

    r.seconds = seconds_since(start);
    r.lines = c.lines;
    r.passed = c.ok;
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(int only_id, const AcceptanceOptions& options) {
    std::vector<CriterionResult> results;
    const auto want = [&](int id) { return only_id == 0 || only_id == id; };
    if (want(1)) results.push_back(criterion1());
    if (want(2)) results.push_back(criterion2());
    if (want(3)) results.push_back(criterion3());
    if (want(4)) results.push_back(criterion4());
    if (want(5)) results.push_back(criterion5());
    if (want(6)) results.push_back(criterion6());
    if (want(7)) results.push_back(criterion7(options));
    if (want(8)) results.push_back(criterion8());
    if (want(9)) results.push_back(criterion9());
    if (want(10)) results.push_back(criterion10(options));
    return results;
}

} // namespace vortexlab
