// ode_engine.cpp
#include "vortexlab/ode_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "vortexlab/linearization.hpp"

namespace vortexlab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0, kC5 = 8.0 / 9.0;
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// Difference between the 5th-order solution and the embedded 4th-order one.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

struct StepWork {
    std::vector<double> y;       // state at step start
    std::vector<double> y_new;   // accepted state
    std::vector<double> stage;   // scratch for stage arguments
    std::vector<double> k1, k2, k3, k4, k5, k6, k7;
};

// Dense output of the 5(4) pair: y(t0 + theta h) = y0 + h sum_i b_i(theta) k_i.
void dense_eval(const StepWork& w, double h, double theta, std::span<double> out) {
    const double x1 = 5.0 * (2558722523.0 - 31403016.0 * theta) / 11282082432.0;
    const double x3 = 100.0 * (882725551.0 - 15701508.0 * theta) / 32700410799.0;
    const double x4 = 25.0 * (443332067.0 - 31403016.0 * theta) / 1880347072.0;
    const double x5 = 32805.0 * (23143187.0 - 3489224.0 * theta) / 199316789632.0;
    const double x6 = 55.0 * (29972135.0 - 7076736.0 * theta) / 822651844.0;
    const double x7 = 10.0 * (7414447.0 - 829305.0 * theta) / 29380423.0;
    const double tm1 = theta - 1.0;
    const double a = theta * theta * (3.0 - 2.0 * theta);
    const double b = theta * theta * tm1;
    const double c = theta * theta * tm1 * tm1;
    const double d = theta * tm1 * tm1;
    const double b1 = a * kB1 - c * x1 + d;
    const double b3 = a * kB3 + c * x3;
    const double b4 = a * kB4 - c * x4;
    const double b5 = a * kB5 + c * x5;
    const double b6 = a * kB6 - c * x6;
    const double b7 = b + c * x7;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = w.y[i] + h * (b1 * w.k1[i] + b3 * w.k3[i] + b4 * w.k4[i] + b5 * w.k5[i] +
                               b6 * w.k6[i] + b7 * w.k7[i]);
    }
}

double initial_step_guess(const RhsFn& rhs, std::span<const double> y0, double t0,
                          double t_end, const IntegratorSettings& s,
                          std::span<const double> f0, long& evals) {
    const std::size_t n = y0.size();
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = s.abs_tol + s.rel_tol * std::abs(y0[i]);
        d0 += (y0[i] / sc) * (y0[i] / sc);
        d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, std::abs(t_end - t0));

    std::vector<double> y1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
    rhs(t0 + h0, y1, f1);
    ++evals;
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = s.abs_tol + s.rel_tol * std::abs(y0[i]);
        d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
    }
    d2 = std::sqrt(d2 / n) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = (dmax <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                      : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, s.max_step, std::abs(t_end - t0)});
}

} // namespace

OdeSolution integrate_ode(const RhsFn& rhs, std::span<const double> y0, double t0,
                          double t_end, const IntegratorSettings& settings,
                          const EventFn& event, double record_dt) {
    if (!(t_end > t0)) {
        throw DomainError("integrate_ode: t_end must exceed t0");
    }
    const std::size_t n = y0.size();
    OdeSolution sol;
    StepWork w;
    w.y.assign(y0.begin(), y0.end());
    w.y_new.resize(n);
    w.stage.resize(n);
    for (auto* k : {&w.k1, &w.k2, &w.k3, &w.k4, &w.k5, &w.k6, &w.k7}) k->resize(n);

    double t = t0;
    rhs(t, w.y, w.k1);
    ++sol.rhs_evaluations;

    sol.times.push_back(t);
    sol.states.emplace_back(w.y);
    double next_record = record_dt > 0.0 ? t0 + record_dt : t0;

    double g_prev = 0.0;
    if (event) {
        g_prev = event(t, w.y);
        if (g_prev >= 0.0) {
            sol.event_hit = true;
            sol.event_time = t;
            sol.event_state = w.y;
            return sol;
        }
    }

    double h = settings.initial_step > 0.0
                   ? std::min(settings.initial_step, t_end - t0)
                   : initial_step_guess(rhs, y0, t0, t_end, settings, w.k1,
                                        sol.rhs_evaluations);
    double err_old = 1e-4;
    const auto wall_start = std::chrono::steady_clock::now();
    long wall_check_countdown = 64;

    while (t < t_end) {
        if (sol.steps_accepted + sol.steps_rejected >= settings.max_steps) {
            throw BudgetError("integrate_ode: max_steps (" +
                              std::to_string(settings.max_steps) + ") exhausted at t = " +
                              std::to_string(t));
        }
        if (settings.wall_budget_seconds > 0.0 && --wall_check_countdown <= 0) {
            wall_check_countdown = 64;
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
                    .count();
            if (elapsed > settings.wall_budget_seconds) {
                sol.wall_budget_hit = true;
                break;
            }
        }
        h = std::min(h, t_end - t);

        // Stages (k1 holds the FSAL derivative from the previous step).
        for (std::size_t i = 0; i < n; ++i) w.stage[i] = w.y[i] + h * kA21 * w.k1[i];
        rhs(t + kC2 * h, w.stage, w.k2);
        for (std::size_t i = 0; i < n; ++i)
            w.stage[i] = w.y[i] + h * (kA31 * w.k1[i] + kA32 * w.k2[i]);
        rhs(t + kC3 * h, w.stage, w.k3);
        for (std::size_t i = 0; i < n; ++i)
            w.stage[i] = w.y[i] + h * (kA41 * w.k1[i] + kA42 * w.k2[i] + kA43 * w.k3[i]);
        rhs(t + kC4 * h, w.stage, w.k4);
        for (std::size_t i = 0; i < n; ++i)
            w.stage[i] = w.y[i] + h * (kA51 * w.k1[i] + kA52 * w.k2[i] + kA53 * w.k3[i] +
                                       kA54 * w.k4[i]);
        rhs(t + kC5 * h, w.stage, w.k5);
        for (std::size_t i = 0; i < n; ++i)
            w.stage[i] = w.y[i] + h * (kA61 * w.k1[i] + kA62 * w.k2[i] + kA63 * w.k3[i] +
                                       kA64 * w.k4[i] + kA65 * w.k5[i]);
        rhs(t + h, w.stage, w.k6);
        for (std::size_t i = 0; i < n; ++i)
            w.y_new[i] = w.y[i] + h * (kB1 * w.k1[i] + kB3 * w.k3[i] + kB4 * w.k4[i] +
                                       kB5 * w.k5[i] + kB6 * w.k6[i]);
        rhs(t + h, w.y_new, w.k7);
        sol.rhs_evaluations += 5;

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (kE1 * w.k1[i] + kE3 * w.k3[i] + kE4 * w.k4[i] +
                                  kE5 * w.k5[i] + kE6 * w.k6[i] + kE7 * w.k7[i]);
            const double sc = settings.abs_tol +
                              settings.rel_tol * std::max(std::abs(w.y[i]), std::abs(w.y_new[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / n);

        if (err <= 1.0) {
            // PI controller (Hairer's dopri5 settings).
            constexpr double kBeta = 0.04, kExpo = 0.2 - 0.75 * kBeta;
            const double fac11 = std::pow(std::max(err, 1e-16), kExpo);
            double fac = fac11 / std::pow(err_old, kBeta);
            fac = std::clamp(fac / 0.9, 0.1, 5.0);
            const double h_next = std::min(h / fac, settings.max_step);
            err_old = std::max(err, 1e-4);

            const double t_new = t + h;
            bool stop = false;

            if (event) {
                const double g_new = event(t_new, w.y_new);
                if (g_prev < 0.0 && g_new >= 0.0) {
                    // Bisect the crossing on the dense output.
                    double lo = 0.0, hi = 1.0;
                    std::vector<double> probe(n);
                    const double t_tol = 1e-10 * std::max(1.0, std::abs(t_new));
                    while ((hi - lo) * h > t_tol) {
                        const double mid = 0.5 * (lo + hi);
                        dense_eval(w, h, mid, probe);
                        if (event(t + mid * h, probe) >= 0.0) {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    dense_eval(w, h, hi, probe);
                    sol.event_hit = true;
                    sol.event_time = t + hi * h;
                    sol.event_state = probe;
                    stop = true;
                }
                g_prev = g_new;
            }

            if (record_dt > 0.0) {
                const double t_limit = stop ? sol.event_time : t_new;
                std::vector<double> probe(n);
                while (next_record <= t_limit + 1e-14 * std::max(1.0, std::abs(t_limit))) {
                    const double theta = (next_record - t) / h;
                    dense_eval(w, h, std::clamp(theta, 0.0, 1.0), probe);
                    sol.times.push_back(next_record);
                    sol.states.push_back(probe);
                    next_record += record_dt;
                }
            }

            t = t_new;
            std::swap(w.y, w.y_new);
            std::swap(w.k1, w.k7); // FSAL
            ++sol.steps_accepted;

            if (stop) {
                sol.times.push_back(sol.event_time);
                sol.states.push_back(sol.event_state);
                return sol;
            }
            if (record_dt <= 0.0) {
                sol.times.push_back(t);
                sol.states.emplace_back(w.y);
            }
            h = h_next;
        } else {
            const double fac = std::clamp(std::pow(err, 0.2) / 0.9, 1.0, 5.0);
            h = std::max(h / fac, 1e-14 * std::max(1.0, std::abs(t)));
            ++sol.steps_rejected;
        }
    }

    if (record_dt > 0.0 &&
        (sol.times.empty() || std::abs(sol.times.back() - t) > 1e-14 * std::max(1.0, t))) {
        sol.times.push_back(t);
        sol.states.emplace_back(w.y);
    }
    return sol;
}

Trajectory integrate(const AlphaModel& model, const Configuration& z0, double t_end,
                     const IntegratorSettings& settings) {
    const int n = z0.size();
    const double initial_min_dist = n > 1 ? z0.min_pair_distance() : 1.0;
    if (n > 1 && initial_min_dist == 0.0) {
        throw SingularityError("integrate: initial configuration has coincident vortices");
    }
    const double floor = settings.collision_floor_fraction * initial_min_dist;

    Configuration work = z0;
    const RhsFn rhs = [&](double t, std::span<const double> y, std::span<double> dydt) {
        work.set_positions(y);
        if (floor > 0.0 && n > 1) {
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if (norm(work.vortices[i].position - work.vortices[j].position) < floor) {
                        throw CollisionError("integrate: vortices " + std::to_string(i) +
                                                 "," + std::to_string(j) +
                                                 " below the collision floor at t = " +
                                                 std::to_string(t),
                                             t, i, j);
                    }
                }
            }
        }
        const std::vector<Vec2> v = velocity_field(model, work);
        for (int i = 0; i < n; ++i) {
            dydt[2 * i] = v[i].x;
            dydt[2 * i + 1] = v[i].y;
        }
    };

    const OdeSolution sol = integrate_ode(rhs, z0.flatten(), 0.0, t_end, settings);

    Trajectory traj;
    traj.steps_accepted = sol.steps_accepted;
    traj.rhs_evaluations = sol.rhs_evaluations;
    traj.times = sol.times;
    traj.states.reserve(sol.states.size());
    const InvariantSnapshot inv0 = invariants(model, z0);
    const double h_scale = std::max(1.0, std::abs(inv0.hamiltonian));
    const double p_scale = std::max(1.0, norm(inv0.linear_momentum));
    const double a_scale = std::max(1.0, std::abs(inv0.angular_impulse));
    for (const auto& flat : sol.states) {
        Configuration snap = z0;
        snap.set_positions(flat);
        const InvariantSnapshot inv = invariants(model, snap);
        traj.hamiltonian_drift = std::max(
            traj.hamiltonian_drift, std::abs(inv.hamiltonian - inv0.hamiltonian) / h_scale);
        traj.momentum_drift = std::max(
            traj.momentum_drift, norm(inv.linear_momentum - inv0.linear_momentum) / p_scale);
        traj.angular_impulse_drift =
            std::max(traj.angular_impulse_drift,
                     std::abs(inv.angular_impulse - inv0.angular_impulse) / a_scale);
        traj.states.push_back(std::move(snap));
    }
    return traj;
}

namespace {

double sup_point_distance(std::span<const double> a, std::span<const double> b) {
    double sup = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); i += 2) {
        sup = std::max(sup, std::hypot(a[i] - b[i], a[i + 1] - b[i + 1]));
    }
    return sup;
}

} // namespace

EscapeResult escape_from_equilibrium(const RhsFn& rhs, std::span<const double> z_star,
                                     std::span<const double> direction, double lambda0,
                                     double epsilon, double beta,
                                     const EscapeSettings& settings) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("escape: epsilon must lie in (0,1)");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError("escape: beta must lie in (0,1)");
    }
    if (!(lambda0 > 0.0)) {
        throw DomainError("escape: lambda0 must be positive");
    }
    const std::size_t n = z_star.size();

    // Normalize the direction to unit sup-norm over points.
    double dir_sup = 0.0;
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        dir_sup = std::max(dir_sup, std::hypot(direction[i], direction[i + 1]));
    }
    if (dir_sup == 0.0) {
        throw DomainError("escape: zero perturbation direction");
    }

    std::vector<double> y0(n);
    for (std::size_t i = 0; i < n; ++i) {
        y0[i] = z_star[i] + 0.5 * epsilon * direction[i] / dir_sup;
    }

    const double exit_radius = 2.0 * std::pow(epsilon, beta);
    const double log_eps = std::abs(std::log(epsilon));
    EscapeResult result;
    result.epsilon = epsilon;
    result.beta = beta;
    result.lambda0 = lambda0;
    result.prediction = (1.0 - beta) / lambda0 * log_eps;
    result.prediction_linear = (std::log(4.0) + (1.0 - beta) * log_eps) / lambda0;

    const EventFn event = [&](double, std::span<const double> y) {
        return sup_point_distance(y, z_star) - exit_radius;
    };
    const double horizon = settings.horizon_factor * result.prediction_linear;
    const OdeSolution sol = integrate_ode(rhs, y0, 0.0, horizon, settings.ode, event);
    if (!sol.event_hit) {
        throw NonEscapeError("escape: exit radius 2 eps^beta = " +
                             std::to_string(exit_radius) + " not reached by t = " +
                             std::to_string(horizon));
    }
    result.tau_z = sol.event_time;

    // Rate fit picks the window where the separation is exponential.
    double lo = settings.fit_lo > 0.0 ? settings.fit_lo : 10.0 * epsilon;
    double hi = settings.fit_hi > 0.0 ? settings.fit_hi : std::pow(epsilon, beta) / 10.0;
    if (lo >= hi) {
        // The default window is empty at desk-scale eps; fall back to the
        // geometric quartiles of the traversed range [eps/2, 2 eps^beta].
        const double log_lo = std::log(0.5 * epsilon);
        const double span = std::log(exit_radius) - log_lo;
        lo = std::exp(log_lo + 0.25 * span);
        hi = std::exp(log_lo + 0.75 * span);
    }
    result.fit_lo = lo;
    result.fit_hi = hi;
    double st = 0.0, sd = 0.0, stt = 0.0, std_ = 0.0;
    long count = 0;
    for (std::size_t k = 0; k < sol.times.size(); ++k) {
        const double d = sup_point_distance(sol.states[k], z_star);
        if (d >= lo && d <= hi) {
            const double ld = std::log(d);
            st += sol.times[k];
            sd += ld;
            stt += sol.times[k] * sol.times[k];
            std_ += sol.times[k] * ld;
            ++count;
        }
    }
    if (count < 3) {
        throw NumericError("escape: fewer than 3 samples in the rate-fit window [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    result.fitted_rate =
        (static_cast<double>(count) * std_ - st * sd) / (static_cast<double>(count) * stt - st * st);

    result.solution = std::move(sol);
    return result;
}

EscapeResult escape_experiment(const AlphaModel& model, const CrystalSpec& spec,
                               double epsilon, double beta, const EscapeSettings& settings) {
    const Configuration z_star = build_crystal(spec);
    const Eigen::MatrixXd df = jacobian_analytic(model, z_star);
    const SpectralReport rep = spectrum(df, model, z_star);
    if (!(rep.lambda0 > 0.0) || !rep.has_real_unstable_vector) {
        throw DomainError("escape_experiment: configuration has no real unstable direction");
    }
    const double min_dist = z_star.min_pair_distance();
    if (!(2.0 * std::pow(epsilon, beta) < 0.5 * min_dist)) {
        throw DomainError("escape_experiment: exit radius exceeds half the minimal "
                          "inter-vortex distance; reduce epsilon");
    }

    Configuration work = z_star;
    const int n = z_star.size();
    const RhsFn rhs = [&, model](double, std::span<const double> y, std::span<double> dydt) {
        work.set_positions(y);
        const std::vector<Vec2> v = velocity_field(model, work);
        for (int i = 0; i < n; ++i) {
            dydt[2 * i] = v[i].x;
            dydt[2 * i + 1] = v[i].y;
        }
    };

    const std::vector<double> z_flat = z_star.flatten();
    std::vector<double> dir(rep.unstable_eigenvector.data(),
                            rep.unstable_eigenvector.data() + rep.unstable_eigenvector.size());
    EscapeResult result =
        escape_from_equilibrium(rhs, z_flat, dir, rep.lambda0, epsilon, beta, settings);

    // Attach configuration snapshots and invariant drift for the record.
    Trajectory& traj = result.trajectory;
    traj.times = result.solution.times;
    traj.steps_accepted = result.solution.steps_accepted;
    traj.rhs_evaluations = result.solution.rhs_evaluations;
    traj.states.reserve(result.solution.states.size());
    Configuration snap = z_star;
    const InvariantSnapshot inv0 = [&] {
        snap.set_positions(result.solution.states.front());
        return invariants(model, snap);
    }();
    const double h_scale = std::max(1.0, std::abs(inv0.hamiltonian));
    const double p_scale = std::max(1.0, norm(inv0.linear_momentum));
    const double a_scale = std::max(1.0, std::abs(inv0.angular_impulse));
    for (const auto& flat : result.solution.states) {
        snap.set_positions(flat);
        const InvariantSnapshot inv = invariants(model, snap);
        traj.hamiltonian_drift = std::max(
            traj.hamiltonian_drift, std::abs(inv.hamiltonian - inv0.hamiltonian) / h_scale);
        traj.momentum_drift = std::max(
            traj.momentum_drift, norm(inv.linear_momentum - inv0.linear_momentum) / p_scale);
        traj.angular_impulse_drift =
            std::max(traj.angular_impulse_drift,
                     std::abs(inv.angular_impulse - inv0.angular_impulse) / a_scale);
        traj.states.push_back(snap);
    }
    return result;
}

} // namespace vortexlab
