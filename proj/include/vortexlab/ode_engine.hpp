// ode_engine.hpp
// Adaptive Dormand-Prince 5(4) integration with dense output and event
// location, the point-vortex trajectory wrapper, and the escape experiment:
// perturb an unstable equilibrium along its eigenvector at distance eps/2 and
// measure the exit time tau_Z together with the realized exponential rate.
#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "vortexlab/crystal.hpp"
#include "vortexlab/vortex_core.hpp"

namespace vortexlab {

struct IntegratorSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0; // 0 = automatic selection
    long max_steps = 50'000'000;
    // Minimum allowed pair distance as a fraction of the initial minimum pair
    // distance; crossing it raises CollisionError. 0 disables the check.
    double collision_floor_fraction = 1e-3;
    // Wall-clock guard for long marker runs; 0 = unlimited. When hit, the
    // integration returns what it has with wall_budget_hit set.
    double wall_budget_seconds = 0.0;
    int threads = 1; // consumed by the marker-cloud right-hand side
};

using RhsFn = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;
// Scalar event function; integration stops at the first crossing from
// negative to nonnegative, located on the dense output.
using EventFn = std::function<double(double t, std::span<const double> y)>;

struct OdeSolution {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    bool event_hit = false;
    double event_time = 0.0;
    std::vector<double> event_state;
    bool wall_budget_hit = false;
    long steps_accepted = 0;
    long steps_rejected = 0;
    long rhs_evaluations = 0;
};

// Integrates y' = rhs(t, y) from t0 to t_end. record_dt > 0 samples the dense
// output on a uniform grid (plus the endpoint); record_dt = 0 records every
// accepted step. Throws BudgetError when max_steps is exhausted.
OdeSolution integrate_ode(const RhsFn& rhs, std::span<const double> y0, double t0,
                          double t_end, const IntegratorSettings& settings,
                          const EventFn& event = {}, double record_dt = 0.0);

struct Trajectory {
    std::vector<double> times;
    std::vector<Configuration> states;
    // Worst-case drift of the first integrals over the recorded snapshots,
    // relative to max(1, initial magnitude).
    double hamiltonian_drift = 0.0;
    double momentum_drift = 0.0;
    double angular_impulse_drift = 0.0;
    long steps_accepted = 0;
    long rhs_evaluations = 0;
};

// Point-vortex integration with collision guard and invariant bookkeeping.
Trajectory integrate(const AlphaModel& model, const Configuration& z0, double t_end,
                     const IntegratorSettings& settings);

struct EscapeSettings {
    IntegratorSettings ode{};
    // Distance window [fit_lo, fit_hi] for the exponential-rate fit; zeros
    // select 10*eps and eps^beta/10, widened to [1.5 eps, (2/3) eps^beta]
    // whenever that default window is empty at the given eps.
    double fit_lo = 0.0;
    double fit_hi = 0.0;
    // Integration horizon as a multiple of the linear-theory exit time.
    double horizon_factor = 3.0;
};

struct EscapeResult {
    double epsilon = 0.0;
    double beta = 0.0;
    double tau_z = 0.0;        // first time |Z(t) - Z*|_inf reaches 2 eps^beta
    double fitted_rate = 0.0;  // least-squares slope of ln|Z - Z*|_inf vs t
    double lambda0 = 0.0;
    double prediction = 0.0;        // (1 - beta)/lambda0 * |ln eps|
    double prediction_linear = 0.0; // (ln 4 + (1 - beta)|ln eps|)/lambda0
    double fit_lo = 0.0;
    double fit_hi = 0.0;
    OdeSolution solution;  // flat trajectory ending at the exit event
    Trajectory trajectory; // configuration snapshots; filled by the crystal wrapper
};

// Escape experiment at a generic unstable equilibrium: z_star and direction
// are flat (p,q,...) coordinates; direction is normalized internally to unit
// sup-norm over points. Throws NonEscapeError when the horizon is reached
// without hitting the exit radius 2 eps^beta.
EscapeResult escape_from_equilibrium(const RhsFn& rhs, std::span<const double> z_star,
                                     std::span<const double> direction, double lambda0,
                                     double epsilon, double beta,
                                     const EscapeSettings& settings);

// Crystal escape: builds the crystal, takes the unstable eigenvector from the
// analytic Jacobian, and runs escape_from_equilibrium on the point-vortex
// right-hand side. Requires lambda0 > 0 with a real eigenvector.
EscapeResult escape_experiment(const AlphaModel& model, const CrystalSpec& spec,
                               double epsilon, double beta, const EscapeSettings& settings);

} // namespace vortexlab
