// blob_lab.cpp
#include "vortexlab/blob_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <string>
#include <thread>

#include "vortexlab/linearization.hpp"

namespace vortexlab {

std::vector<Vec2> sample_patch(const PatchSpec& spec) {
    if (spec.markers < 1) {
        throw DomainError("sample_patch: need at least one marker");
    }
    if (!(spec.nu >= 2.0)) {
        throw DomainError("sample_patch: nu must be >= 2");
    }
    if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
        throw DomainError("sample_patch: epsilon must lie in (0,1)");
    }
    const double radius = std::pow(spec.epsilon, 0.5 * spec.nu) / 4.0;
    const int m = spec.markers;
    std::vector<Vec2> pts;
    pts.reserve(m);

    const int pairs = m / 2;
    if (m % 2 == 1) {
        pts.push_back(spec.center);
    }
    // Golden-angle spiral with equal-area radii, mirrored through the center.
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 1; k <= pairs; ++k) {
        const double r = radius * std::sqrt((k - 0.5) / pairs);
        const double theta = golden * k;
        const Vec2 offset{r * std::cos(theta), r * std::sin(theta)};
        pts.push_back(spec.center + offset);
        pts.push_back(spec.center - offset);
    }
    return pts;
}

int CloudState::blob_of(int marker) const {
    for (int b = 0; b < blobs(); ++b) {
        if (marker < offsets[b + 1]) return b;
    }
    throw DomainError("blob_of: marker index out of range");
}

CloudState make_cloud(const std::vector<PatchSpec>& patches) {
    CloudState state;
    state.offsets.push_back(0);
    for (const PatchSpec& p : patches) {
        const std::vector<Vec2> pts = sample_patch(p);
        state.positions.insert(state.positions.end(), pts.begin(), pts.end());
        state.offsets.push_back(static_cast<int>(state.positions.size()));
        state.blob_intensity.push_back(p.intensity);
    }
    return state;
}

namespace {

// Persistent worker pool for the pairwise sum: targets are partitioned across
// threads, every target accumulates over all sources in ascending order, so
// the result does not depend on the partition.
class PairwiseField {
public:
    PairwiseField(const AlphaModel& model, const CloudState& state, int threads)
        : alpha_(model.alpha),
          c_alpha_(model.c_alpha),
          euler_(model.alpha == 1.0),
          n_(state.markers()),
          threads_(std::max(1, std::min(threads, n_))) {
        gamma_.resize(n_);
        blob_.resize(n_);
        for (int b = 0; b < state.blobs(); ++b) {
            for (int m = state.offsets[b]; m < state.offsets[b + 1]; ++m) {
                gamma_[m] = state.marker_intensity(b);
                blob_[m] = b;
            }
        }
        if (threads_ > 1) {
            workers_.reserve(threads_ - 1);
            for (int w = 1; w < threads_; ++w) {
                workers_.emplace_back([this, w] { worker_loop(w); });
            }
        }
    }

    ~PairwiseField() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            shutdown_ = true;
            ++generation_;
        }
        cv_.notify_all();
        for (auto& th : workers_) th.join();
    }

    long floor_activations() const { return floor_hits_.load(); }

    void operator()(std::span<const double> y, std::span<double> dydt) {
        y_ = y.data();
        out_ = dydt.data();
        if (threads_ == 1) {
            compute_range(0, n_);
            return;
        }
        {
            std::lock_guard<std::mutex> lock(mutex_);
            pending_ = threads_ - 1;
            ++generation_;
        }
        cv_.notify_all();
        compute_range(0, chunk_end(0));
        std::unique_lock<std::mutex> lock(mutex_);
        done_cv_.wait(lock, [this] { return pending_ == 0; });
        if (worker_error_) {
            auto err = worker_error_;
            worker_error_ = nullptr;
            std::rethrow_exception(err);
        }
    }

private:
    int chunk_end(int w) const { return static_cast<int>(std::int64_t(n_) * (w + 1) / threads_); }

    void worker_loop(int w) {
        long seen = 0;
        const int lo = chunk_end(w - 1);
        const int hi = chunk_end(w);
        while (true) {
            {
                std::unique_lock<std::mutex> lock(mutex_);
                cv_.wait(lock, [this, &seen] { return generation_ != seen || shutdown_; });
                if (shutdown_) return;
                seen = generation_;
            }
            try {
                compute_range(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mutex_);
                if (!worker_error_) worker_error_ = std::current_exception();
            }
            {
                std::lock_guard<std::mutex> lock(mutex_);
                if (--pending_ == 0) done_cv_.notify_one();
            }
        }
    }

    void compute_range(int lo, int hi) {
        constexpr double kFloor = 1e-12;
        for (int i = lo; i < hi; ++i) {
            const double xi = y_[2 * i], yi = y_[2 * i + 1];
            double ux = 0.0, uy = 0.0;
            for (int j = 0; j < n_; ++j) {
                if (j == i) continue;
                const double dx = xi - y_[2 * j];
                const double dy = yi - y_[2 * j + 1];
                double r2 = dx * dx + dy * dy;
                if (r2 < kFloor * kFloor) {
                    if (blob_[i] == blob_[j]) {
                        // Same-blob numerical collision: floor the distance.
                        r2 = kFloor * kFloor;
                        floor_hits_.fetch_add(1, std::memory_order_relaxed);
                    } else {
                        throw SingularityError("evolve_cloud: cross-blob marker collision",
                                               i, j);
                    }
                }
                double scale;
                if (euler_) {
                    scale = gamma_[j] / r2;
                } else {
                    scale = gamma_[j] / std::pow(r2, 0.5 * (alpha_ + 1.0));
                }
                ux -= scale * dy;
                uy += scale * dx;
            }
            out_[2 * i] = c_alpha_ * ux;
            out_[2 * i + 1] = c_alpha_ * uy;
        }
    }

    double alpha_;
    double c_alpha_;
    bool euler_;
    int n_;
    int threads_;
    std::vector<double> gamma_;
    std::vector<int> blob_;
    const double* y_ = nullptr;
    double* out_ = nullptr;
    std::vector<std::thread> workers_;
    std::mutex mutex_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    long generation_ = 0;
    int pending_ = 0;
    bool shutdown_ = false;
    std::exception_ptr worker_error_ = nullptr;
    std::atomic<long> floor_hits_{0};
};

} // namespace

CloudTrajectory evolve_cloud(const AlphaModel& model, const CloudState& state,
                             double t_end, const IntegratorSettings& settings,
                             double record_dt) {
    PairwiseField field(model, state, settings.threads);
    const RhsFn rhs = [&field](double, std::span<const double> y, std::span<double> dydt) {
        field(y, dydt);
    };

    std::vector<double> y0;
    y0.reserve(2 * state.markers());
    for (const Vec2& p : state.positions) {
        y0.push_back(p.x);
        y0.push_back(p.y);
    }

    IntegratorSettings ode = settings;
    ode.collision_floor_fraction = 0.0; // the pairwise floor handles collisions
    const OdeSolution sol = integrate_ode(rhs, y0, 0.0, t_end, ode, {}, record_dt);

    CloudTrajectory traj;
    traj.initial = state;
    traj.times = sol.times;
    traj.wall_budget_hit = sol.wall_budget_hit;
    traj.steps_accepted = sol.steps_accepted;
    traj.rhs_evaluations = sol.rhs_evaluations;
    traj.floor_activations = field.floor_activations();
    traj.snapshots.reserve(sol.states.size());
    for (const auto& flat : sol.states) {
        std::vector<Vec2> snap(state.markers());
        for (int m = 0; m < state.markers(); ++m) {
            snap[m] = {flat[2 * m], flat[2 * m + 1]};
        }
        traj.snapshots.push_back(std::move(snap));
    }

    // Exact invariants of the marker system.
    const auto momentum = [&](const std::vector<Vec2>& pts) {
        Vec2 p{0.0, 0.0};
        for (int b = 0; b < state.blobs(); ++b) {
            const double g = state.marker_intensity(b);
            for (int m = state.offsets[b]; m < state.offsets[b + 1]; ++m) {
                p += g * pts[m];
            }
        }
        return p;
    };
    const auto hamiltonian = [&](const std::vector<Vec2>& pts) {
        double h = 0.0;
        for (int i = 0; i < state.markers(); ++i) {
            const int bi = state.blob_of(i);
            for (int j = i + 1; j < state.markers(); ++j) {
                const double r = norm(pts[i] - pts[j]);
                if (r > 0.0) {
                    h += state.marker_intensity(bi) *
                         state.marker_intensity(state.blob_of(j)) * pair_potential(model, r);
                }
            }
        }
        return h;
    };
    if (!traj.snapshots.empty()) {
        const Vec2 p0 = momentum(traj.snapshots.front());
        const double h0 = hamiltonian(traj.snapshots.front());
        const double p_scale = std::max(1.0, norm(p0));
        const double h_scale = std::max(1.0, std::abs(h0));
        for (const auto& snap : traj.snapshots) {
            traj.momentum_drift =
                std::max(traj.momentum_drift, norm(momentum(snap) - p0) / p_scale);
            traj.hamiltonian_drift =
                std::max(traj.hamiltonian_drift, std::abs(hamiltonian(snap) - h0) / h_scale);
        }
    }
    return traj;
}

BlobDiagnostics diagnostics(const CloudTrajectory& trajectory, const Configuration& z_star,
                            double epsilon, double beta) {
    if (trajectory.times.empty()) {
        throw DomainError("diagnostics: empty trajectory");
    }
    const CloudState& state = trajectory.initial;
    if (z_star.size() != state.blobs()) {
        throw DomainError("diagnostics: center count does not match blob count");
    }
    const int nb = state.blobs();
    const std::size_t ns = trajectory.times.size();
    BlobDiagnostics diag;
    diag.times = trajectory.times;
    diag.barycenter.assign(nb, std::vector<Vec2>(ns));
    diag.inertia.assign(nb, std::vector<double>(ns));
    diag.support_radius.assign(nb, std::vector<double>(ns));

    const double exit_radius = std::pow(epsilon, beta);
    std::vector<double> worst_excess(ns); // max_i (marker distance to z_i*) - eps^beta

    for (std::size_t s = 0; s < ns; ++s) {
        const auto& snap = trajectory.snapshots[s];
        double excess = -std::numeric_limits<double>::infinity();
        for (int b = 0; b < nb; ++b) {
            const int lo = state.offsets[b], hi = state.offsets[b + 1];
            const double inv_m = 1.0 / (hi - lo);
            Vec2 bary{0.0, 0.0};
            for (int m = lo; m < hi; ++m) bary += inv_m * snap[m];
            double inertia = 0.0, support = 0.0;
            for (int m = lo; m < hi; ++m) {
                const Vec2 d = snap[m] - bary;
                inertia += inv_m * norm_sq(d);
                support = std::max(support, norm(d));
                excess = std::max(excess, norm(snap[m] - z_star.vortices[b].position) -
                                              exit_radius);
            }
            diag.barycenter[b][s] = bary;
            diag.inertia[b][s] = inertia;
            diag.support_radius[b][s] = support;
        }
        worst_excess[s] = excess;
    }

    for (std::size_t s = 0; s < ns; ++s) {
        if (worst_excess[s] >= 0.0) {
            if (s == 0) {
                diag.exit_time = trajectory.times[0];
            } else {
                // Linear bracketing between the stored snapshots.
                const double t0 = trajectory.times[s - 1], t1 = trajectory.times[s];
                const double g0 = worst_excess[s - 1], g1 = worst_excess[s];
                diag.exit_time = t0 + (t1 - t0) * (g1 > g0 ? -g0 / (g1 - g0) : 1.0);
            }
            break;
        }
    }
    return diag;
}

ConfinementResult confinement_experiment(const ConfinementParams& params) {
    ConfinementResult out;
    out.params = params;

    const AlphaModel model(params.alpha);
    const CrystalSpec spec{params.n, model};
    out.z_star = build_crystal(spec);

    EscapeSettings esc;
    esc.ode = params.ode;
    esc.ode.threads = 1;
    esc.ode.wall_budget_seconds = 0.0;
    out.oracle = escape_experiment(model, spec, params.epsilon, params.beta, esc);
    out.lambda0 = out.oracle.lambda0;

    const SpectralReport rep =
        spectrum(jacobian_analytic(model, out.z_star), model, out.z_star);
    out.kappa1 = rep.kappa1;

    const double horizon =
        params.t_end > 0.0 ? params.t_end : out.oracle.tau_z * (1.0 + 1e-9);
    const double record_dt =
        params.record_dt > 0.0 ? params.record_dt : horizon / 400.0;

    // Patches sit at the perturbed barycenters Z0, one per vortex.
    const std::vector<double>& z0_flat = out.oracle.solution.states.front();
    std::vector<PatchSpec> patches;
    patches.reserve(out.z_star.size());
    for (int i = 0; i < out.z_star.size(); ++i) {
        PatchSpec p;
        p.center = {z0_flat[2 * i], z0_flat[2 * i + 1]};
        p.intensity = out.z_star.vortices[i].intensity;
        p.epsilon = params.epsilon;
        p.nu = params.nu;
        p.markers = params.markers;
        patches.push_back(p);
    }
    const CloudState cloud0 = make_cloud(patches);
    out.cloud = evolve_cloud(model, cloud0, horizon, params.ode, record_dt);
    out.completed = !out.cloud.wall_budget_hit;
    out.diag = diagnostics(out.cloud, out.z_star, params.epsilon, params.beta);

    // Point-vortex oracle sampled on the same time grid for the tracking gap.
    Configuration z0_conf = out.z_star;
    z0_conf.set_positions(z0_flat);
    Configuration work = z0_conf;
    const int n = z0_conf.size();
    const RhsFn rhs = [&, model](double, std::span<const double> y, std::span<double> dydt) {
        work.set_positions(y);
        const std::vector<Vec2> v = velocity_field(model, work);
        for (int i = 0; i < n; ++i) {
            dydt[2 * i] = v[i].x;
            dydt[2 * i + 1] = v[i].y;
        }
    };
    IntegratorSettings oracle_ode = params.ode;
    oracle_ode.threads = 1;
    oracle_ode.wall_budget_seconds = 0.0;
    const double cloud_end = out.diag.times.back();
    const OdeSolution oracle_path =
        integrate_ode(rhs, z0_flat, 0.0, cloud_end * (1.0 + 1e-12), oracle_ode, {}, record_dt);

    out.oracle_gap.assign(out.diag.times.size(), 0.0);
    const std::size_t common = std::min(oracle_path.states.size(), out.diag.times.size());
    for (std::size_t s = 0; s < common; ++s) {
        double gap = 0.0;
        for (int b = 0; b < n; ++b) {
            const Vec2 zb{oracle_path.states[s][2 * b], oracle_path.states[s][2 * b + 1]};
            gap = std::max(gap, norm(out.diag.barycenter[b][s] - zb));
        }
        out.oracle_gap[s] = gap;
    }
    return out;
}

} // namespace vortexlab
