// conformal_domain.cpp
#include "vortexlab/conformal_domain.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

constexpr int kMaxAdaptDepth = 48;

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x); // descending x maps to ascending t
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
}

// Gauss-Jacobi rule for int_0^1 (1-t)^(-d) g(t) dt via Golub-Welsch on the
// Jacobi(-d, 0) recurrence.
void gauss_jacobi_end_singular(int n, double d, std::vector<double>& nodes,
                               std::vector<double>& weights) {
    const double a = -d, b = 0.0;
    Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
    const double mu0 =
        std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) /
        std::tgamma(a + b + 2.0);
    for (int k = 0; k < n; ++k) {
        double alpha_k;
        if (k == 0) {
            alpha_k = (b - a) / (a + b + 2.0);
        } else {
            const double s = 2.0 * k + a + b;
            alpha_k = (b * b - a * a) / (s * (s + 2.0));
        }
        jm(k, k) = alpha_k;
        if (k + 1 < n) {
            const double kk = k + 1.0;
            const double s = 2.0 * kk + a + b;
            const double beta = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) /
                                (s * s * (s + 1.0) * (s - 1.0));
            jm(k, k + 1) = std::sqrt(beta);
            jm(k + 1, k) = jm(k, k + 1);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jm);
    if (solver.info() != Eigen::Success) {
        throw NumericError("gauss_jacobi: eigensolver failure");
    }
    nodes.resize(n);
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        const double x = solver.eigenvalues()[k]; // on [-1,1]
        // x = -1 -> t = 0, x = +1 -> t = 1 keeps the singular end at t = 1;
        // the [0,1] substitution contributes 2^(d-1) absorbed via mu0 scaling.
        nodes[k] = 0.5 * (1.0 + x);
        const double v0 = solver.eigenvectors()(0, k);
        weights[k] = mu0 * v0 * v0 * std::pow(2.0, d - 1.0);
    }
}

} // namespace

HexDomain::HexDomain(double delta, int quad_order, int boundary_samples)
    : delta_(delta), quad_order_(quad_order) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("HexDomain: delta must lie in (0,1), got " + std::to_string(delta));
    }
    if (quad_order < 4 || quad_order % 2 != 0) {
        throw DomainError("HexDomain: quadrature order must be even and >= 4");
    }
    gauss_legendre(quad_order_, gl_nodes_, gl_weights_);
    gauss_legendre(quad_order_ / 2, gl_half_nodes_, gl_half_weights_);
    // Weighted end rules for the two prevertex exponents: (1-t)^(-delta) at
    // the four corners, (1-t)^(2 delta - 1) at +-1 (singular for delta < 1/2).
    gauss_jacobi_end_singular(24, delta_, gj_corner_nodes_, gj_corner_weights_);
    gauss_jacobi_end_singular(24, 1.0 - 2.0 * delta_, gj_pole_nodes_, gj_pole_weights_);
    build_taylor();
    build_boundary(boundary_samples);
    build_seed_grid();
}

Complex HexDomain::vertex_position(int k) const {
    return std::polar(1.0, k * M_PI / 3.0);
}

Complex HexDomain::log_sc_derivative(Complex w) const {
    Complex sum = 0.0;
    for (int k = 0; k < 6; ++k) {
        const double mu = (k % 3 == 0) ? 1.0 - 2.0 * delta_ : delta_;
        const Complex factor = 1.0 - w * std::conj(vertex_position(k));
        if (std::abs(factor) < 1e-14) {
            throw SingularityError("sc_derivative: evaluation at prevertex " +
                                   std::to_string(k));
        }
        sum -= mu * std::log(factor);
    }
    return sum;
}

Complex HexDomain::sc_derivative(Complex w) const { return std::exp(log_sc_derivative(w)); }

Complex HexDomain::sc_log_derivative(Complex w) const {
    Complex sum = 0.0;
    for (int k = 0; k < 6; ++k) {
        const double mu = (k % 3 == 0) ? 1.0 - 2.0 * delta_ : delta_;
        const Complex cv = std::conj(vertex_position(k));
        sum += mu * cv / (1.0 - w * cv);
    }
    return sum;
}

namespace {

struct PanelResult {
    Complex value;
    double error;
};

} // namespace

Complex HexDomain::map_increment(Complex a, Complex b) const {
    const Complex dir = b - a;
    if (std::abs(dir) == 0.0) return 0.0;

    // Nested Gauss-Legendre estimate on one panel.
    const auto panel = [&](double t0, double t1) -> PanelResult {
        Complex full = 0.0, half = 0.0;
        const double span = t1 - t0;
        for (int i = 0; i < quad_order_; ++i) {
            const Complex w = a + (t0 + span * gl_nodes_[i]) * dir;
            full += gl_weights_[i] * sc_derivative(w);
        }
        for (int i = 0; i < quad_order_ / 2; ++i) {
            const Complex w = a + (t0 + span * gl_half_nodes_[i]) * dir;
            half += gl_half_weights_[i] * sc_derivative(w);
        }
        full *= span;
        half *= span;
        return {full * dir, std::abs(full - half) * std::abs(dir)};
    };

    const double tol = 1e-13 * std::max(1.0, std::abs(dir));
    Complex total = 0.0;
    // Explicit stack of [t0, t1, depth].
    struct Frame {
        double t0, t1;
        int depth;
    };
    std::vector<Frame> stack{{0.0, 1.0, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        const PanelResult r = panel(f.t0, f.t1);
        if (r.error <= tol * std::max(1.0, f.t1 - f.t0) || f.depth >= kMaxAdaptDepth) {
            if (f.depth >= kMaxAdaptDepth && r.error > 1e6 * tol) {
                throw NumericError(
                    "map_increment: quadrature failed to converge on panel [" +
                    std::to_string(f.t0) + ", " + std::to_string(f.t1) + "] of segment to " +
                    std::to_string(std::abs(b)) + " (error " + std::to_string(r.error) + ")");
            }
            total += r.value;
        } else {
            const double tm = 0.5 * (f.t0 + f.t1);
            stack.push_back({tm, f.t1, f.depth + 1});
            stack.push_back({f.t0, tm, f.depth + 1});
        }
    }
    return total;
}

Complex HexDomain::sc_map(Complex w) const {
    const double r = std::abs(w);
    if (r == 0.0) return 0.0;
    if (r > 1.0 + 1e-12) {
        throw DomainError("sc_map: |w| must not exceed 1");
    }

    // Radial endpoint at a prevertex: finish with the weighted end panel that
    // absorbs the (1-t)^(-mu_k) factor (mu = delta at the four corners,
    // mu = 1 - 2 delta at +-1, singular there for delta < 1/2).
    if (r > 1.0 - 1e-12) {
        for (int k = 0; k < 6; ++k) {
            const Complex v = vertex_position(k);
            if (std::abs(w - v) >= 1e-12) continue;
            const double mu = (k % 3 == 0) ? 1.0 - 2.0 * delta_ : delta_;
            const auto& nodes = (k % 3 == 0) ? gj_pole_nodes_ : gj_corner_nodes_;
            const auto& weights = (k % 3 == 0) ? gj_pole_weights_ : gj_corner_weights_;
            const double t0 = 0.96875; // 1 - 2^-5
            const Complex base = map_increment(0.0, t0 * v);
            Complex tail = 0.0;
            const double span = 1.0 - t0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                const double t = t0 + span * nodes[i];
                // Remove the singular factor handled by the weight.
                const Complex smooth = std::exp(log_sc_derivative(t * v) +
                                                mu * std::log(Complex(1.0 - t, 0.0)));
                tail += weights[i] * smooth;
            }
            // Weights carry int (1-t)^(-mu) over [0,1]; rescale to the
            // [t0,1] panel: t = t0 + span u, (1-t) = span (1-u).
            tail *= std::pow(span, 1.0 - mu);
            return base + tail * v;
        }
    }
    return map_increment(0.0, w);
}

void HexDomain::build_taylor() {
    // Cauchy integrals on |w| = 1/2: a_m = (1/K) sum S'(r e^(i theta_j)) e^(-i m theta_j) / r^m.
    constexpr int kRing = 64;
    constexpr double kRadius = 0.5;
    Complex a0 = 0.0, a1 = 0.0, a2 = 0.0;
    for (int j = 0; j < kRing; ++j) {
        const double theta = 2.0 * M_PI * j / kRing;
        const Complex w = std::polar(kRadius, theta);
        const Complex f = sc_derivative(w);
        a0 += f;
        a1 += f * std::polar(1.0, -theta);
        a2 += f * std::polar(1.0, -2.0 * theta);
    }
    a0 /= kRing;
    a1 /= kRing * kRadius;
    a2 /= kRing * kRadius * kRadius;

    taylor_.s1 = a0;           // S'(0)
    taylor_.s2 = a1;           // S''(0) = (S')'(0)
    taylor_.s3 = 2.0 * a2;     // S'''(0) = (S')''(0)
    const Complex s1 = taylor_.s1, s2 = taylor_.s2, s3 = taylor_.s3;
    taylor_.t1_abs = 1.0 / std::abs(s1);
    taylor_.t3_abs = std::abs(-s3 / std::pow(s1, 4) + 3.0 * s2 * s2 / std::pow(s1, 5));
}

void HexDomain::build_boundary(int samples) {
    if (samples < 12) samples = 12;
    const int per_side = samples / 6;
    // The map is Hoelder-continuous at the prevertices with exponent 1-delta
    // (corners) or 2 delta (+-1); grading the angle samples by the inverse
    // exponent keeps the polyline segments of comparable arc length.
    const double grade = 1.0 / std::min({1.0, 1.0 - delta_, 2.0 * delta_});
    boundary_.clear();
    boundary_.reserve(6 * per_side);
    for (int k = 0; k < 6; ++k) {
        const double th0 = k * M_PI / 3.0;
        // Vertex first, then interior points of the following arc clustered
        // toward both ends (the vertex itself uses the weighted end panel).
        const Complex vert = sc_map(vertex_position(k));
        boundary_.push_back({vert.real(), vert.imag()});
        for (int i = 1; i < per_side; ++i) {
            const double s = static_cast<double>(i) / per_side;
            const double sp = std::pow(s, grade);
            const double u = sp / (sp + std::pow(1.0 - s, grade));
            const double th = th0 + (M_PI / 3.0) * u;
            const Complex z = sc_map(std::polar(1.0, th));
            boundary_.push_back({z.real(), z.imag()});
        }
    }
}

void HexDomain::build_seed_grid() {
    constexpr int kThetas = 96;
    constexpr int kRadii = 12;
    seed_w_.clear();
    seed_s_.clear();
    seed_w_.reserve(kThetas * kRadii + 1);
    seed_s_.reserve(kThetas * kRadii + 1);
    seed_w_.push_back(0.0);
    seed_s_.push_back(0.0);
    for (int j = 0; j < kThetas; ++j) {
        const double theta = 2.0 * M_PI * (j + 0.5) / kThetas;
        Complex w_prev = 0.0, s_prev = 0.0;
        for (int i = 1; i <= kRadii; ++i) {
            const Complex w = std::polar(0.96 * i / kRadii, theta);
            const Complex s = s_prev + map_increment(w_prev, w);
            seed_w_.push_back(w);
            seed_s_.push_back(s);
            w_prev = w;
            s_prev = s;
        }
    }
}

Complex HexDomain::inverse_map(Complex z) const {
    if (std::abs(z) == 0.0) return 0.0;
    // Nearest cached image as the Newton seed.
    std::size_t best = 0;
    double best_dist = std::abs(z - seed_s_[0]);
    for (std::size_t i = 1; i < seed_s_.size(); ++i) {
        const double dist = std::abs(z - seed_s_[i]);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    Complex w = seed_w_[best];
    Complex s = seed_s_[best];
    const double tol = 1e-12 * std::max(1.0, std::abs(z));
    for (int iter = 0; iter < 50; ++iter) {
        if (std::abs(z - s) < tol) return w;
        Complex step = (z - s) / sc_derivative(w);
        Complex w_next = w + step;
        // Keep the iterate inside the disk; halve the step if it escapes.
        int backtrack = 0;
        while (std::abs(w_next) > 1.0 - 1e-9 && backtrack < 60) {
            step *= 0.5;
            w_next = w + step;
            ++backtrack;
        }
        s += map_increment(w, w_next);
        w = w_next;
    }
    throw InversionError("inverse_map: Newton failed to reach |S(w)-z| < 1e-12 for z = (" +
                         std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
}

RobinData HexDomain::robin_data(Complex w) const {
    const double r2 = std::norm(w);
    if (!(r2 < 1.0)) {
        throw DomainError("robin_data: |w| must be < 1");
    }
    RobinData out;
    out.conformal_radius = std::abs(sc_derivative(w)) * (1.0 - r2);
    out.gamma_tilde = -std::log(out.conformal_radius) / (2.0 * M_PI);
    return out;
}

Vec2 HexDomain::robin_gradient(Complex z) const {
    const Complex w = inverse_map(z);
    const Complex lp = sc_log_derivative(w);
    const Complex grad_w =
        -(std::conj(lp) - 2.0 * w / (1.0 - std::norm(w))) / (2.0 * M_PI);
    const Complex grad_z = grad_w / std::conj(sc_derivative(w));
    return {grad_z.real(), grad_z.imag()};
}

Vec2 HexDomain::vortex_rhs(double a, Complex z) const {
    return 0.5 * a * perp(robin_gradient(z));
}

} // namespace vortexlab
