// vortex_core.hpp
// The alpha-model interaction kernel, the point-vortex right-hand side, and
// the conserved quantities used to validate integration.
//
// The family is parameterized by alpha in [1,2): alpha = 1 is the Euler
// kernel, alpha -> 2 approaches SQG. All interactions use
//
//     K(x, y) = C_alpha (x - y)^perp / |x - y|^(alpha+1),   (p,q)^perp = (-q,p).
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "vortexlab/errors.hpp"

namespace vortexlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
inline double norm_sq(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Coupling constant of the alpha-kernel, the closed form obtained by
// differentiating the fundamental solution of the fractional Laplacian with
// s = (3 - alpha)/2:
//
//     C_alpha = Gamma((alpha+1)/2) / (2^(2-alpha) * pi * Gamma((3-alpha)/2)).
//
// Continuous on [1,2), equal to 1/(2*pi) at alpha = 1.
double coupling_constant(double alpha);

// Interaction exponent plus its coupling constant. Constructing the model
// validates alpha in [1,2) and fills in C_alpha.
struct AlphaModel {
    double alpha;
    double c_alpha;

    explicit AlphaModel(double alpha_) : alpha(alpha_), c_alpha(coupling_constant(alpha_)) {}
};

// K(x,y) as above. Throws SingularityError when x == y.
Vec2 kernel(const AlphaModel& model, Vec2 x, Vec2 y);

// Pair interaction potential G_alpha as a function of separation r > 0,
// normalized so that grad_x G_alpha(x,y) = C_alpha (x-y)/|x-y|^(alpha+1):
// (1/2pi) ln r for alpha = 1, -C_alpha/(alpha-1) r^(1-alpha) otherwise.
double pair_potential(const AlphaModel& model, double r);

struct PointVortex {
    Vec2 position;
    double intensity = 0.0; // circulation a_i, nonzero
};

// Ordered list of point vortices; the state of the system.
struct Configuration {
    std::vector<PointVortex> vortices;

    int size() const { return static_cast<int>(vortices.size()); }
    double min_pair_distance() const;

    // |Z - Z'|_inf = max_i |z_i - z_i'|; configurations must have equal size.
    double sup_distance(const Configuration& other) const;

    // Flat coordinates (p_1, q_1, ..., p_N, q_N) for the ODE engine.
    std::vector<double> flatten() const;
    void set_positions(std::span<const double> flat);
};

// Right-hand side of the point-vortex system: component i is
// sum_{j != i} a_j K(z_i, z_j), summed in ascending j for reproducibility.
// Throws SingularityError naming the offending pair on coincident positions.
std::vector<Vec2> velocity_field(const AlphaModel& model, const Configuration& z);

// First integrals of the dynamics, used as integrator diagnostics only.
struct InvariantSnapshot {
    double hamiltonian = 0.0;      // sum_{i<j} a_i a_j G_alpha(|z_i - z_j|)
    Vec2 linear_momentum;          // sum_i a_i z_i
    double angular_impulse = 0.0;  // sum_i a_i |z_i|^2
};

InvariantSnapshot invariants(const AlphaModel& model, const Configuration& z);

} // namespace vortexlab
