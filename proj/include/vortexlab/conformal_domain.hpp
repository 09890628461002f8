// conformal_domain.hpp
// The biconvex hexagonal domains Omega_delta: a Schwarz-Christoffel map from
// the unit disk with prevertices at the sixth roots of unity, its Robin
// function / conformal radius field, and single-vortex dynamics in the domain.
//
// The map derivative is the product over prevertices v_k = exp(i k pi / 3)
//
//     S'(w) = prod_k (1 - w conj(v_k))^(-mu_k),
//     mu_0 = mu_3 = 1 - 2 delta,   mu_1 = mu_2 = mu_4 = mu_5 = delta,
//
// each factor through the principal logarithm. On the closed disk
// Re(1 - w conj(v_k)) >= 0, so every factor is continuous away from its
// prevertex; this is the per-prevertex radially-outward-cut branch, with the
// unimodular prefactors normalized away so that S'(0) = 1 exactly. That
// normalization gives S real Taylor coefficients, hence the two reflection
// symmetries S(conj w) = conj S(w) and S(-w) = -S(w).
#pragma once

#include <complex>
#include <vector>

#include "vortexlab/vortex_core.hpp"

namespace vortexlab {

using Complex = std::complex<double>;

struct TaylorData {
    Complex s1;     // S'(0), exactly 1 by normalization
    Complex s2;     // S''(0)
    Complex s3;     // S'''(0)
    double t1_abs;  // |T'(0)| via T' = 1/S'
    double t3_abs;  // |T'''(0)| via T''' = -S'''/S'^4 + 3 S''^2/S'^5
};

struct RobinData {
    double gamma_tilde;      // -ln(conformal_radius) / (2 pi)
    double conformal_radius; // |S'(w)| (1 - |w|^2)
};

class HexDomain {
public:
    // Builds the cached map data: Taylor coefficients at 0 (Cauchy ring),
    // boundary polyline (radial quadrature, Gauss-Jacobi panels into the
    // corner prevertices), and the Newton seed grid for inversion.
    // delta in (0,1); the saddle regime of interest is delta > 2/3.
    explicit HexDomain(double delta, int quad_order = 16, int boundary_samples = 720);

    double delta() const { return delta_; }
    int quad_order() const { return quad_order_; }
    const TaylorData& taylor() const { return taylor_; }
    const std::vector<Vec2>& boundary() const { return boundary_; }

    // S'(w) on the closed disk minus prevertices.
    Complex sc_derivative(Complex w) const;
    // d/dw log S'(w) = S''/S'.
    Complex sc_log_derivative(Complex w) const;

    // S(w) = integral of S' along the straight segment [0, w]; S(0) = 0.
    // Boundary points at prevertex angles route through a weighted end panel.
    Complex sc_map(Complex w) const;
    // Integral of S' along the straight segment [a, b] (both inside the
    // closed disk); exposed for path-independence checks and reused by the
    // Newton inversion.
    Complex map_increment(Complex a, Complex b) const;

    // T = S^{-1} by Newton iteration from a cached seed grid; residual
    // |S(w) - z| < 1e-12 max(1, |z|) or InversionError after 50 iterations.
    Complex inverse_map(Complex z) const;

    // Conformal radius and Robin function pulled back to the disk, |w| < 1.
    RobinData robin_data(Complex w) const;

    // grad gamma_tilde at an interior z: the analytic w-plane gradient of
    // -(1/2pi) ln(|S'(w)|(1-|w|^2)) transported by 1/conj(S'(w)).
    Vec2 robin_gradient(Complex z) const;

    // Single-vortex velocity (a/2) perp(grad gamma_tilde).
    Vec2 vortex_rhs(double a, Complex z) const;

private:
    Complex log_sc_derivative(Complex w) const;
    Complex vertex_position(int k) const;
    void build_taylor();
    void build_boundary(int samples);
    void build_seed_grid();

    double delta_;
    int quad_order_;
    std::vector<double> gl_nodes_, gl_weights_;            // order q on [0,1]
    std::vector<double> gl_half_nodes_, gl_half_weights_;  // order q/2
    // Weighted end panels per prevertex type, on [0,1] with the singular
    // factor at t = 1 removed.
    std::vector<double> gj_corner_nodes_, gj_corner_weights_; // weight (1-t)^(-delta)
    std::vector<double> gj_pole_nodes_, gj_pole_weights_;     // weight (1-t)^(2 delta - 1)
    TaylorData taylor_{};
    std::vector<Vec2> boundary_;
    std::vector<Complex> seed_w_, seed_s_;
};

} // namespace vortexlab
