// linearization.hpp
// Jacobian of the point-vortex right-hand side at a configuration, its
// spectrum, and the instability data (lambda0, unstable eigenvector) together
// with the Lipschitz constants kappa1 and kappa2 entering the concentration
// threshold.
#pragma once

#include <Eigen/Dense>

#include "vortexlab/vortex_core.hpp"

namespace vortexlab {

// Dense 2N x 2N Jacobian Df(Z), coordinate ordering (p_1, q_1, ..., p_N, q_N).
// Built from the analytic entry formulas: for i != j the 2x2 block (i,j) is
// a_j * C_alpha times
//
//   [ -w_q (a+1) w_p / r^(a+3)            -w_q (a+1) w_q / r^(a+3) + 1/r^(a+1) ]
//   [  w_p (a+1) w_p / r^(a+3) - 1/r^(a+1)  w_p (a+1) w_q / r^(a+3)            ]
//
// with w = z_i - z_j, r = |w|; the diagonal block is minus the row sum of the
// weighted off-diagonal blocks. Each diagonal block is traceless, so the
// matrix has zero trace.
Eigen::MatrixXd jacobian_analytic(const AlphaModel& model, const Configuration& z);

// Central finite differences of velocity_field in each of the 2N coordinates;
// independent check of jacobian_analytic. step must be positive and well below
// the minimal pair distance.
Eigen::MatrixXd jacobian_fd(const AlphaModel& model, const Configuration& z, double step);

struct SpectralReport {
    Eigen::VectorXcd eigenvalues;          // full spectrum, sorted by (Re, Im)
    double lambda0 = 0.0;                  // max real part, clamped at 0
    bool has_real_unstable_vector = false;
    Eigen::VectorXd unstable_eigenvector;  // unit sup-norm, first nonzero > 0
    double kappa1 = 0.0;  // C_alpha max_i sum_{j != i} |a_j| / |z_i - z_j|^(alpha+1)
    double kappa2 = 0.0;  // largest singular value of Df
    double kappa2_matrix = 0.0;  // same, for Df / C_alpha (the unscaled entry matrix)
};

// Dense eigenanalysis of the Jacobian at z (real Schur / shifted-QR via
// Eigen). Intended for small systems; throws DomainError beyond 2N = 64.
// When the largest real part is attained by a real simple eigenvalue, the
// corresponding real eigenvector is reported with unit sup-norm and its first
// nonzero coordinate positive; complex-dominant spectra set
// has_real_unstable_vector = false and leave the vector empty.
SpectralReport spectrum(const Eigen::MatrixXd& m, const AlphaModel& model,
                        const Configuration& z);

} // namespace vortexlab
