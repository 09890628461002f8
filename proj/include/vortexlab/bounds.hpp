// bounds.hpp
// Closed-form thresholds: the concentration exponent condition nu > phi(beta0),
// the N=3 curve g(alpha), the generic crystal curve, the escape-time factor
// xi1, and the bounded-domain saddle criteria.
#pragma once

#include <vector>

#include "vortexlab/errors.hpp"

namespace vortexlab {

// phi(beta) = 2 (kappa1 + kappa2)/lambda0 (1 - beta) + 2 beta. Strictly
// decreasing on [0,1] whenever kappa1 + kappa2 > lambda0.
double phi_exponent(double beta, double kappa1, double kappa2, double lambda0);

// The admissible-concentration threshold: phi evaluated at the critical
// beta0 = (4 - 2 alpha)/(5 - alpha), i.e.
//   (2/(5-alpha)) ( (1+alpha)(kappa1+kappa2)/lambda0 + 4 - 2 alpha ).
double nu_threshold(double alpha, double kappa1, double kappa2, double lambda0);

// Smallest admissible escape-time factor (1 - beta)/lambda0.
double xi1_threshold(double beta, double lambda0);

// beta0 solving phi(beta) = nu for a given nu (bisection to 1e-12). Requires
// phi(1) = 2 < nu < phi(0).
double beta_threshold(double nu, double kappa1, double kappa2, double lambda0);

struct NuCurvePoint {
    double alpha;
    double nu_min;
    double lambda0;
    double kappa1;
    double kappa2;
    bool complex_dominant; // max real part attained only by a complex pair
};

// nu_threshold along an alpha grid for the N-vortex crystal: builds the
// crystal, linearizes, and assembles the threshold at each point.
std::vector<NuCurvePoint> nu_curve(int n, const std::vector<double>& alphas);

// Closed forms for the N=3 crystal (test and report references).
double n3_lambda0(double alpha);   // C_alpha (2 - 2^-alpha) sqrt(alpha)
double n3_kappa1(double alpha);    // 2 C_alpha
double n3_kappa2(double alpha);    // C_alpha 2^-alpha alpha sqrt(3 (1 + 2^(1+2alpha)))
double n3_nu_bound(double alpha);  // g(alpha), the N=3 threshold curve

// Scale-invariant constant: t3/t1^3 > c0 makes the bounded-domain threshold
// drop below 4. c0 = (15 + 9 sqrt(65)) / 28.
double saddle_ratio_c0();

struct DomainThresholds {
    bool saddle = false;       // |T'''| > 2 |T'|^3
    double lambda_plus = 0.0;  // (2 t1^2 + t3/t1) / (2 pi)
    double lambda_minus = 0.0; // (2 t1^2 - t3/t1) / (2 pi)
    double lambda0 = 0.0;      // |a| sqrt(t3^2 - 4 t1^6) / (4 pi t1), saddle only
    double nu_min = 0.0;       // ((5/3) t3 + 2 t1^3)/sqrt(t3^2 - 4 t1^6) + 1, saddle only
};

// Single-vortex instability data from the conformal-map Taylor magnitudes
// t1 = |T'(z*)|, t3 = |T'''(z*)| and the vortex intensity a.
DomainThresholds domain_thresholds(double t1, double t3, double a);

} // namespace vortexlab
