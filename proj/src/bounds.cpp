// bounds.cpp
#include "vortexlab/bounds.hpp"

#include <cmath>
#include <string>

#include "vortexlab/crystal.hpp"
#include "vortexlab/linearization.hpp"

namespace vortexlab {

double phi_exponent(double beta, double kappa1, double kappa2, double lambda0) {
    if (!(lambda0 > 0.0)) {
        throw DomainError("phi_exponent: lambda0 must be positive (no instability)");
    }
    return 2.0 * (kappa1 + kappa2) / lambda0 * (1.0 - beta) + 2.0 * beta;
}

double nu_threshold(double alpha, double kappa1, double kappa2, double lambda0) {
    if (!(alpha >= 1.0 && alpha < 2.0)) {
        throw DomainError("nu_threshold: alpha must lie in [1,2)");
    }
    if (!(lambda0 > 0.0)) {
        throw DomainError("nu_threshold: lambda0 must be positive (no instability)");
    }
    return phi_exponent((4.0 - 2.0 * alpha) / (5.0 - alpha), kappa1, kappa2, lambda0);
}

double xi1_threshold(double beta, double lambda0) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError("xi1_threshold: beta must lie in (0,1)");
    }
    if (!(lambda0 > 0.0)) {
        throw DomainError("xi1_threshold: lambda0 must be positive");
    }
    return (1.0 - beta) / lambda0;
}

double beta_threshold(double nu, double kappa1, double kappa2, double lambda0) {
    const double lo_val = phi_exponent(1.0, kappa1, kappa2, lambda0); // = 2
    const double hi_val = phi_exponent(0.0, kappa1, kappa2, lambda0);
    if (!(nu > lo_val && nu < hi_val)) {
        throw DomainError("beta_threshold: nu outside (phi(1), phi(0)) = (" +
                          std::to_string(lo_val) + ", " + std::to_string(hi_val) + ")");
    }
    // phi is strictly decreasing, so bisect.
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (phi_exponent(mid, kappa1, kappa2, lambda0) > nu) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<NuCurvePoint> nu_curve(int n, const std::vector<double>& alphas) {
    std::vector<NuCurvePoint> curve;
    curve.reserve(alphas.size());
    for (double alpha : alphas) {
        const CrystalSpec spec{n, AlphaModel(alpha)};
        const Configuration z = build_crystal(spec);
        const Eigen::MatrixXd df = jacobian_analytic(spec.model, z);
        const SpectralReport rep = spectrum(df, spec.model, z);
        NuCurvePoint pt;
        pt.alpha = alpha;
        pt.lambda0 = rep.lambda0;
        pt.kappa1 = rep.kappa1;
        pt.kappa2 = rep.kappa2;
        pt.complex_dominant = !rep.has_real_unstable_vector;
        pt.nu_min = nu_threshold(alpha, rep.kappa1, rep.kappa2, rep.lambda0);
        curve.push_back(pt);
    }
    return curve;
}

double n3_lambda0(double alpha) {
    return coupling_constant(alpha) * (2.0 - std::pow(2.0, -alpha)) * std::sqrt(alpha);
}

double n3_kappa1(double alpha) { return 2.0 * coupling_constant(alpha); }

double n3_kappa2(double alpha) {
    return coupling_constant(alpha) * std::pow(2.0, -alpha) * alpha *
           std::sqrt(3.0 * (1.0 + std::pow(2.0, 1.0 + 2.0 * alpha)));
}

double n3_nu_bound(double alpha) {
    return nu_threshold(alpha, n3_kappa1(alpha), n3_kappa2(alpha), n3_lambda0(alpha));
}

double saddle_ratio_c0() { return (15.0 + 9.0 * std::sqrt(65.0)) / 28.0; }

DomainThresholds domain_thresholds(double t1, double t3, double a) {
    if (!(t1 > 0.0)) {
        throw DomainError("domain_thresholds: |T'(z*)| must be positive (degenerate map)");
    }
    if (t3 < 0.0) {
        throw DomainError("domain_thresholds: |T'''(z*)| must be nonnegative");
    }
    DomainThresholds out;
    out.lambda_plus = (2.0 * t1 * t1 + t3 / t1) / (2.0 * M_PI);
    out.lambda_minus = (2.0 * t1 * t1 - t3 / t1) / (2.0 * M_PI);
    out.saddle = t3 > 2.0 * t1 * t1 * t1;
    if (out.saddle) {
        const double disc = t3 * t3 - 4.0 * std::pow(t1, 6.0);
        out.lambda0 = std::abs(a) / (4.0 * M_PI * t1) * std::sqrt(disc);
        out.nu_min = ((5.0 / 3.0) * t3 + 2.0 * t1 * t1 * t1) / std::sqrt(disc) + 1.0;
    }
    return out;
}

} // namespace vortexlab
