// crystal.hpp
// Stationary vortex crystals: a regular (N-1)-polygon of unit vortices plus a
// compensating center vortex whose intensity cancels the ring velocity.
#pragma once

#include "vortexlab/vortex_core.hpp"

namespace vortexlab {

struct CrystalSpec {
    int n_total;       // N >= 3 vortices in total (ring of N-1 plus center)
    AlphaModel model;
};

// Center intensity a_N = -sum_{j=1}^{N-2} (1 - zeta^j) / |1 - zeta^j|^(alpha+1)
// with zeta = exp(2*pi*i/(N-1)). The conjugate pairing zeta^j <-> zeta^(N-1-j)
// cancels the imaginary parts; the result is real and negative.
double center_intensity(const CrystalSpec& spec);

// Ring vortices at the (N-1)-th roots of unity, indexed j = 1..N-1 at angles
// 2*pi*j/(N-1) (vortex N-1 lands at (1,0)), unit intensity; center vortex of
// intensity center_intensity(spec) at the origin. The result is stationary.
Configuration build_crystal(const CrystalSpec& spec);

// ||f(Z)||_inf: the largest velocity magnitude over the configuration.
double stationarity_residual(const AlphaModel& model, const Configuration& z);

} // namespace vortexlab
