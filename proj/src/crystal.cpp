// crystal.cpp
#include "vortexlab/crystal.hpp"

#include <complex>
#include <string>

namespace vortexlab {

namespace {

void validate(const CrystalSpec& spec) {
    if (spec.n_total < 3) {
        throw DomainError("crystal: n_total must be >= 3, got " +
                          std::to_string(spec.n_total));
    }
}

} // namespace

double center_intensity(const CrystalSpec& spec) {
    validate(spec);
    const int ring = spec.n_total - 1;
    const double alpha = spec.model.alpha;
    std::complex<double> sum = 0.0;
    for (int j = 1; j <= ring - 1; ++j) {
        const std::complex<double> zeta_j =
            std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / ring);
        const std::complex<double> d = 1.0 - zeta_j;
        sum += d / std::pow(std::abs(d), alpha + 1.0);
    }
    return -sum.real();
}

Configuration build_crystal(const CrystalSpec& spec) {
    validate(spec);
    const int ring = spec.n_total - 1;
    Configuration z;
    z.vortices.reserve(spec.n_total);
    for (int j = 1; j <= ring; ++j) {
        // j % ring keeps the last vortex at exactly (1,0).
        const double theta = 2.0 * M_PI * static_cast<double>(j % ring) / ring;
        z.vortices.push_back({{std::cos(theta), std::sin(theta)}, 1.0});
    }
    z.vortices.push_back({{0.0, 0.0}, center_intensity(spec)});
    return z;
}

double stationarity_residual(const AlphaModel& model, const Configuration& z) {
    double sup = 0.0;
    for (const Vec2& v : velocity_field(model, z)) {
        sup = std::max(sup, norm(v));
    }
    return sup;
}

} // namespace vortexlab
