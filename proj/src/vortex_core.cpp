// vortex_core.cpp
#include "vortexlab/vortex_core.hpp"

#include <limits>
#include <string>

namespace vortexlab {

double coupling_constant(double alpha) {
    if (!(alpha >= 1.0 && alpha < 2.0)) {
        throw DomainError("coupling_constant: alpha must lie in [1,2), got " +
                          std::to_string(alpha));
    }
    return std::tgamma(0.5 * (alpha + 1.0)) /
           (std::pow(2.0, 2.0 - alpha) * M_PI * std::tgamma(0.5 * (3.0 - alpha)));
}

Vec2 kernel(const AlphaModel& model, Vec2 x, Vec2 y) {
    const Vec2 d = x - y;
    const double r = norm(d);
    if (r == 0.0) {
        throw SingularityError("kernel: evaluation at coincident points");
    }
    const double scale = model.c_alpha / std::pow(r, model.alpha + 1.0);
    return scale * perp(d);
}

double pair_potential(const AlphaModel& model, double r) {
    if (!(r > 0.0)) {
        throw SingularityError("pair_potential: separation must be positive");
    }
    if (model.alpha == 1.0) {
        return std::log(r) / (2.0 * M_PI);
    }
    return -model.c_alpha / (model.alpha - 1.0) * std::pow(r, 1.0 - model.alpha);
}

double Configuration::min_pair_distance() const {
    const int n = size();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            best = std::min(best, norm(vortices[i].position - vortices[j].position));
        }
    }
    return best;
}

double Configuration::sup_distance(const Configuration& other) const {
    if (other.size() != size()) {
        throw DomainError("sup_distance: size mismatch");
    }
    double sup = 0.0;
    for (int i = 0; i < size(); ++i) {
        sup = std::max(sup, norm(vortices[i].position - other.vortices[i].position));
    }
    return sup;
}

std::vector<double> Configuration::flatten() const {
    std::vector<double> flat;
    flat.reserve(2 * vortices.size());
    for (const auto& v : vortices) {
        flat.push_back(v.position.x);
        flat.push_back(v.position.y);
    }
    return flat;
}

void Configuration::set_positions(std::span<const double> flat) {
    if (flat.size() != 2 * vortices.size()) {
        throw DomainError("set_positions: coordinate count mismatch");
    }
    for (std::size_t i = 0; i < vortices.size(); ++i) {
        vortices[i].position = {flat[2 * i], flat[2 * i + 1]};
    }
}

std::vector<Vec2> velocity_field(const AlphaModel& model, const Configuration& z) {
    const int n = z.size();
    std::vector<Vec2> v(n);
    for (int i = 0; i < n; ++i) {
        Vec2 sum{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vec2 d = z.vortices[i].position - z.vortices[j].position;
            const double r = norm(d);
            if (r == 0.0) {
                throw SingularityError("velocity_field: coincident vortices " +
                                           std::to_string(i) + "," + std::to_string(j),
                                       i, j);
            }
            const double scale =
                z.vortices[j].intensity * model.c_alpha / std::pow(r, model.alpha + 1.0);
            sum += scale * perp(d);
        }
        v[i] = sum;
    }
    return v;
}

InvariantSnapshot invariants(const AlphaModel& model, const Configuration& z) {
    InvariantSnapshot snap;
    const int n = z.size();
    for (int i = 0; i < n; ++i) {
        const auto& vi = z.vortices[i];
        snap.linear_momentum += vi.intensity * vi.position;
        snap.angular_impulse += vi.intensity * norm_sq(vi.position);
        for (int j = i + 1; j < n; ++j) {
            const auto& vj = z.vortices[j];
            const double r = norm(vi.position - vj.position);
            if (r == 0.0) {
                throw SingularityError("invariants: coincident vortices", i, j);
            }
            snap.hamiltonian += vi.intensity * vj.intensity * pair_potential(model, r);
        }
    }
    return snap;
}

} // namespace vortexlab
