// test_vortex_core.cpp
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vortexlab/vortex_core.hpp"

using namespace vortexlab;

namespace {

// Independent oracle: the pair potential written from the fundamental
// solution with s = (3 - alpha)/2, differentiated by central differences.
// Its radial-derivative magnitude must equal C_alpha r^(-alpha).
double potential_s(double alpha, double r) {
    if (alpha == 1.0) return std::log(r) / (2.0 * M_PI);
    const double s = 0.5 * (3.0 - alpha);
    const double coeff =
        std::tgamma(1.0 - s) / (std::pow(2.0, 2.0 * s) * M_PI * std::tgamma(s));
    return coeff * std::pow(r, -(2.0 - 2.0 * s));
}

double fd_radial_derivative(double alpha, double r, double h) {
    return (potential_s(alpha, r + h) - potential_s(alpha, r - h)) / (2.0 * h);
}

} // namespace

TEST_CASE("coupling constant: Euler endpoint and continuity") {
    CHECK(coupling_constant(1.0) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-15));
    CHECK(coupling_constant(1.0 + 1e-9) ==
          doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-7));
    CHECK_THROWS_AS(coupling_constant(0.99), DomainError);
    CHECK_THROWS_AS(coupling_constant(2.0), DomainError);
}

TEST_CASE("coupling constant matches finite differences of the s-potential") {
    for (double alpha : {1.1, 1.25, 1.5, 1.75, 1.9, 1.99}) {
        const double c = coupling_constant(alpha);
        for (double r : {0.5, 1.0, 2.0, 3.7}) {
            const double fd = std::abs(fd_radial_derivative(alpha, r, 1e-6 * r));
            CHECK(c * std::pow(r, -alpha) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("kernel values and error paths") {
    const AlphaModel euler(1.0);
    const Vec2 k = kernel(euler, {0.0, 0.0}, {1.0, 0.0});
    CHECK(k.x == doctest::Approx(0.0).epsilon(1e-16));
    CHECK(k.y == doctest::Approx(-1.0 / (2.0 * M_PI)).epsilon(1e-15));

    // |K| = C_alpha |x-y|^(-alpha); separation 2 at alpha = 1 gives 1/(4 pi).
    const Vec2 k2 = kernel(euler, {1.0, 1.0}, {1.0, 3.0});
    CHECK(norm(k2) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-15));

    CHECK_THROWS_AS(kernel(euler, {1.0, 2.0}, {1.0, 2.0}), SingularityError);
}

TEST_CASE("kernel antisymmetry and perpendicularity on random pairs") {
    std::mt19937 rng(12345u);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    for (int trial = 0; trial < 300; ++trial) {
        const AlphaModel model(1.0 + 0.999 * (trial % 10) / 10.0);
        Vec2 x{coord(rng), coord(rng)}, y{coord(rng), coord(rng)};
        if (norm(x - y) < 1e-2) continue;
        const Vec2 a = kernel(model, x, y);
        const Vec2 b = kernel(model, y, x);
        CHECK(norm(a + b) <= 1e-15 * norm(a));
        CHECK(std::abs(dot(x - y, a)) <= 1e-14 * norm(a) * norm(x - y));
    }
}

TEST_CASE("velocity field: stationary three-vortex configuration") {
    // Ring pair at (+-1, 0) with the compensating center intensity -2^-alpha.
    for (double alpha : {1.0, 1.4, 1.9}) {
        const AlphaModel model(alpha);
        Configuration z;
        z.vortices = {{{-1.0, 0.0}, 1.0},
                      {{1.0, 0.0}, 1.0},
                      {{0.0, 0.0}, -std::pow(2.0, -alpha)}};
        for (const Vec2& v : velocity_field(model, z)) {
            CHECK(norm(v) < 1e-12);
        }
    }
}

TEST_CASE("velocity field: corotating pair and single vortex") {
    const AlphaModel euler(1.0);
    Configuration pair;
    pair.vortices = {{{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 1.0}};
    const auto v = velocity_field(euler, pair);
    // Counterclockwise rigid rotation: speed C_1 / 2 at separation 2.
    CHECK(v[0].x == doctest::Approx(0.0).epsilon(1e-16));
    CHECK(v[0].y == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(v[1].y == doctest::Approx(-1.0 / (4.0 * M_PI)).epsilon(1e-14));

    Configuration single;
    single.vortices = {{{0.3, -0.7}, 2.5}};
    const auto v1 = velocity_field(euler, single);
    CHECK(v1[0].x == 0.0);
    CHECK(v1[0].y == 0.0);
}

TEST_CASE("velocity field equals a brute-force double loop") {
    std::mt19937 rng(999u);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> strength(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const AlphaModel model(1.0 + 0.9 * (trial % 4) / 4.0);
        Configuration z;
        const int n = 2 + trial % 11;
        while (z.size() < n) {
            const Vec2 p{coord(rng), coord(rng)};
            bool ok = true;
            for (const auto& v : z.vortices) ok = ok && norm(v.position - p) > 0.1;
            double a = strength(rng);
            if (std::abs(a) < 0.1) a = 0.5;
            if (ok) z.vortices.push_back({p, a});
        }
        const auto fast = velocity_field(model, z);
        for (int i = 0; i < n; ++i) {
            Vec2 expect{0.0, 0.0};
            for (int j = n - 1; j >= 0; --j) { // reversed order on purpose
                if (j == i) continue;
                expect += z.vortices[j].intensity *
                          kernel(model, z.vortices[i].position, z.vortices[j].position);
            }
            CHECK(norm(fast[i] - expect) <= 1e-14 * std::max(1.0, norm(expect)));
        }
    }
}

TEST_CASE("velocity field names the offending pair on coincidence") {
    const AlphaModel euler(1.0);
    Configuration z;
    z.vortices = {{{0.0, 0.0}, 1.0}, {{1.0, 0.0}, 1.0}, {{1.0, 0.0}, -1.0}};
    try {
        velocity_field(euler, z);
        FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
        CHECK(e.first == 1);
        CHECK(e.second == 2);
    }
}

TEST_CASE("invariants: symmetric pair and single vortex") {
    const AlphaModel euler(1.0);
    Configuration pair;
    pair.vortices = {{{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 1.0}};
    const InvariantSnapshot snap = invariants(euler, pair);
    CHECK(snap.linear_momentum.x == doctest::Approx(0.0));
    CHECK(snap.linear_momentum.y == doctest::Approx(0.0));
    CHECK(snap.angular_impulse == doctest::Approx(2.0));
    CHECK(snap.hamiltonian == doctest::Approx(std::log(2.0) / (2.0 * M_PI)));

    Configuration single;
    single.vortices = {{{0.2, 0.4}, 3.0}};
    CHECK(invariants(euler, single).hamiltonian == 0.0);
}

TEST_CASE("pair potential gradient matches the kernel magnitude") {
    for (double alpha : {1.0, 1.3, 1.7, 1.95}) {
        const AlphaModel model(alpha);
        for (double r : {0.4, 1.0, 2.5}) {
            const double h = 1e-6 * r;
            const double fd =
                (pair_potential(model, r + h) - pair_potential(model, r - h)) / (2.0 * h);
            CHECK(fd == doctest::Approx(model.c_alpha * std::pow(r, -alpha)).epsilon(1e-9));
        }
    }
}
