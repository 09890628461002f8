// test_conformal_domain.cpp
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vortexlab/bounds.hpp"
#include "vortexlab/conformal_domain.hpp"

using namespace vortexlab;

TEST_CASE("derivative normalization and symmetry") {
    for (double delta : {0.4, 0.5, 0.75, 0.9}) {
        const HexDomain domain(delta);
        CHECK(std::abs(domain.sc_derivative(0.0) - 1.0) < 1e-15);
        std::mt19937 rng(7u);
        std::uniform_real_distribution<double> u(-0.7, 0.7);
        for (int k = 0; k < 25; ++k) {
            const Complex w{u(rng), u(rng)};
            const Complex f = domain.sc_derivative(w);
            CHECK(std::abs(domain.sc_derivative(std::conj(w)) - std::conj(f)) <
                  1e-13 * std::abs(f));
            CHECK(std::abs(domain.sc_derivative(-w) - f) < 1e-13 * std::abs(f));
        }
    }
    CHECK_THROWS_AS(HexDomain(0.0), DomainError);
    CHECK_THROWS_AS(HexDomain(1.0), DomainError);
}

TEST_CASE("derivative evaluation at a prevertex is rejected") {
    const HexDomain domain(0.75);
    CHECK_THROWS_AS(domain.sc_derivative(std::polar(1.0, M_PI / 3.0)), SingularityError);
}

TEST_CASE("Taylor data against a finite-difference oracle") {
    for (double delta : {0.5, 2.0 / 3.0, 0.75, 0.9}) {
        const HexDomain domain(delta);
        const TaylorData& t = domain.taylor();
        CHECK(std::abs(std::abs(t.s1) - 1.0) < 1e-12);
        CHECK(std::abs(t.s2) < 1e-12);
        CHECK(std::abs(std::abs(t.s3) - (6.0 * delta - 2.0)) < 1e-10);

        // Independent five-point stencils on the real axis, h = 3e-3.
        const double h = 3e-3;
        const auto f = [&](double x) { return domain.sc_derivative(Complex(x, 0.0)).real(); };
        const double d1 = (8.0 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12.0 * h);
        const double d2 =
            (-f(2 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2 * h)) /
            (12.0 * h * h);
        CHECK(std::abs(d1 - t.s2.real()) < 1e-8);
        CHECK(std::abs(d2 - t.s3.real()) < 1e-7);

        // Inverse-map Taylor magnitudes through the general relations.
        CHECK(t.t1_abs == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t.t3_abs == doctest::Approx(std::abs(6.0 * delta - 2.0)).epsilon(1e-9));
    }
}

TEST_CASE("Taylor remainder of the derivative stays bounded") {
    const double delta = 0.8;
    const HexDomain domain(delta);
    double prev_ratio = 0.0;
    for (double r : {1e-2, 5e-3, 2.5e-3}) {
        const Complex w{r, 0.4 * r};
        const Complex series = 1.0 - (3.0 * delta - 1.0) * w * w;
        const double ratio = std::abs(domain.sc_derivative(w) - series) / std::pow(r, 4.0);
        if (prev_ratio > 0.0) {
            CHECK(ratio < 2.0 * prev_ratio + 1.0);
        }
        prev_ratio = ratio;
    }
}

TEST_CASE("map basics: origin, path independence, Cauchy-Riemann") {
    const HexDomain domain(0.75);
    CHECK(std::abs(domain.sc_map(0.0)) == 0.0);

    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> u(-0.63, 0.63);
    for (int k = 0; k < 20; ++k) {
        const Complex w{u(rng), u(rng)};
        const Complex direct = domain.sc_map(w);
        const Complex mid = 0.5 * Complex{u(rng), u(rng)};
        const Complex two_leg = domain.map_increment(0.0, mid) + domain.map_increment(mid, w);
        CHECK(std::abs(direct - two_leg) < 1e-10);
    }

    const double h = 1e-5;
    for (const Complex w : {Complex(0.3, 0.2), Complex(-0.5, 0.4), Complex(0.0, 0.85)}) {
        const Complex sx = (domain.sc_map(w + h) - domain.sc_map(w - h)) / (2.0 * h);
        const Complex sy =
            (domain.sc_map(w + Complex(0, h)) - domain.sc_map(w - Complex(0, h))) /
            (2.0 * h);
        CHECK(std::abs(0.5 * (sx + Complex(0, 1) * sy)) < 1e-9);
    }
}

TEST_CASE("map symmetry: conjugation and sign") {
    const HexDomain domain(0.9);
    std::mt19937 rng(13u);
    std::uniform_real_distribution<double> u(-0.68, 0.68);
    for (int k = 0; k < 15; ++k) {
        const Complex w{u(rng), u(rng)};
        const Complex s = domain.sc_map(w);
        CHECK(std::abs(domain.sc_map(std::conj(w)) - std::conj(s)) < 1e-10);
        CHECK(std::abs(domain.sc_map(-w) + s) < 1e-10);
    }
}

TEST_CASE("boundary polyline: closed, symmetric, six vertices") {
    const HexDomain domain(0.75, 16, 360);
    const auto& boundary = domain.boundary();
    REQUIRE(boundary.size() >= 360);

    // Continuity: consecutive points stay close.
    double max_gap = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        const Vec2 a = boundary[i];
        const Vec2 b = boundary[(i + 1) % boundary.size()];
        max_gap = std::max(max_gap, norm(a - b));
        scale = std::max(scale, norm(a));
    }
    CHECK(max_gap < 0.12 * scale);

    // The first vertex is the image of w = 1: real and positive.
    CHECK(boundary.front().x > 0.1);
    CHECK(std::abs(boundary.front().y) < 1e-9);

    // Reflection symmetry across the x axis: the boundary set equals its
    // mirror (checked by nearest-point distance).
    double worst = 0.0;
    for (std::size_t i = 0; i < boundary.size(); i += 7) {
        const Vec2 mirrored{boundary[i].x, -boundary[i].y};
        double best = 1e300;
        for (const Vec2& p : boundary) best = std::min(best, norm(p - mirrored));
        worst = std::max(worst, best);
    }
    CHECK(worst < 1e-9);

    // Winding: the closed curve encircles the origin exactly once.
    double winding = 0.0;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        const Vec2 a = boundary[i];
        const Vec2 b = boundary[(i + 1) % boundary.size()];
        winding += std::atan2(a.x * b.y - a.y * b.x, dot(a, b));
    }
    CHECK(winding == doctest::Approx(2.0 * M_PI).epsilon(1e-9));
}

TEST_CASE("inverse map: fixed point, roundtrip, and the T''(0) = 0 criterion") {
    const HexDomain domain(0.9);
    CHECK(std::abs(domain.inverse_map(0.0)) == 0.0);

    std::mt19937 rng(17u);
    std::uniform_real_distribution<double> radius(0.0, 0.95);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int k = 0; k < 100; ++k) {
        const Complex w = std::polar(radius(rng), angle(rng));
        const Complex z = domain.sc_map(w);
        CHECK(std::abs(domain.inverse_map(z) - w) < 1e-10);
    }

    // T'' at the center via central differences of the inverse map.
    const double h = 1e-3;
    const Complex t_pp =
        (domain.inverse_map(Complex(h, 0)) - 2.0 * domain.inverse_map(Complex(0, 0)) +
         domain.inverse_map(Complex(-h, 0))) /
        (h * h);
    CHECK(std::abs(t_pp) < 1e-6);
}

TEST_CASE("Robin data: center values, boundary decay, domain error") {
    const HexDomain domain(0.75);
    const RobinData center = domain.robin_data(0.0);
    CHECK(center.conformal_radius == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(center.gamma_tilde == doctest::Approx(0.0).epsilon(1e-12));

    double prev = 2.0;
    for (double r : {0.5, 0.9, 0.99, 0.9999}) {
        const double value = domain.robin_data(Complex(r * 0.5, r * 0.5)).conformal_radius;
        CHECK(value < prev);
        prev = value;
    }
    CHECK(domain.robin_data(Complex(0.0, 0.99999)).conformal_radius < 1e-3);
    CHECK_THROWS_AS(domain.robin_data(Complex(1.0, 0.0)), DomainError);
}

TEST_CASE("Robin gradient: critical point, finite-difference oracle, Hessian signs") {
    for (double delta : {0.5, 0.9}) {
        const HexDomain domain(delta);
        const Vec2 g0 = domain.robin_gradient(0.0);
        CHECK(norm(g0) < 1e-12);

        std::mt19937 rng(23u);
        std::uniform_real_distribution<double> u(-0.25, 0.25);
        const double h = 1e-6;
        for (int k = 0; k < 10; ++k) {
            const Complex z{u(rng), u(rng)};
            const Vec2 grad = domain.robin_gradient(z);
            const auto gamma = [&](Complex p) {
                return domain.robin_data(domain.inverse_map(p)).gamma_tilde;
            };
            const double gx = (gamma(z + h) - gamma(z - h)) / (2.0 * h);
            const double gy = (gamma(z + Complex(0, h)) - gamma(z - Complex(0, h))) / (2.0 * h);
            CHECK(grad.x == doctest::Approx(gx).epsilon(1e-5));
            CHECK(grad.y == doctest::Approx(gy).epsilon(1e-5));
        }

        // Hessian at the center by differencing the gradient along the axes.
        const double hh = 1e-4;
        const double hxx =
            (domain.robin_gradient(Complex(hh, 0)).x - domain.robin_gradient(Complex(-hh, 0)).x) /
            (2.0 * hh);
        const double hyy =
            (domain.robin_gradient(Complex(0, hh)).y - domain.robin_gradient(Complex(0, -hh)).y) /
            (2.0 * hh);
        if (delta > 2.0 / 3.0) {
            CHECK(hxx * hyy < 0.0); // saddle
        } else {
            CHECK(hxx * hyy > 0.0); // definite: interior extremum of the radius
        }
        // Quantitative match with the threshold formulas lambda_+-.
        const DomainThresholds th = domain_thresholds(1.0, std::abs(6.0 * delta - 2.0), 1.0);
        CHECK(std::max(hxx, hyy) == doctest::Approx(th.lambda_plus).epsilon(1e-3));
        CHECK(std::min(hxx, hyy) == doctest::Approx(th.lambda_minus).epsilon(1e-3));
    }
}

TEST_CASE("single-vortex velocity: stationary center and Robin-level motion") {
    const HexDomain domain(0.9);
    CHECK(norm(domain.vortex_rhs(1.0, 0.0)) < 1e-12);

    // Short trajectory by explicit midpoint stepping; gamma_tilde must be
    // conserved along the motion at the step-accuracy level.
    Complex z{0.02, 0.01};
    const double gamma0 = domain.robin_data(domain.inverse_map(z)).gamma_tilde;
    const double dt = 0.02;
    for (int step = 0; step < 200; ++step) {
        const Vec2 v1 = domain.vortex_rhs(1.0, z);
        const Complex mid = z + 0.5 * dt * Complex(v1.x, v1.y);
        const Vec2 v2 = domain.vortex_rhs(1.0, mid);
        z += dt * Complex(v2.x, v2.y);
    }
    const double gamma1 = domain.robin_data(domain.inverse_map(z)).gamma_tilde;
    CHECK(std::abs(gamma1 - gamma0) < 1e-7);
}
