// test_bounds.cpp
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vortexlab/bounds.hpp"

using namespace vortexlab;

TEST_CASE("nu threshold closed form for the three-vortex family") {
    // Independent arithmetic for g(alpha).
    const auto g = [](double a) {
        const double ratio = (2.0 + std::pow(2.0, -a) * a *
                                        std::sqrt(3.0 * (1.0 + std::pow(2.0, 1.0 + 2.0 * a)))) /
                             ((2.0 - std::pow(2.0, -a)) * std::sqrt(a));
        return 2.0 / (5.0 - a) * ((1.0 + a) * ratio + 4.0 - 2.0 * a);
    };
    for (double alpha : {1.0, 1.2, 1.5, 1.8, 1.95}) {
        CHECK(n3_nu_bound(alpha) == doctest::Approx(g(alpha)).epsilon(1e-13));
    }
    CHECK(g(1.0) == doctest::Approx(4.0653841409).epsilon(1e-9));
    CHECK(n3_nu_bound(1.0) > 4.0);
}

TEST_CASE("pipeline curve matches closed forms and reference values") {
    const auto n3 = nu_curve(3, {1.0});
    CHECK(n3.front().nu_min == doctest::Approx(n3_nu_bound(1.0)).epsilon(1e-12));

    const auto n7 = nu_curve(7, {1.0});
    CHECK(n7.front().nu_min ==
          doctest::Approx((12.0 + 5.0 * std::sqrt(7.0)) / 9.0 + 1.0).epsilon(1e-12));
    CHECK(n7.front().nu_min < 4.0);
    CHECK(n7.front().lambda0 == doctest::Approx(9.0 / (4.0 * M_PI)).epsilon(1e-12));
    CHECK(n7.front().kappa1 == doctest::Approx(3.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("nine-vortex curve stays below four") {
    std::vector<double> grid;
    for (int k = 0; k <= 19; ++k) grid.push_back(1.0 + 0.05 * k);
    for (const auto& pt : nu_curve(9, grid)) {
        CHECK(pt.nu_min < 4.0);
        CHECK(pt.nu_min > 2.0);
        CHECK_FALSE(pt.complex_dominant);
    }
}

TEST_CASE("nu threshold exceeds two on crystal families") {
    for (int n : {3, 7, 9}) {
        for (double alpha : {1.0, 1.3, 1.6, 1.9}) {
            const auto curve = nu_curve(n, {alpha});
            CHECK(curve.front().nu_min > 2.0);
        }
    }
}

TEST_CASE("phi is strictly decreasing when kappa2 >= lambda0") {
    const double k1 = 0.3, k2 = 0.5, lam = 0.2;
    double prev = phi_exponent(0.0, k1, k2, lam);
    for (double beta = 0.05; beta <= 1.0; beta += 0.05) {
        const double value = phi_exponent(beta, k1, k2, lam);
        CHECK(value < prev);
        prev = value;
    }
    CHECK(phi_exponent(1.0, k1, k2, lam) == doctest::Approx(2.0));
}

TEST_CASE("xi1 threshold values") {
    CHECK(xi1_threshold(0.5, 3.0 / (4.0 * M_PI)) ==
          doctest::Approx(0.5 * 4.0 * M_PI / 3.0).epsilon(1e-14));
    CHECK(xi1_threshold(0.5, 9.0 / (4.0 * M_PI)) ==
          doctest::Approx(0.5 * 4.0 * M_PI / 9.0).epsilon(1e-14));
    CHECK(xi1_threshold(1.0 - 1e-12, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(xi1_threshold(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(xi1_threshold(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(xi1_threshold(0.5, 0.0), DomainError);
}

TEST_CASE("beta threshold solves phi(beta) = nu") {
    const double k1 = n3_kappa1(1.0), k2 = n3_kappa2(1.0), lam = n3_lambda0(1.0);
    const double nu = 4.5;
    const double beta0 = beta_threshold(nu, k1, k2, lam);
    CHECK(phi_exponent(beta0, k1, k2, lam) == doctest::Approx(nu).epsilon(1e-9));
    // For nu above the critical threshold, beta0 lies below (4-2a)/(5-a).
    CHECK(nu > nu_threshold(1.0, k1, k2, lam));
    CHECK(beta0 < (4.0 - 2.0) / (5.0 - 1.0));
    CHECK_THROWS_AS(beta_threshold(1.5, k1, k2, lam), DomainError);
}

TEST_CASE("bounded-domain thresholds") {
    // The delta = 0.9 hexagonal data: t1 = 1, t3 = 6 delta - 2.
    const DomainThresholds th = domain_thresholds(1.0, 6.0 * 0.9 - 2.0, 1.0);
    CHECK(th.saddle);
    CHECK(th.lambda0 ==
          doctest::Approx(std::sqrt(12.0 * 0.9 * (3.0 * 0.9 - 2.0)) / (4.0 * M_PI))
              .epsilon(1e-14));
    CHECK(th.lambda_plus == doctest::Approx((2.0 + 3.4) / (2.0 * M_PI)));
    CHECK(th.lambda_minus == doctest::Approx((2.0 - 3.4) / (2.0 * M_PI)));

    // Boundary case t3/t1^3 = c0 gives exactly nu_min = 4.
    const double c0 = saddle_ratio_c0();
    CHECK(c0 == doctest::Approx((15.0 + 9.0 * std::sqrt(65.0)) / 28.0).epsilon(1e-15));
    CHECK(domain_thresholds(1.0, c0, 1.0).nu_min == doctest::Approx(4.0).epsilon(1e-12));

    // Degenerate saddle criterion.
    const DomainThresholds flat = domain_thresholds(1.0, 2.0, 1.0);
    CHECK_FALSE(flat.saddle);
    CHECK(flat.lambda0 == 0.0);

    CHECK_THROWS_AS(domain_thresholds(0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("domain lambda0 approaches sqrt(3)/(2 pi) as delta -> 1") {
    const DomainThresholds th = domain_thresholds(1.0, 6.0 * 0.999 - 2.0, 1.0);
    CHECK(std::abs(th.lambda0 - std::sqrt(3.0) / (2.0 * M_PI)) < 5e-3);
}

TEST_CASE("nu_min < 4 exactly above the delta threshold") {
    const double delta_star = (saddle_ratio_c0() + 2.0) / 6.0;
    for (double delta = 0.70; delta < 1.0; delta += 0.02) {
        const DomainThresholds th = domain_thresholds(1.0, 6.0 * delta - 2.0, 1.0);
        REQUIRE(th.saddle);
        if (std::abs(delta - delta_star) > 1e-6) {
            CHECK((th.nu_min < 4.0) == (delta > delta_star));
        }
    }
}
