// test_linearization.cpp
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vortexlab/bounds.hpp"
#include "vortexlab/crystal.hpp"
#include "vortexlab/linearization.hpp"

using namespace vortexlab;

namespace {

Configuration random_configuration(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> strength(0.5, 2.0);
    Configuration z;
    while (z.size() < n) {
        const Vec2 p{coord(rng), coord(rng)};
        bool ok = true;
        for (const auto& v : z.vortices) ok = ok && norm(v.position - p) > 0.3;
        if (ok) {
            const double sign = (rng() & 1u) ? 1.0 : -1.0;
            z.vortices.push_back({p, sign * strength(rng)});
        }
    }
    return z;
}

// The reference 6x6 matrix for the three-vortex configuration, written out
// entry by entry: prefactor C_alpha, b = 2^-(alpha+1).
Eigen::MatrixXd reference_n3(double alpha) {
    const double c = coupling_constant(alpha);
    const double b = std::pow(2.0, -(alpha + 1.0));
    const double d = std::pow(2.0, -alpha);
    Eigen::MatrixXd m(6, 6);
    m << 0, b, 0, b, 0, -d,
        b * alpha, 0, b * alpha, 0, -d * alpha, 0,
        0, b, 0, b, 0, -d,
        b * alpha, 0, b * alpha, 0, -d * alpha, 0,
        0, 1, 0, 1, 0, -2,
        alpha, 0, alpha, 0, -2 * alpha, 0;
    return c * m;
}

// Reference 14x14 matrix for the hexagon-plus-center configuration at
// alpha = 1, prefactor 1/(2 pi), c1 = 1/(2 sqrt(3)) - 13 sqrt(3)/8.
Eigen::MatrixXd reference_n7() {
    const double r3 = std::sqrt(3.0);
    const double c1 = 1.0 / (2.0 * r3) - 13.0 * r3 / 8.0;
    const double q = 1.0 / (2.0 * r3);
    Eigen::MatrixXd m(14, 14);
    m << c1, -35.0 / 24, 0, 1, -q, 1.0 / 6, -r3 / 8, -1.0 / 8, 0, -1.0 / 3, r3 / 2, -0.5,
        5 * r3 / 4, 5.0 / 4,
        -35.0 / 24, -c1, 1, 0, 1.0 / 6, q, -1.0 / 8, r3 / 8, -1.0 / 3, 0, -0.5, -r3 / 2,
        5.0 / 4, -5 * r3 / 4,
        0, 1, -c1, -35.0 / 24, -r3 / 2, -0.5, 0, -1.0 / 3, r3 / 8, -1.0 / 8, q, 1.0 / 6,
        -5 * r3 / 4, 5.0 / 4,
        1, 0, -35.0 / 24, c1, -0.5, r3 / 2, -1.0 / 3, 0, -1.0 / 8, -r3 / 8, 1.0 / 6, -q,
        5.0 / 4, 5 * r3 / 4,
        -q, 1.0 / 6, -r3 / 2, -0.5, 0, 35.0 / 12, r3 / 2, -0.5, q, 1.0 / 6, 0, 0.25, 0,
        -2.5,
        1.0 / 6, q, -0.5, r3 / 2, 35.0 / 12, 0, -0.5, -r3 / 2, 1.0 / 6, -q, 0.25, 0, -2.5,
        0,
        -r3 / 8, -1.0 / 8, 0, -1.0 / 3, r3 / 2, -0.5, c1, -35.0 / 24, 0, 1, -q, 1.0 / 6,
        5 * r3 / 4, 5.0 / 4,
        -1.0 / 8, r3 / 8, -1.0 / 3, 0, -0.5, -r3 / 2, -35.0 / 24, -c1, 1, 0, 1.0 / 6, q,
        5.0 / 4, -5 * r3 / 4,
        0, -1.0 / 3, r3 / 8, -1.0 / 8, q, 1.0 / 6, 0, 1, -c1, -35.0 / 24, -r3 / 2, -0.5,
        -5 * r3 / 4, 5.0 / 4,
        -1.0 / 3, 0, -1.0 / 8, -r3 / 8, 1.0 / 6, -q, 1, 0, -35.0 / 24, c1, -0.5, r3 / 2,
        5.0 / 4, 5 * r3 / 4,
        r3 / 2, -0.5, q, 1.0 / 6, 0, 0.25, -q, 1.0 / 6, -r3 / 2, -0.5, 0, 35.0 / 12, 0,
        -2.5,
        -0.5, -r3 / 2, 1.0 / 6, -q, 0.25, 0, 1.0 / 6, q, -0.5, r3 / 2, 35.0 / 12, 0, -2.5,
        0,
        -r3 / 2, -0.5, r3 / 2, -0.5, 0, 1, -r3 / 2, -0.5, r3 / 2, -0.5, 0, 1, 0, 0,
        -0.5, r3 / 2, -0.5, -r3 / 2, 1, 0, -0.5, r3 / 2, -0.5, -r3 / 2, 1, 0, 0, 0;
    return m / (2.0 * M_PI);
}

} // namespace

TEST_CASE("analytic Jacobian reproduces the three-vortex reference matrix") {
    for (double alpha : {1.0, 1.3, 1.7, 1.99}) {
        const CrystalSpec spec{3, AlphaModel(alpha)};
        const Configuration z = build_crystal(spec);
        const Eigen::MatrixXd df = jacobian_analytic(spec.model, z);
        CHECK((df - reference_n3(alpha)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("analytic Jacobian reproduces the hexagon reference matrix") {
    const CrystalSpec spec{7, AlphaModel(1.0)};
    const Configuration z = build_crystal(spec);
    const Eigen::MatrixXd df = jacobian_analytic(spec.model, z);
    CHECK((df - reference_n7()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("diagonal blocks are traceless, whole matrix has zero trace") {
    std::mt19937 rng(4242u);
    for (int trial = 0; trial < 10; ++trial) {
        const AlphaModel model(1.0 + 0.09 * trial);
        const Configuration z = random_configuration(rng, 3 + trial % 5);
        const Eigen::MatrixXd df = jacobian_analytic(model, z);
        CHECK(std::abs(df.trace()) < 1e-12 * df.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("two-vortex Jacobian against the hand-derived form") {
    // Pair a = (1,1) at (+-1, 0): off-diagonal blocks equal B, diagonal -B,
    // with B = [[0, 2^-(a+1)], [a 2^-(a+1), 0]] scaled by C_alpha.
    for (double alpha : {1.0, 1.6}) {
        const AlphaModel model(alpha);
        Configuration z;
        z.vortices = {{{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 1.0}};
        const double c = model.c_alpha;
        const double b = std::pow(2.0, -(alpha + 1.0));
        Eigen::MatrixXd expect(4, 4);
        expect << 0, -b, 0, b,
            -alpha * b, 0, alpha * b, 0,
            0, b, 0, -b,
            alpha * b, 0, -alpha * b, 0;
        expect *= c;
        const Eigen::MatrixXd df = jacobian_analytic(model, z);
        CHECK((df - expect).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((df - jacobian_fd(model, z, 1e-6)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("finite-difference Jacobian converges at second order") {
    const CrystalSpec spec{3, AlphaModel(1.0)};
    const Configuration z = build_crystal(spec);
    const Eigen::MatrixXd exact = jacobian_analytic(spec.model, z);
    const double e1 = (jacobian_fd(spec.model, z, 2e-4) - exact).cwiseAbs().maxCoeff();
    const double e2 = (jacobian_fd(spec.model, z, 1e-4) - exact).cwiseAbs().maxCoeff();
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
    CHECK_THROWS_AS(jacobian_fd(spec.model, z, 0.0), DomainError);
}

TEST_CASE("analytic and finite-difference Jacobians agree on random configurations") {
    std::mt19937 rng(20240816u);
    const double alphas[3] = {1.0, 1.4, 1.9};
    for (int trial = 0; trial < 15; ++trial) {
        const AlphaModel model(alphas[trial % 3]);
        const Configuration z = random_configuration(rng, 2 + trial % 7);
        const Eigen::MatrixXd analytic = jacobian_analytic(model, z);
        const Eigen::MatrixXd fd = jacobian_fd(model, z, 1e-6 * z.min_pair_distance());
        CHECK((analytic - fd).cwiseAbs().maxCoeff() <
              1e-6 * analytic.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("N=3 spectrum closed forms across the alpha grid") {
    for (int k = 0; k < 20; ++k) {
        const double alpha = 1.0 + 0.05 * k;
        const CrystalSpec spec{3, AlphaModel(alpha)};
        const Configuration z = build_crystal(spec);
        const Eigen::MatrixXd df = jacobian_analytic(spec.model, z);
        const SpectralReport rep = spectrum(df, spec.model, z);

        CHECK(rep.lambda0 == doctest::Approx(n3_lambda0(alpha)).epsilon(1e-10));
        CHECK(rep.kappa1 == doctest::Approx(n3_kappa1(alpha)).epsilon(1e-12));
        CHECK(rep.kappa2 == doctest::Approx(n3_kappa2(alpha)).epsilon(1e-10));
        CHECK(rep.kappa2 >= rep.lambda0 - 1e-12);
        REQUIRE(rep.has_real_unstable_vector);
        const Eigen::VectorXd& v = rep.unstable_eigenvector;
        CHECK((df * v - rep.lambda0 * v).cwiseAbs().maxCoeff() <
              1e-9 * v.cwiseAbs().maxCoeff());
        CHECK(v.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    }
}

TEST_CASE("spectrum symmetry under negation for crystal equilibria") {
    for (int n : {5, 9}) {
        const CrystalSpec spec{n, AlphaModel(1.25)};
        const Configuration z = build_crystal(spec);
        const SpectralReport rep =
            spectrum(jacobian_analytic(spec.model, z), spec.model, z);
        // Match the eigenvalue multiset against its negation.
        std::vector<std::complex<double>> evs(rep.eigenvalues.data(),
                                              rep.eigenvalues.data() + 2 * n);
        for (const auto& ev : evs) {
            double best = 1e300;
            for (const auto& other : evs) best = std::min(best, std::abs(other + ev));
            CHECK(best < 1e-9);
        }
    }
}

TEST_CASE("spectrum rejects mismatched and oversized problems") {
    const CrystalSpec spec{3, AlphaModel(1.0)};
    const Configuration z = build_crystal(spec);
    CHECK_THROWS_AS(spectrum(Eigen::MatrixXd::Zero(4, 4), spec.model, z), DomainError);

    Configuration big;
    for (int i = 0; i < 33; ++i) {
        const double theta = 2.0 * M_PI * i / 33.0;
        big.vortices.push_back({{std::cos(theta), std::sin(theta)}, 1.0});
    }
    CHECK_THROWS_AS(spectrum(Eigen::MatrixXd::Zero(66, 66), AlphaModel(1.0), big),
                    DomainError);
}
