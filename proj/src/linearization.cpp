// linearization.cpp
#include "vortexlab/linearization.hpp"

#include <algorithm>
#include <string>

namespace vortexlab {

namespace {

Eigen::Matrix2d entry_block(double alpha, Vec2 w) {
    const double r = norm(w);
    const double ra1 = std::pow(r, alpha + 1.0);
    const double ra3 = std::pow(r, alpha + 3.0);
    Eigen::Matrix2d b;
    b(0, 0) = -w.y * (alpha + 1.0) * w.x / ra3;
    b(0, 1) = -w.y * (alpha + 1.0) * w.y / ra3 + 1.0 / ra1;
    b(1, 0) = w.x * (alpha + 1.0) * w.x / ra3 - 1.0 / ra1;
    b(1, 1) = w.x * (alpha + 1.0) * w.y / ra3;
    return b;
}

} // namespace

Eigen::MatrixXd jacobian_analytic(const AlphaModel& model, const Configuration& z) {
    const int n = z.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vec2 w = z.vortices[i].position - z.vortices[j].position;
            if (norm(w) == 0.0) {
                throw SingularityError("jacobian_analytic: coincident vortices", i, j);
            }
            const Eigen::Matrix2d b =
                z.vortices[j].intensity * model.c_alpha * entry_block(model.alpha, w);
            m.block<2, 2>(2 * i, 2 * j) = b;
            diag -= b;
        }
        m.block<2, 2>(2 * i, 2 * i) = diag;
    }
    return m;
}

Eigen::MatrixXd jacobian_fd(const AlphaModel& model, const Configuration& z, double step) {
    if (!(step > 0.0)) {
        throw DomainError("jacobian_fd: step must be positive");
    }
    const int n = z.size();
    Eigen::MatrixXd m(2 * n, 2 * n);
    Configuration work = z;
    std::vector<double> flat = z.flatten();
    for (int col = 0; col < 2 * n; ++col) {
        const double saved = flat[col];
        flat[col] = saved + step;
        work.set_positions(flat);
        const std::vector<Vec2> vp = velocity_field(model, work);
        flat[col] = saved - step;
        work.set_positions(flat);
        const std::vector<Vec2> vm = velocity_field(model, work);
        flat[col] = saved;
        for (int i = 0; i < n; ++i) {
            m(2 * i, col) = (vp[i].x - vm[i].x) / (2.0 * step);
            m(2 * i + 1, col) = (vp[i].y - vm[i].y) / (2.0 * step);
        }
    }
    work.set_positions(flat);
    return m;
}

SpectralReport spectrum(const Eigen::MatrixXd& m, const AlphaModel& model,
                        const Configuration& z) {
    if (m.rows() != m.cols() || m.rows() != 2 * z.size()) {
        throw DomainError("spectrum: matrix size does not match configuration");
    }
    if (m.rows() > 64) {
        throw DomainError("spectrum: dense solve capped at 2N = 64");
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw NumericError("spectrum: eigensolver failed (matrix 1-norm " +
                           std::to_string(m.cwiseAbs().rowwise().sum().maxCoeff()) + ")");
    }

    SpectralReport report;
    report.eigenvalues = solver.eigenvalues();
    std::vector<int> order(report.eigenvalues.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto ea = report.eigenvalues[a];
        const auto eb = report.eigenvalues[b];
        if (ea.real() != eb.real()) return ea.real() < eb.real();
        return ea.imag() < eb.imag();
    });
    Eigen::VectorXcd sorted(report.eigenvalues.size());
    for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = report.eigenvalues[order[k]];

    const double max_re = solver.eigenvalues().real().maxCoeff();
    report.lambda0 = std::max(0.0, max_re);

    // Prefer a real eigenvalue at the max real part: a real unstable direction
    // is what the escape experiments need.
    const double tol = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
    int best = -1;
    for (int k = 0; k < report.eigenvalues.size(); ++k) {
        const auto ev = solver.eigenvalues()[k];
        if (std::abs(ev.real() - max_re) <= tol && std::abs(ev.imag()) <= tol) {
            best = k;
            break;
        }
    }
    if (report.lambda0 > tol && best >= 0) {
        Eigen::VectorXcd vec = solver.eigenvectors().col(best);
        // Rotate the complex phase away, then normalize to unit sup-norm with
        // the first nonzero coordinate positive.
        int arg_max = 0;
        vec.cwiseAbs().maxCoeff(&arg_max);
        vec *= std::abs(vec[arg_max]) / vec[arg_max];
        Eigen::VectorXd real_vec = vec.real();
        const double imag_leak = vec.imag().cwiseAbs().maxCoeff();
        if (imag_leak <= 1e-9 * real_vec.cwiseAbs().maxCoeff()) {
            real_vec /= real_vec.cwiseAbs().maxCoeff();
            for (int k = 0; k < real_vec.size(); ++k) {
                if (std::abs(real_vec[k]) > 1e-10) {
                    if (real_vec[k] < 0.0) real_vec = -real_vec;
                    break;
                }
            }
            report.unstable_eigenvector = real_vec;
            report.has_real_unstable_vector = true;
        }
    }

    report.eigenvalues = sorted;

    // kappa1 at leading order, from the stationary separations.
    double worst = 0.0;
    for (int i = 0; i < z.size(); ++i) {
        double sum = 0.0;
        for (int j = 0; j < z.size(); ++j) {
            if (j == i) continue;
            const double r = norm(z.vortices[i].position - z.vortices[j].position);
            sum += std::abs(z.vortices[j].intensity) / std::pow(r, model.alpha + 1.0);
        }
        worst = std::max(worst, sum);
    }
    report.kappa1 = model.c_alpha * worst;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    report.kappa2 = svd.singularValues()[0];
    report.kappa2_matrix = report.kappa2 / model.c_alpha;
    return report;
}

} // namespace vortexlab
