#include "rsel/selector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rsel {

SelectionProblem::SelectionProblem(Eigen::MatrixXd z_in, Eigen::MatrixXd z0_in,
                                   double lambda1_in, double lambda2_in)
    : z(std::move(z_in)), z0(std::move(z0_in)), lambda1(lambda1_in), lambda2(lambda2_in) {
    if (z.cols() == 0) {
        throw std::invalid_argument("SelectionProblem: empty pool");
    }
    if (z0.cols() > 0 && z0.rows() != z.rows()) {
        throw std::invalid_argument("SelectionProblem: pool and dictionary dimensions differ");
    }
    if (!(lambda1 >= 0.0) || !std::isfinite(lambda1) || !(lambda2 >= 0.0) ||
        !std::isfinite(lambda2)) {
        throw std::invalid_argument("SelectionProblem: regularizers must be finite and >= 0");
    }
    gram.noalias() = z.transpose() * z;
    if (z0.cols() > 0) {
        const Eigen::MatrixXd z0tz = z0.transpose() * z;  // n0 x n
        cross.noalias() = z0tz.transpose() * z0tz;
    }
}

SelectionMatrix SelectionMatrix::from(Eigen::MatrixXd x) {
    SelectionMatrix s;
    s.row_norms = x.rowwise().norm();
    s.x = std::move(x);
    return s;
}

Eigen::MatrixXd grad_g(const SelectionProblem& p, const Eigen::MatrixXd& x) {
    if (x.rows() != p.gram.rows() || x.cols() != p.gram.cols()) {
        throw std::invalid_argument("grad_g: selection matrix must be n x n");
    }
    Eigen::MatrixXd grad = -p.gram;
    grad.noalias() += p.gram * x;
    if (p.lambda1 > 0.0 && p.cross.size() > 0) {
        grad.noalias() += p.lambda1 * (p.cross * x);
    }
    return 2.0 * grad;
}

double objective_g(const SelectionProblem& p, const Eigen::MatrixXd& x) {
    double value = (p.z - p.z * x).squaredNorm();
    if (p.lambda1 > 0.0 && p.z0.cols() > 0) {
        value += p.lambda1 * (p.z0.transpose() * (p.z * x)).squaredNorm();
    }
    return value;
}

namespace {

// symmetric PSD top eigenvalue by power iteration, 1e-8 relative
double power_iteration_top_eigenvalue(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = gauss(rng);
    }
    v.normalize();

    double eigenvalue = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd mv = m * v;
        const double norm = mv.norm();
        if (norm == 0.0) {
            return 0.0;
        }
        v = mv / norm;
        const double next = v.dot(m * v);
        if (std::abs(next - eigenvalue) <= 1e-8 * std::max(std::abs(next), 1e-300)) {
            return next;
        }
        eigenvalue = next;
    }
    throw std::runtime_error("lipschitz_g: power iteration did not converge in 10000 steps");
}

} // namespace

double lipschitz_g(const SelectionProblem& p, LipschitzMode mode) {
    if (mode == LipschitzMode::frobenius) {
        double value = p.gram.squaredNorm();
        if (p.lambda1 > 0.0 && p.cross.size() > 0) {
            value += p.lambda1 * p.cross.squaredNorm();
        }
        return 2.0 * value;
    }
    Eigen::MatrixXd hessian = p.gram;
    if (p.lambda1 > 0.0 && p.cross.size() > 0) {
        hessian += p.lambda1 * p.cross;
    }
    return 2.0 * power_iteration_top_eigenvalue(hessian);
}

double lambda0(const SelectionProblem& p) {
    double max_row = 0.0;
    for (Eigen::Index i = 0; i < p.gram.rows(); ++i) {
        max_row = std::max(max_row, p.gram.row(i).norm());
    }
    return 2.0 * max_row;
}

SelectionResult select_representatives(const SelectionProblem& p, Eigen::Index k,
                                       const SelectorConfig& config) {
    const Eigen::Index n = p.pool_size();
    if (k < 1 || k > n) {
        throw std::invalid_argument("select_representatives: k must be in [1, n]");
    }

    const double lip = lipschitz_g(p, config.lipschitz);
    SmoothPart smooth{
        [&p](const Eigen::MatrixXd& x) { return grad_g(p, x); },
        lip,
        [&p](const Eigen::MatrixXd& x) { return objective_g(p, x); },
    };
    const double lambda2 = p.lambda2;
    ProxPart shrink{
        [lambda2](const Eigen::MatrixXd& x, double step) { return prox_l21(x, step * lambda2); },
        [lambda2](const Eigen::MatrixXd& x) { return lambda2 * norm_l21(x); },
    };

    SelectionResult result;
    result.report = fista(smooth, shrink, Eigen::MatrixXd::Zero(n, n), config.fista);
    result.solution = SelectionMatrix::from(result.report.solution);

    const Eigen::VectorXd& norms = result.solution.row_norms;
    const double cutoff = 1e-8 * norms.maxCoeff();
    std::vector<Eigen::Index> nonzero;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (norms(i) > cutoff && norms(i) > 0.0) {
            nonzero.push_back(i);
        }
    }
    if (static_cast<Eigen::Index>(nonzero.size()) > k) {
        std::sort(nonzero.begin(), nonzero.end(), [&norms](Eigen::Index a, Eigen::Index b) {
            if (norms(a) != norms(b)) return norms(a) > norms(b);
            return a < b;
        });
        nonzero.resize(static_cast<std::size_t>(k));
    }
    std::sort(nonzero.begin(), nonzero.end());
    result.indices = std::move(nonzero);
    return result;
}

} // namespace rsel
