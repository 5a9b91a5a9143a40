#include "rsel/solver.hpp"

#include <cmath>

namespace rsel {

Eigen::MatrixXd prox_l21(const Eigen::MatrixXd& x, double threshold) {
    if (threshold < 0.0) {
        throw std::invalid_argument("prox_l21: negative threshold");
    }
    Eigen::MatrixXd out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double norm = x.row(i).norm();
        if (norm <= threshold) {
            out.row(i).setZero();
        } else {
            out.row(i) = (1.0 - threshold / norm) * x.row(i);
        }
    }
    return out;
}

Eigen::MatrixXd prox_l1(const Eigen::MatrixXd& x, double threshold) {
    if (threshold < 0.0) {
        throw std::invalid_argument("prox_l1: negative threshold");
    }
    return x.unaryExpr([threshold](double v) {
        const double mag = std::abs(v) - threshold;
        return mag > 0.0 ? (v > 0.0 ? mag : -mag) : 0.0;
    });
}

double norm_l21(const Eigen::MatrixXd& x) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        total += x.row(i).norm();
    }
    return total;
}

SolverReport fista(const SmoothPart& smooth,
                   const ProxPart& nonsmooth,
                   const Eigen::MatrixXd& x0,
                   const FistaOptions& options) {
    if (options.max_iter < 1) {
        throw std::invalid_argument("fista: max_iter must be >= 1");
    }
    if (!(options.rel_tol > 0.0)) {
        throw std::invalid_argument("fista: rel_tol must be positive");
    }
    if (!(smooth.lipschitz > 0.0) || !std::isfinite(smooth.lipschitz)) {
        throw std::invalid_argument("fista: Lipschitz constant must be positive and finite");
    }
    if (!x0.allFinite()) {
        throw std::invalid_argument("fista: non-finite initial point");
    }

    const double step = 1.0 / smooth.lipschitz;

    SolverReport report;
    report.objective_trace.reserve(static_cast<std::size_t>(options.max_iter));

    Eigen::MatrixXd x = x0;
    Eigen::MatrixXd x_prev = x0;
    double t_prev = 1.0;  // standard schedule state

    for (int k = 1; k <= options.max_iter; ++k) {
        double beta = 0.0;
        if (options.momentum == Momentum::standard) {
            const double t = (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev)) / 2.0;
            beta = (t_prev - 1.0) / t;
            t_prev = t;
        } else if (k >= 2) {
            beta = (static_cast<double>(k) - 2.0) / (static_cast<double>(k) - 1.0);
        }

        const Eigen::MatrixXd y = x + beta * (x - x_prev);
        const Eigen::MatrixXd grad = smooth.gradient(y);
        if (!grad.allFinite()) {
            throw SolverError("fista: non-finite gradient at iteration " + std::to_string(k), k);
        }
        Eigen::MatrixXd x_next = nonsmooth.prox(y - step * grad, step);

        const double objective = smooth.objective(x_next) + nonsmooth.penalty_value(x_next);
        if (!std::isfinite(objective)) {
            throw SolverError("fista: non-finite objective at iteration " + std::to_string(k), k);
        }
        report.objective_trace.push_back(objective);

        const double change = (x_next - x).norm();
        const double scale = std::max(1.0, x.norm());

        x_prev = std::move(x);
        x = std::move(x_next);
        report.iterations = k;

        if (change / scale < options.rel_tol) {
            report.terminated_by = Termination::tolerance;
            report.solution = std::move(x);
            return report;
        }
    }

    report.terminated_by = Termination::max_iter;
    report.solution = std::move(x);
    return report;
}

} // namespace rsel
