#pragma once

#include <Eigen/Core>

#include <vector>

#include "rsel/solver.hpp"

namespace rsel {

/// Row-sparse representative selection over a pool Z (d x n, centered):
///
///   min_X ||Z - Z X||_F^2 + lambda1 ||Z0^T Z X||_F^2 + lambda2 ||X||_{2,1}
///
/// Z0 (d x n0, possibly empty) holds previously selected columns; the
/// middle term penalizes correlation with them. Nonzero rows of the
/// minimizer index the chosen columns of Z.
struct SelectionProblem {
    SelectionProblem(Eigen::MatrixXd z, Eigen::MatrixXd z0,
                     double lambda1, double lambda2);

    Eigen::MatrixXd z;    // d x n
    Eigen::MatrixXd z0;   // d x n0, 0 columns when nothing is selected yet
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    // cached grams, fixed across solver iterations
    Eigen::MatrixXd gram;   // Z^T Z,            n x n
    Eigen::MatrixXd cross;  // Z^T Z0 Z0^T Z,    n x n (empty when n0 == 0)

    Eigen::Index pool_size() const { return z.cols(); }
};

struct SelectionMatrix {
    Eigen::MatrixXd x;          // n x n
    Eigen::VectorXd row_norms;  // cached l2 norms of the rows

    static SelectionMatrix from(Eigen::MatrixXd x);
};

/// Gradient of the smooth part:
///   2(-Z^T Z + Z^T Z X + lambda1 Z^T Z0 Z0^T Z X)
Eigen::MatrixXd grad_g(const SelectionProblem& p, const Eigen::MatrixXd& x);

/// Smooth objective ||Z - Z X||_F^2 + lambda1 ||Z0^T Z X||_F^2.
double objective_g(const SelectionProblem& p, const Eigen::MatrixXd& x);

/// `spectral` returns 2 * lambda_max(Z^T Z + lambda1 Z^T Z0 Z0^T Z) via
/// power iteration (1e-8 relative); it is the tight constant and the
/// default. `frobenius` is the closed form
/// 2(||Z^T Z||_F^2 + lambda1 ||Z^T Z0 Z0^T Z||_F^2), which can
/// underestimate the true constant when the operator norms sit below 1.
enum class LipschitzMode { spectral, frobenius };

double lipschitz_g(const SelectionProblem& p, LipschitzMode mode = LipschitzMode::spectral);

/// Smallest lambda2 for which X = 0 is optimal: the subgradient condition
/// at zero gives 2 * max_i ||row i of Z^T Z||_2.
double lambda0(const SelectionProblem& p);

struct SelectorConfig {
    FistaOptions fista;
    LipschitzMode lipschitz = LipschitzMode::spectral;
};

struct SelectionResult {
    std::vector<Eigen::Index> indices;  // ascending
    SelectionMatrix solution;
    SolverReport report;
};

/// Solves the program by FISTA with the row-shrinkage prox and extracts
/// the support: rows with norm > 1e-8 * max row norm, capped to the k
/// largest (ties to the smaller index).
SelectionResult select_representatives(const SelectionProblem& p, Eigen::Index k,
                                       const SelectorConfig& config = {});

} // namespace rsel
