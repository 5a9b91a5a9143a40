#pragma once

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsel {

/// Smooth half of a composite objective: gradient, a Lipschitz constant
/// for it, and the objective value itself (diagnostics only).
struct SmoothPart {
    std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> gradient;
    double lipschitz = 0.0;
    std::function<double(const Eigen::MatrixXd&)> objective;
};

/// Non-smooth half: prox(v, t) solves argmin_u t*h(u) + 0.5*||u - v||^2.
/// prox with step 0 is the identity.
struct ProxPart {
    std::function<Eigen::MatrixXd(const Eigen::MatrixXd&, double)> prox;
    std::function<double(const Eigen::MatrixXd&)> penalty_value;
};

enum class Termination { tolerance, max_iter };

/// Momentum schedule for the extrapolation step. `standard` is the usual
/// t_k = (1 + sqrt(1 + 4 t_{k-1}^2))/2 sequence with its 1/k^2 rate;
/// `simple_ratio` uses the coefficient (k-2)/(k-1).
enum class Momentum { standard, simple_ratio };

struct SolverReport {
    Eigen::MatrixXd solution;
    int iterations = 0;
    std::vector<double> objective_trace;  // one entry per iteration
    Termination terminated_by = Termination::max_iter;
};

struct FistaOptions {
    int max_iter = 1000;
    double rel_tol = 1e-6;
    Momentum momentum = Momentum::standard;
};

/// Thrown when a gradient or objective evaluation turns non-finite.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, int iteration)
        : std::runtime_error(what), iteration(iteration) {}
    int iteration;
};

/// Accelerated proximal gradient descent with fixed step 1/L.
/// Each iteration extrapolates y = x_k + beta_k (x_k - x_{k-1}) and then
/// applies x_{k+1} = prox(y - (1/L) grad(y), 1/L). Stops when the relative
/// change ||x_k - x_{k-1}||_F / max(1, ||x_{k-1}||_F) drops below rel_tol
/// or max_iter is reached.
SolverReport fista(const SmoothPart& smooth,
                   const ProxPart& nonsmooth,
                   const Eigen::MatrixXd& x0,
                   const FistaOptions& options = {});

/// Row-wise shrinkage: row i maps to (1 - threshold/||row||_2)_+ * row.
/// Rows at or below the threshold become exactly zero.
Eigen::MatrixXd prox_l21(const Eigen::MatrixXd& x, double threshold);

/// Elementwise soft-thresholding, sign preserved.
Eigen::MatrixXd prox_l1(const Eigen::MatrixXd& x, double threshold);

/// Sum of row-wise l2 norms.
double norm_l21(const Eigen::MatrixXd& x);

} // namespace rsel
