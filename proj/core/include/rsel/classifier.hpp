#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

#include "rsel/feature_matrix.hpp"
#include "rsel/selector.hpp"
#include "rsel/solver.hpp"

namespace rsel {

/// Unnormalized graph Laplacian L = D - W over a set of test columns,
/// heat-kernel weights on symmetrized k-NN edges, bandwidth self-tuned to
/// the median pairwise distance.
struct LaplacianGraph {
    Eigen::MatrixXd w;  // N x N symmetric nonnegative weights
    Eigen::MatrixXd l;  // N x N Laplacian
    int knn_k = 5;
    double kernel_bandwidth = 1.0;
};

LaplacianGraph build_laplacian(const FeatureMatrix& y, int knn_k);
LaplacianGraph build_laplacian(const Eigen::MatrixXd& columns, int knn_k);

struct SparseCodeMatrix {
    Eigen::MatrixXd c;  // n0 x N, one code column per test image
};

struct SrcConfig {
    FistaOptions fista;
    LipschitzMode lipschitz = LipschitzMode::spectral;
};

/// Sparse codes of the test columns Y over the dictionary:
///
///   min_C ||Y - D C||_F^2 + alpha ||C||_1 + beta tr(C L C^T)
///
/// solved by FISTA with elementwise soft-thresholding; the trace term
/// pulls codes of graph-adjacent test columns together.
SparseCodeMatrix src_solve(const LabeledDictionary& dict,
                           const FeatureMatrix& y,
                           double alpha, double beta,
                           const LaplacianGraph& graph,
                           const SrcConfig& config = {});
SparseCodeMatrix src_solve(const LabeledDictionary& dict,
                           const Eigen::MatrixXd& y,
                           double alpha, double beta,
                           const LaplacianGraph& graph,
                           const SrcConfig& config = {});

/// Per test column: absolute coefficient mass grouped by dictionary
/// label, normalized to a distribution. All-zero codes fall back to the
/// uniform distribution over the known classes.
struct ClassProbabilities {
    std::vector<std::uint32_t> classes;  // distinct labels, ascending
    Eigen::MatrixXd p;                   // |classes| x N, columns sum to 1

    /// argmax per column, ties to the smaller class id.
    std::vector<std::uint32_t> predictions() const;
};

ClassProbabilities class_probabilities(const SparseCodeMatrix& c,
                                       std::span<const std::uint32_t> labels);

/// Returns the dictionary extended by the given columns; the existing
/// columns and their indices are untouched, so codes computed against the
/// old prefix remain valid. Columns are l2-normalized at insertion unless
/// normalize_columns is off.
LabeledDictionary add_labeled(const LabeledDictionary& dict,
                              const Eigen::MatrixXd& columns,
                              std::span<const std::uint32_t> labels,
                              std::span<const Provenance> provenance,
                              bool normalize_columns = true);

} // namespace rsel
