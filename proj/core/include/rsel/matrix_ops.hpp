#pragma once

#include <Eigen/Core>

#include "rsel/feature_matrix.hpp"

namespace rsel {

/// Subtracts the per-feature mean over all columns; the returned vector
/// restores the original matrix by addition. Throws on an empty matrix.
std::pair<FeatureMatrix, Eigen::VectorXd> center_columns(const FeatureMatrix& m);

/// Plain-matrix variant used by the selection pipeline, which centers a
/// pool and its dictionary with one shared mean.
Eigen::MatrixXd center_columns(const Eigen::MatrixXd& m, Eigen::VectorXd& mean_out);

/// n x n matrix of cosine similarities between columns. Symmetric, unit
/// diagonal. Throws if any column has zero norm, naming the column.
Eigen::MatrixXd cosine_similarity(const FeatureMatrix& m);
Eigen::MatrixXd cosine_similarity(const Eigen::MatrixXd& columns);

} // namespace rsel
