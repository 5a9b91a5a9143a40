#include "rsel/matrix_ops.hpp"

#include <stdexcept>
#include <string>

namespace rsel {

Eigen::MatrixXd center_columns(const Eigen::MatrixXd& m, Eigen::VectorXd& mean_out) {
    if (m.cols() < 1) {
        throw std::invalid_argument("center_columns: empty input");
    }
    mean_out = m.rowwise().mean();
    return m.colwise() - mean_out;
}

std::pair<FeatureMatrix, Eigen::VectorXd> center_columns(const FeatureMatrix& m) {
    Eigen::VectorXd mean;
    Eigen::MatrixXd centered = center_columns(m.data(), mean);
    return {m.with_data(std::move(centered)), std::move(mean)};
}

Eigen::MatrixXd cosine_similarity(const Eigen::MatrixXd& columns) {
    const Eigen::Index n = columns.cols();
    Eigen::VectorXd norms = columns.colwise().norm();
    for (Eigen::Index j = 0; j < n; ++j) {
        if (norms(j) == 0.0) {
            throw std::invalid_argument("cosine_similarity: column " + std::to_string(j) +
                                        " has zero norm");
        }
    }
    Eigen::MatrixXd s = columns.transpose() * columns;
    s.array() /= (norms * norms.transpose()).array();
    // exact symmetry, unit diagonal and [-1, 1] range, independent of
    // multiply rounding
    s = ((s + s.transpose()) * 0.5).eval();
    s = s.cwiseMax(-1.0).cwiseMin(1.0);
    s.diagonal().setOnes();
    return s;
}

Eigen::MatrixXd cosine_similarity(const FeatureMatrix& m) {
    return cosine_similarity(m.data());
}

} // namespace rsel
