#include "rsel/feature_matrix.hpp"

#include <stdexcept>
#include <string>

namespace rsel {

namespace {

void check_finite(const Eigen::MatrixXd& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": non-finite values");
    }
}

} // namespace

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd data,
                             std::vector<std::string> ids,
                             std::vector<std::uint32_t> cameras,
                             std::vector<std::uint32_t> labels)
    : data_(std::move(data)),
      ids_(std::move(ids)),
      cameras_(std::move(cameras)),
      labels_(std::move(labels)) {
    const auto n = static_cast<std::size_t>(data_.cols());
    if (ids_.size() != n || cameras_.size() != n || labels_.size() != n) {
        throw std::invalid_argument("FeatureMatrix: metadata length does not match column count");
    }
    if (n > 0 && data_.rows() < 1) {
        throw std::invalid_argument("FeatureMatrix: feature dimension must be >= 1");
    }
    check_finite(data_, "FeatureMatrix");
}

FeatureMatrix FeatureMatrix::subset(std::span<const Eigen::Index> columns) const {
    Eigen::MatrixXd data(data_.rows(), static_cast<Eigen::Index>(columns.size()));
    std::vector<std::string> ids;
    std::vector<std::uint32_t> cameras;
    std::vector<std::uint32_t> labels;
    ids.reserve(columns.size());
    cameras.reserve(columns.size());
    labels.reserve(columns.size());
    Eigen::Index out = 0;
    for (Eigen::Index c : columns) {
        if (c < 0 || c >= count()) {
            throw std::out_of_range("FeatureMatrix::subset: column " + std::to_string(c) +
                                    " out of range");
        }
        data.col(out++) = data_.col(c);
        ids.push_back(ids_[static_cast<std::size_t>(c)]);
        cameras.push_back(cameras_[static_cast<std::size_t>(c)]);
        labels.push_back(labels_[static_cast<std::size_t>(c)]);
    }
    return FeatureMatrix(std::move(data), std::move(ids), std::move(cameras), std::move(labels));
}

FeatureMatrix FeatureMatrix::with_data(Eigen::MatrixXd new_data) const {
    if (new_data.cols() != data_.cols()) {
        throw std::invalid_argument("FeatureMatrix::with_data: column count changed");
    }
    return FeatureMatrix(std::move(new_data), ids_, cameras_, labels_);
}

bool FeatureMatrix::operator==(const FeatureMatrix& other) const {
    return data_.rows() == other.data_.rows() && data_.cols() == other.data_.cols() &&
           data_ == other.data_ && ids_ == other.ids_ && cameras_ == other.cameras_ &&
           labels_ == other.labels_;
}

std::uint32_t Oracle::label_of(Eigen::Index column) const {
    if (column < 0 || column >= m_->count()) {
        throw std::out_of_range("Oracle: column " + std::to_string(column) + " out of range");
    }
    return m_->labels_[static_cast<std::size_t>(column)];
}

void LabeledDictionary::append(const Eigen::MatrixXd& columns,
                               std::span<const std::uint32_t> labels,
                               std::span<const Provenance> provenance,
                               bool normalize_columns) {
    const Eigen::Index added = columns.cols();
    if (static_cast<std::size_t>(added) != labels.size() ||
        static_cast<std::size_t>(added) != provenance.size()) {
        throw std::invalid_argument("LabeledDictionary: label/provenance count mismatch");
    }
    if (added == 0) {
        return;
    }
    check_finite(columns, "LabeledDictionary");
    if (data_.cols() == 0) {
        data_.resize(columns.rows(), 0);
    } else if (columns.rows() != data_.rows()) {
        throw std::invalid_argument("LabeledDictionary: feature dimension mismatch (have " +
                                    std::to_string(data_.rows()) + ", got " +
                                    std::to_string(columns.rows()) + ")");
    }
    const Eigen::Index old = data_.cols();
    data_.conservativeResize(Eigen::NoChange, old + added);
    for (Eigen::Index j = 0; j < added; ++j) {
        Eigen::VectorXd col = columns.col(j);
        if (normalize_columns) {
            const double norm = col.norm();
            if (norm > 0.0) {
                col /= norm;
            }
        }
        data_.col(old + j) = col;
    }
    labels_.insert(labels_.end(), labels.begin(), labels.end());
    provenance_.insert(provenance_.end(), provenance.begin(), provenance.end());
}

} // namespace rsel
