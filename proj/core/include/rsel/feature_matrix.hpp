#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rsel {

class Oracle;

/// Dense column-per-image feature store. Column i carries an opaque image
/// id and a camera id; the ground-truth identity is held privately and is
/// reachable only through Oracle (annotation/evaluation) and the dataset
/// serializers, so selection and classification code cannot read it.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(Eigen::MatrixXd data,
                  std::vector<std::string> ids,
                  std::vector<std::uint32_t> cameras,
                  std::vector<std::uint32_t> labels);

    const Eigen::MatrixXd& data() const { return data_; }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<std::uint32_t>& cameras() const { return cameras_; }

    Eigen::Index dim() const { return data_.rows(); }
    Eigen::Index count() const { return data_.cols(); }

    /// New matrix with the given columns, metadata carried along.
    FeatureMatrix subset(std::span<const Eigen::Index> columns) const;

    /// Same metadata, replaced feature payload (same column count required).
    FeatureMatrix with_data(Eigen::MatrixXd new_data) const;

    bool operator==(const FeatureMatrix& other) const;

private:
    friend class Oracle;
    friend void save_csv(const FeatureMatrix&, const std::string&);
    friend void save_binary(const FeatureMatrix&, const std::string&);
    friend std::pair<FeatureMatrix, FeatureMatrix>
    build_pools(const FeatureMatrix&, const struct PoolSpec&, std::uint64_t);

    Eigen::MatrixXd data_;                 // d x n
    std::vector<std::string> ids_;         // n
    std::vector<std::uint32_t> cameras_;   // n
    std::vector<std::uint32_t> labels_;    // n, ground truth
};

/// The one sanctioned reading path for ground-truth identities.
class Oracle {
public:
    explicit Oracle(const FeatureMatrix& m) : m_(&m) {}
    std::uint32_t label_of(Eigen::Index column) const;

private:
    const FeatureMatrix* m_;
};

enum class Provenance : std::uint8_t { queried, propagated };

/// Append-only store of annotated feature columns. Columns are never
/// removed or reordered; every column carries one label and a provenance
/// flag. Single-writer: callers serialize appends between iterations.
class LabeledDictionary {
public:
    LabeledDictionary() = default;

    const Eigen::MatrixXd& data() const { return data_; }
    const std::vector<std::uint32_t>& labels() const { return labels_; }
    const std::vector<Provenance>& provenance() const { return provenance_; }

    Eigen::Index dim() const { return data_.rows(); }
    Eigen::Index size() const { return data_.cols(); }
    bool empty() const { return data_.cols() == 0; }

    /// Appends columns in place. Throws on feature-dimension mismatch or
    /// inconsistent label/provenance counts.
    void append(const Eigen::MatrixXd& columns,
                std::span<const std::uint32_t> labels,
                std::span<const Provenance> provenance,
                bool normalize_columns = true);

private:
    Eigen::MatrixXd data_;   // d x n0
    std::vector<std::uint32_t> labels_;
    std::vector<Provenance> provenance_;
};

} // namespace rsel
