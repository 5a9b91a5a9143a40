#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "rsel/feature_matrix.hpp"

namespace rsel {

/// Partition of a selected batch into groups of mutually similar images.
/// One member per group (the medoid) is presented for annotation; its
/// label is propagated to the rest of the group.
struct RedundancyGroups {
    std::vector<std::vector<Eigen::Index>> groups;  // disjoint, cover 0..k-1
    std::vector<Eigen::Index> query_index;          // one medoid per group
    Eigen::MatrixXi incidence;                      // m hyperedges x k members

    Eigen::Index group_count() const { return static_cast<Eigen::Index>(groups.size()); }
};

/// Thresholded similarity hypergraph over a batch of k images. Cosine
/// similarity is clamped to [0, 1] (negatives to 0); pairs at or above
/// tau are adjacent; hyperedges are the deduplicated closed neighborhoods
/// and groups the connected components of their union. The query member
/// of each group is the medoid under summed within-group similarity,
/// ties to the smaller index.
RedundancyGroups build_groups(const Eigen::MatrixXd& batch_features, double tau);
RedundancyGroups build_groups(const FeatureMatrix& batch, double tau);

struct LabelRecord {
    Eigen::Index index;       // position within the batch
    std::uint32_t label;
    Provenance provenance;
};

/// One queried record for the group's medoid plus propagated records for
/// every other member. Throws on an unknown group id.
std::vector<LabelRecord> propagate_label(const RedundancyGroups& groups,
                                         Eigen::Index group_id,
                                         std::uint32_t label);

} // namespace rsel
