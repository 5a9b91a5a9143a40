#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rsel/feature_matrix.hpp"

namespace rsel {

enum class PoolMode { balanced, imbalanced };

/// One imbalanced tier: this fraction of the persons contributes
/// images_per_camera images per camera to the unlabeled pool.
struct PoolTier {
    double fraction_of_persons = 0.0;
    int images_per_camera = 0;
};

struct PoolSpec {
    PoolMode mode = PoolMode::balanced;
    int images_per_person_per_camera = 2;  // balanced mode
    std::vector<PoolTier> tiers;           // imbalanced mode
    int test_images_per_person_per_camera = 2;

    /// Tier fractions must sum to 1 within 1e-9 and all counts be >= 1.
    void validate() const;
};

/// Draws a disjoint (unlabeled pool, test set) pair from the dataset,
/// stratified per (person, camera). Reproducible from the seed; throws
/// listing every (person, camera) whose image count falls short.
std::pair<FeatureMatrix, FeatureMatrix>
build_pools(const FeatureMatrix& dataset, const PoolSpec& spec, std::uint64_t seed);

} // namespace rsel
