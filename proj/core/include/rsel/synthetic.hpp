#pragma once

#include <cstdint>

#include "rsel/feature_matrix.hpp"

namespace rsel {

/// Gaussian multi-camera identity clusters: each (identity, camera) cell
/// is an isotropic cluster whose mean is the identity anchor plus a
/// per-camera shift vector. cluster_std = 0 degenerates to identical
/// columns per cell; camera_shift_scale = 0 makes clusters
/// camera-invariant. Fully reproducible from the seed.
struct SyntheticSpec {
    int identities = 50;
    int cameras = 3;
    int images_per_identity_per_camera = 6;
    int dim = 20;
    double cluster_std = 0.3;
    double camera_shift_scale = 1.0;
};

FeatureMatrix gen_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

} // namespace rsel
