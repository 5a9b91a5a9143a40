#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "rsel/feature_matrix.hpp"

namespace rsel {

enum class EmbedMethod { tsne, pca };

struct EmbeddingConfig {
    EmbedMethod method = EmbedMethod::tsne;
    int target_dim = 10;
    double perplexity = 30.0;        // tsne
    int iterations = 1000;           // tsne gradient descent steps
    double exaggeration_factor = 4.0;
    int exaggeration_duration = 100; // iterations with exaggerated P
    double learning_rate = 500.0;
    std::uint64_t seed = 0;
};

struct EmbedResult {
    FeatureMatrix features;        // target_dim x n, metadata passed through
    std::vector<double> kl_trace;  // tsne only: KL(P||Q) per iteration
};

/// Projects the columns to target_dim dimensions. PCA takes the leading
/// principal directions of the centered data with a deterministic sign
/// convention (largest-magnitude coordinate positive). t-SNE is the exact
/// O(n^2) variant: perplexity-calibrated joint probabilities, gradient
/// descent with momentum, per-coordinate gains and early exaggeration.
/// Reproducible bit-for-bit from the seed.
EmbedResult embed_detailed(const FeatureMatrix& m, const EmbeddingConfig& cfg);
FeatureMatrix embed(const FeatureMatrix& m, const EmbeddingConfig& cfg);

/// Symmetrized, normalized t-SNE joint distribution from squared
/// pairwise distances. Exposed for verification: symmetric, nonnegative,
/// sums to 1.
Eigen::MatrixXd tsne_joint_probabilities(const Eigen::MatrixXd& squared_distances,
                                         double perplexity);

} // namespace rsel
