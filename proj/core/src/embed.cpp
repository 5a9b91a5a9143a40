#include "rsel/embed.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "rsel/matrix_ops.hpp"

namespace rsel {

namespace {

Eigen::MatrixXd pairwise_squared_distances(const Eigen::MatrixXd& columns) {
    const Eigen::Index n = columns.cols();
    const Eigen::VectorXd sq = columns.colwise().squaredNorm();
    Eigen::MatrixXd d2 = sq.replicate(1, n) + sq.transpose().replicate(n, 1);
    d2.noalias() -= 2.0 * (columns.transpose() * columns);
    d2 = d2.cwiseMax(0.0);
    d2.diagonal().setZero();
    return d2;
}

FeatureMatrix pca(const FeatureMatrix& m, int target_dim) {
    const Eigen::Index d = m.dim();
    const Eigen::Index n = m.count();
    if (n < target_dim) {
        throw std::invalid_argument("embed: pca needs at least target_dim columns");
    }
    Eigen::VectorXd mean;
    const Eigen::MatrixXd centered = center_columns(m.data(), mean);
    const Eigen::MatrixXd scatter = centered * centered.transpose() / static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scatter);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("embed: pca eigendecomposition failed");
    }
    // eigenvalues ascending; take the top target_dim in descending order
    Eigen::MatrixXd basis(d, target_dim);
    for (int c = 0; c < target_dim; ++c) {
        Eigen::VectorXd v = eig.eigenvectors().col(d - 1 - c);
        // sign convention: largest-magnitude coordinate positive
        Eigen::Index argmax = 0;
        v.cwiseAbs().maxCoeff(&argmax);
        if (v(argmax) < 0.0) {
            v = -v;
        }
        basis.col(c) = v;
    }
    return m.with_data(basis.transpose() * centered);
}

struct Conditional {
    Eigen::VectorXd p;  // row of conditional probabilities, p(i) = 0 at self
    double entropy = 0.0;
};

// Shannon entropy (nats) and conditionals for one point at precision beta.
Conditional conditional_for_beta(const Eigen::MatrixXd& d2, Eigen::Index i, double beta) {
    const Eigen::Index n = d2.rows();
    Conditional out;
    out.p = Eigen::VectorXd::Zero(n);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i) {
            const double v = std::exp(-beta * d2(i, j));
            out.p(j) = v;
            sum += v;
        }
    }
    if (sum <= 0.0) {
        // all neighbors infinitely far at this precision: fall back to uniform
        for (Eigen::Index j = 0; j < n; ++j) {
            out.p(j) = j == i ? 0.0 : 1.0 / static_cast<double>(n - 1);
        }
        out.entropy = std::log(static_cast<double>(n - 1));
        return out;
    }
    double entropy = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i && out.p(j) > 0.0) {
            const double pj = out.p(j) / sum;
            out.p(j) = pj;
            entropy -= pj * std::log(pj);
        }
    }
    out.entropy = entropy;
    return out;
}

} // namespace

Eigen::MatrixXd tsne_joint_probabilities(const Eigen::MatrixXd& squared_distances,
                                         double perplexity) {
    const Eigen::Index n = squared_distances.rows();
    if (squared_distances.cols() != n) {
        throw std::invalid_argument("tsne_joint_probabilities: square matrix required");
    }
    if (n < 2) {
        throw std::invalid_argument("tsne_joint_probabilities: need at least two points");
    }
    const double target = std::log(perplexity);

    Eigen::MatrixXd conditionals(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double beta = 1.0, beta_lo = 0.0, beta_hi = std::numeric_limits<double>::infinity();
        Conditional c = conditional_for_beta(squared_distances, i, beta);
        for (int tries = 0; tries < 64 && std::abs(c.entropy - target) > 1e-7; ++tries) {
            if (c.entropy > target) {
                beta_lo = beta;
                beta = std::isinf(beta_hi) ? beta * 2.0 : (beta + beta_hi) / 2.0;
            } else {
                beta_hi = beta;
                beta = (beta + beta_lo) / 2.0;
            }
            c = conditional_for_beta(squared_distances, i, beta);
        }
        conditionals.row(i) = c.p.transpose();
    }

    Eigen::MatrixXd joint = conditionals + conditionals.transpose();
    joint /= joint.sum();
    return joint;
}

EmbedResult embed_detailed(const FeatureMatrix& m, const EmbeddingConfig& cfg) {
    const Eigen::Index n = m.count();
    if (cfg.target_dim < 1 || cfg.target_dim >= m.dim()) {
        throw std::invalid_argument("embed: target_dim must satisfy 1 <= target_dim < d");
    }
    if (cfg.method == EmbedMethod::pca) {
        return {pca(m, cfg.target_dim), {}};
    }

    const auto min_n = static_cast<Eigen::Index>(std::ceil(3.0 * cfg.perplexity + 1.0));
    if (n < min_n) {
        throw std::invalid_argument("embed: tsne with perplexity " +
                                    std::to_string(cfg.perplexity) + " needs n >= " +
                                    std::to_string(min_n) + ", got " + std::to_string(n));
    }
    if (cfg.iterations < 1) {
        throw std::invalid_argument("embed: iterations must be >= 1");
    }

    const Eigen::MatrixXd p = tsne_joint_probabilities(pairwise_squared_distances(m.data()),
                                                       cfg.perplexity);
    const int dim = cfg.target_dim;

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd y(dim, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        for (int r = 0; r < dim; ++r) {
            y(r, c) = 1e-4 * gauss(rng);
        }
    }

    Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(dim, n);
    Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(dim, n);
    constexpr double kMinGain = 0.01;

    EmbedResult result;
    result.kl_trace.reserve(static_cast<std::size_t>(cfg.iterations));

    for (int iter = 0; iter < cfg.iterations; ++iter) {
        const bool exaggerate = iter < cfg.exaggeration_duration;
        const double p_scale = exaggerate ? cfg.exaggeration_factor : 1.0;
        const double momentum = iter < 20 ? 0.5 : 0.8;

        // student-t affinities in the embedding
        const Eigen::MatrixXd yd2 = pairwise_squared_distances(y);
        Eigen::MatrixXd num = (1.0 + yd2.array()).inverse().matrix();
        num.diagonal().setZero();
        const double num_sum = num.sum();
        const Eigen::MatrixXd q = num / num_sum;

        // grad_i = 4 sum_j (p_ij - q_ij) (y_i - y_j) / (1 + ||y_i - y_j||^2)
        const Eigen::MatrixXd pq = (p_scale * p - q).cwiseProduct(num);
        Eigen::MatrixXd grad(dim, n);
        const Eigen::VectorXd row_sums = pq.rowwise().sum();
        grad.noalias() = y * row_sums.asDiagonal() - y * pq;
        grad *= 4.0;

        for (Eigen::Index c = 0; c < n; ++c) {
            for (int r = 0; r < dim; ++r) {
                const bool same_sign = (grad(r, c) > 0.0) == (velocity(r, c) > 0.0);
                gains(r, c) = same_sign ? std::max(kMinGain, gains(r, c) * 0.8)
                                        : gains(r, c) + 0.2;
            }
        }
        velocity = momentum * velocity - cfg.learning_rate * gains.cwiseProduct(grad);
        y += velocity;
        y.colwise() -= y.rowwise().mean().eval();

        // KL(P || Q) against the unexaggerated P
        double kl = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i != j && p(i, j) > 0.0) {
                    const double qij = std::max(q(i, j), 1e-300);
                    kl += p(i, j) * std::log(p(i, j) / qij);
                }
            }
        }
        result.kl_trace.push_back(kl);
    }

    result.features = m.with_data(std::move(y));
    return result;
}

FeatureMatrix embed(const FeatureMatrix& m, const EmbeddingConfig& cfg) {
    return embed_detailed(m, cfg).features;
}

} // namespace rsel
