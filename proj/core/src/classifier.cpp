#include "rsel/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rsel {

namespace {

double power_iteration_top_eigenvalue(const Eigen::MatrixXd& m, const char* who) {
    const Eigen::Index n = m.rows();
    std::mt19937_64 rng(0x517cc1b727220a95ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = gauss(rng);
    }
    v.normalize();
    double eigenvalue = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd mv = m * v;
        const double norm = mv.norm();
        if (norm == 0.0) {
            return 0.0;
        }
        v = mv / norm;
        const double next = v.dot(m * v);
        if (std::abs(next - eigenvalue) <= 1e-8 * std::max(std::abs(next), 1e-300)) {
            return next;
        }
        eigenvalue = next;
    }
    throw std::runtime_error(std::string(who) + ": power iteration did not converge");
}

} // namespace

LaplacianGraph build_laplacian(const Eigen::MatrixXd& columns, int knn_k) {
    const Eigen::Index n = columns.cols();
    if (knn_k < 1) {
        throw std::invalid_argument("build_laplacian: knn_k must be >= 1");
    }
    if (n < knn_k + 1) {
        throw std::invalid_argument("build_laplacian: need at least knn_k + 1 = " +
                                    std::to_string(knn_k + 1) + " columns, got " +
                                    std::to_string(n));
    }

    const Eigen::VectorXd sq = columns.colwise().squaredNorm();
    Eigen::MatrixXd d2 = sq.replicate(1, n) + sq.transpose().replicate(n, 1);
    d2.noalias() -= 2.0 * (columns.transpose() * columns);
    d2 = d2.cwiseMax(0.0);
    d2.diagonal().setZero();

    // self-tuning bandwidth: median pairwise distance
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            dists.push_back(std::sqrt(d2(i, j)));
        }
    }
    std::sort(dists.begin(), dists.end());
    double sigma = 0.0;
    if (!dists.empty()) {
        const std::size_t mid = dists.size() / 2;
        sigma = dists.size() % 2 == 1 ? dists[mid] : (dists[mid - 1] + dists[mid]) / 2.0;
    }
    if (sigma <= 0.0) {
        sigma = 1.0;  // all points coincide; weights are exp(0) anyway
    }

    // symmetrized k-NN: edge if either endpoint lists the other
    Eigen::MatrixXi edge = Eigen::MatrixXi::Zero(n, n);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            if (d2(i, a) != d2(i, b)) return d2(i, a) < d2(i, b);
            return a < b;
        });
        int taken = 0;
        for (Eigen::Index j : order) {
            if (j == i) {
                continue;
            }
            edge(i, j) = 1;
            edge(j, i) = 1;
            if (++taken == knn_k) {
                break;
            }
        }
    }

    LaplacianGraph graph;
    graph.knn_k = knn_k;
    graph.kernel_bandwidth = sigma;
    graph.w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j && edge(i, j) == 1) {
                graph.w(i, j) = std::exp(-d2(i, j) / (2.0 * sigma * sigma));
            }
        }
    }
    graph.l = Eigen::MatrixXd(graph.w.rowwise().sum().asDiagonal());
    graph.l -= graph.w;
    return graph;
}

LaplacianGraph build_laplacian(const FeatureMatrix& y, int knn_k) {
    return build_laplacian(y.data(), knn_k);
}

SparseCodeMatrix src_solve(const LabeledDictionary& dict,
                           const Eigen::MatrixXd& y,
                           double alpha, double beta,
                           const LaplacianGraph& graph,
                           const SrcConfig& config) {
    if (dict.empty()) {
        throw std::invalid_argument("src_solve: empty dictionary");
    }
    if (y.rows() != dict.dim()) {
        throw std::invalid_argument("src_solve: feature dimension mismatch");
    }
    if (alpha < 0.0 || beta < 0.0) {
        throw std::invalid_argument("src_solve: alpha and beta must be >= 0");
    }
    const Eigen::Index big_n = y.cols();
    if (beta > 0.0 && graph.l.rows() != big_n) {
        throw std::invalid_argument("src_solve: Laplacian size does not match test count");
    }

    const Eigen::MatrixXd& d = dict.data();
    const Eigen::MatrixXd dict_gram = d.transpose() * d;   // n0 x n0
    const Eigen::MatrixXd dty = d.transpose() * y;         // n0 x N

    double lipschitz;
    if (config.lipschitz == LipschitzMode::frobenius) {
        lipschitz = 2.0 * (dict_gram.squaredNorm() +
                           (beta > 0.0 ? beta * graph.l.squaredNorm() : 0.0));
    } else {
        double top = power_iteration_top_eigenvalue(dict_gram, "src_solve");
        if (beta > 0.0) {
            top += beta * power_iteration_top_eigenvalue(graph.l, "src_solve");
        }
        lipschitz = 2.0 * top;
    }
    if (lipschitz <= 0.0) {
        throw std::invalid_argument("src_solve: degenerate problem, zero curvature");
    }

    SmoothPart smooth{
        [&](const Eigen::MatrixXd& c) {
            Eigen::MatrixXd grad = -dty;
            grad.noalias() += dict_gram * c;
            if (beta > 0.0) {
                grad.noalias() += beta * (c * graph.l);
            }
            return Eigen::MatrixXd(2.0 * grad);
        },
        lipschitz,
        [&](const Eigen::MatrixXd& c) {
            double value = (y - d * c).squaredNorm();
            if (beta > 0.0) {
                value += beta * (c * graph.l).cwiseProduct(c).sum();
            }
            return value;
        },
    };
    ProxPart shrink{
        [alpha](const Eigen::MatrixXd& c, double step) { return prox_l1(c, step * alpha); },
        [alpha](const Eigen::MatrixXd& c) { return alpha * c.cwiseAbs().sum(); },
    };

    SolverReport report = fista(smooth, shrink, Eigen::MatrixXd::Zero(dict.size(), big_n),
                                config.fista);
    return SparseCodeMatrix{std::move(report.solution)};
}

SparseCodeMatrix src_solve(const LabeledDictionary& dict,
                           const FeatureMatrix& y,
                           double alpha, double beta,
                           const LaplacianGraph& graph,
                           const SrcConfig& config) {
    return src_solve(dict, y.data(), alpha, beta, graph, config);
}

ClassProbabilities class_probabilities(const SparseCodeMatrix& c,
                                       std::span<const std::uint32_t> labels) {
    if (labels.size() != static_cast<std::size_t>(c.c.rows())) {
        throw std::invalid_argument("class_probabilities: labels length must equal n0");
    }
    std::map<std::uint32_t, Eigen::Index> class_row;
    for (std::uint32_t label : labels) {
        class_row.emplace(label, 0);
    }
    ClassProbabilities out;
    out.classes.reserve(class_row.size());
    for (auto& [label, row] : class_row) {
        row = static_cast<Eigen::Index>(out.classes.size());
        out.classes.push_back(label);
    }

    const Eigen::Index n_classes = static_cast<Eigen::Index>(out.classes.size());
    const Eigen::Index big_n = c.c.cols();
    out.p = Eigen::MatrixXd::Zero(n_classes, big_n);
    for (Eigen::Index j = 0; j < c.c.rows(); ++j) {
        const Eigen::Index row = class_row.at(labels[static_cast<std::size_t>(j)]);
        out.p.row(row) += c.c.row(j).cwiseAbs();
    }
    for (Eigen::Index t = 0; t < big_n; ++t) {
        const double total = out.p.col(t).sum();
        if (total > 0.0) {
            out.p.col(t) /= total;
        } else {
            out.p.col(t).setConstant(1.0 / static_cast<double>(n_classes));
        }
    }
    return out;
}

std::vector<std::uint32_t> ClassProbabilities::predictions() const {
    std::vector<std::uint32_t> preds;
    preds.reserve(static_cast<std::size_t>(p.cols()));
    for (Eigen::Index t = 0; t < p.cols(); ++t) {
        Eigen::Index best = 0;
        for (Eigen::Index r = 1; r < p.rows(); ++r) {
            if (p(r, t) > p(best, t)) {
                best = r;  // ties keep the smaller class id
            }
        }
        preds.push_back(classes[static_cast<std::size_t>(best)]);
    }
    return preds;
}

LabeledDictionary add_labeled(const LabeledDictionary& dict,
                              const Eigen::MatrixXd& columns,
                              std::span<const std::uint32_t> labels,
                              std::span<const Provenance> provenance,
                              bool normalize_columns) {
    LabeledDictionary out = dict;
    out.append(columns, labels, provenance, normalize_columns);
    return out;
}

} // namespace rsel
