// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exits nonzero if any criterion fails. --cli <path> points at the rsel
// binary for the determinism criterion.

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rsel/bench.hpp"
#include "rsel/classifier.hpp"
#include "rsel/dataset_io.hpp"
#include "rsel/matrix_ops.hpp"
#include "rsel/pipeline.hpp"
#include "rsel/redundancy.hpp"
#include "rsel/selector.hpp"
#include "rsel/solver.hpp"
#include "rsel/synthetic.hpp"

using namespace rsel;

namespace {

std::string g_cli_path;

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw std::runtime_error(message);
    }
}

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            m(r, c) = gauss(rng);
        }
    }
    return m;
}

SelectorConfig tight_selector(int max_iter, double rel_tol) {
    SelectorConfig config;
    config.fista.max_iter = max_iter;
    config.fista.rel_tol = rel_tol;
    return config;
}

// ---------------------------------------------------------------------
// 1. prox closed forms
// ---------------------------------------------------------------------
void criterion_prox() {
    Eigen::MatrixXd row(1, 2);
    row << 3, 4;
    const Eigen::MatrixXd shrunk = prox_l21(row, 2.0);
    require(std::abs(shrunk(0, 0) - 1.8) <= 1e-12 && std::abs(shrunk(0, 1) - 2.4) <= 1e-12,
            "prox_l21((3,4), 2) != (1.8, 2.4)");

    Eigen::MatrixXd tiny(1, 2);
    tiny << 0.1, 0.1;
    require(prox_l21(tiny, 2.0).isZero(0.0), "sub-threshold row must map to exact zero");

    Eigen::MatrixXd scalar(1, 1);
    scalar << 0.5;
    require(std::abs(prox_l1(scalar, 0.2)(0, 0) - 0.3) <= 1e-12, "prox_l1(0.5, 0.2) != 0.3");
    scalar << -0.1;
    require(prox_l1(scalar, 0.2)(0, 0) == 0.0, "sub-threshold entry must map to exact zero");
}

// ---------------------------------------------------------------------
// 2. gradients vs central finite differences
// ---------------------------------------------------------------------
void criterion_gradients() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> dims(2, 8), cols(3, 12), dict_cols(0, 4);
    const double h = 1e-5;

    for (int rep = 0; rep < 20; ++rep) {
        const int d = dims(rng), n = cols(rng), n0 = dict_cols(rng);
        const SelectionProblem p(random_matrix(d, n, 1000 + rep),
                                 n0 ? random_matrix(d, n0, 2000 + rep) : Eigen::MatrixXd(),
                                 rep % 2 ? 3.0 : 0.0, 0.0);
        const Eigen::MatrixXd x = 0.5 * random_matrix(n, n, 3000 + rep);
        const Eigen::MatrixXd analytic = grad_g(p, x);
        Eigen::MatrixXd fd(n, n);
        Eigen::MatrixXd probe = x;
        for (Eigen::Index c = 0; c < n; ++c) {
            for (Eigen::Index r = 0; r < n; ++r) {
                probe(r, c) = x(r, c) + h;
                const double plus = objective_g(p, probe);
                probe(r, c) = x(r, c) - h;
                const double minus = objective_g(p, probe);
                probe(r, c) = x(r, c);
                fd(r, c) = (plus - minus) / (2.0 * h);
            }
        }
        require((analytic - fd).norm() / fd.norm() <= 1e-5,
                "selection gradient disagrees with finite differences");
    }

    for (int rep = 0; rep < 20; ++rep) {
        const int d1 = dims(rng);
        const int n0 = std::max(2, dims(rng) / 2);
        const int big_n = cols(rng) / 2 + 3;
        const Eigen::MatrixXd dict_cols_m = random_matrix(d1, n0, 4000 + rep);
        const Eigen::MatrixXd y = random_matrix(d1, big_n, 5000 + rep);
        const LaplacianGraph graph = build_laplacian(y, std::min(3, big_n - 1));
        const double beta = 0.3;
        const Eigen::MatrixXd c = 0.5 * random_matrix(n0, big_n, 6000 + rep);

        const auto smooth = [&](const Eigen::MatrixXd& code) {
            return (y - dict_cols_m * code).squaredNorm() +
                   beta * (code * graph.l).cwiseProduct(code).sum();
        };
        const Eigen::MatrixXd analytic =
            2.0 * (-dict_cols_m.transpose() * y + dict_cols_m.transpose() * dict_cols_m * c +
                   beta * c * graph.l);
        Eigen::MatrixXd fd(n0, big_n);
        Eigen::MatrixXd probe = c;
        for (Eigen::Index col = 0; col < big_n; ++col) {
            for (Eigen::Index r = 0; r < n0; ++r) {
                probe(r, col) = c(r, col) + h;
                const double plus = smooth(probe);
                probe(r, col) = c(r, col) - h;
                const double minus = smooth(probe);
                probe(r, col) = c(r, col);
                fd(r, col) = (plus - minus) / (2.0 * h);
            }
        }
        require((analytic - fd).norm() / fd.norm() <= 1e-5,
                "classifier gradient disagrees with finite differences");
    }
}

// ---------------------------------------------------------------------
// 3. squared-correlation identity
// ---------------------------------------------------------------------
void criterion_correlation_identity() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dims(3, 12), cols(2, 9);
    for (int rep = 0; rep < 50; ++rep) {
        const int d = dims(rng);
        Eigen::MatrixXd z0 = random_matrix(d, cols(rng), 100 + rep);
        Eigen::MatrixXd z = random_matrix(d, cols(rng), 700 + rep);
        z0.rowwise() -= z0.colwise().mean();
        z.rowwise() -= z.colwise().mean();

        const double lhs = (z0.transpose() * z).squaredNorm();
        double rhs = 0.0;
        for (Eigen::Index i = 0; i < z0.cols(); ++i) {
            for (Eigen::Index j = 0; j < z.cols(); ++j) {
                const double si2 = z0.col(i).squaredNorm() / d;
                const double sj2 = z.col(j).squaredNorm() / d;
                const double rho =
                    z0.col(i).dot(z.col(j)) / (d * std::sqrt(si2) * std::sqrt(sj2));
                rhs += static_cast<double>(d) * d * si2 * sj2 * rho * rho;
            }
        }
        require(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs),
                "correlation identity violated at rep " + std::to_string(rep));
    }
}

// ---------------------------------------------------------------------
// 4. row-wise optimality conditions
// ---------------------------------------------------------------------
void criterion_optimality() {
    for (int rep = 0; rep < 10; ++rep) {
        Eigen::VectorXd mean;
        const Eigen::MatrixXd z =
            center_columns(random_matrix(10, 50, 9000 + rep), mean);
        SelectionProblem p(z, Eigen::MatrixXd(), 0.0, 0.0);
        p.lambda2 = lambda0(p) / 2.5;
        const auto result = select_representatives(p, 50, tight_selector(60000, 1e-13));

        const Eigen::MatrixXd grad = grad_g(p, result.solution.x);
        const double cutoff = 1e-8 * result.solution.row_norms.maxCoeff();
        for (Eigen::Index i = 0; i < 50; ++i) {
            const double norm = result.solution.row_norms(i);
            if (norm > cutoff) {
                const double residual =
                    (grad.row(i) + p.lambda2 * result.solution.x.row(i) / norm).norm();
                require(residual <= 1e-4 * p.lambda2,
                        "nonzero-row stationarity violated, residual/lambda2 = " +
                            std::to_string(residual / p.lambda2));
            } else {
                require(grad.row(i).norm() <= p.lambda2 + 1e-4,
                        "zero-row condition violated");
            }
        }
    }
}

// ---------------------------------------------------------------------
// 5. lambda0 threshold brackets the all-zero solution
// ---------------------------------------------------------------------
void criterion_lambda0() {
    for (int rep = 0; rep < 10; ++rep) {
        Eigen::VectorXd mean;
        const Eigen::MatrixXd z =
            center_columns(random_matrix(8, 24, 11000 + rep), mean);
        SelectionProblem p(z, Eigen::MatrixXd(), 0.0, 0.0);
        const double threshold = lambda0(p);

        p.lambda2 = 1.01 * threshold;
        require(select_representatives(p, 24, tight_selector(20000, 1e-12)).solution.x.norm() <
                    1e-6,
                "norm above 1e-6 at lambda2 = 1.01 lambda0");
        p.lambda2 = 0.5 * threshold;
        require(select_representatives(p, 24, tight_selector(20000, 1e-12)).solution.x.norm() >
                    1e-3,
                "norm below 1e-3 at lambda2 = 0.5 lambda0");
    }
}

// ---------------------------------------------------------------------
// 6. brute-force subset oracle on duplicate-bearing instances
// ---------------------------------------------------------------------
double subset_error(const Eigen::MatrixXd& z, const std::vector<Eigen::Index>& subset) {
    Eigen::MatrixXd zs(z.rows(), static_cast<Eigen::Index>(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i) {
        zs.col(static_cast<Eigen::Index>(i)) = z.col(subset[i]);
    }
    const Eigen::MatrixXd w = zs.completeOrthogonalDecomposition().solve(z);
    return (z - zs * w).squaredNorm();
}

void criterion_brute_force() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> magnitude(0.8, 1.2);

    for (int rep = 0; rep < 6; ++rep) {
        const int bases = 4 + rep % 3;       // distinct columns
        const int copies = 2 + rep % 3;      // duplicate count of one base
        const int n = bases + copies - 1;    // <= 12
        const int d = 8;

        // orthogonal bases with comparable magnitudes: every base is needed
        // for reconstruction and duplicate rows rank strictly below
        // singletons after the row-sparse solve splits their mass
        Eigen::MatrixXd base =
            Eigen::HouseholderQR<Eigen::MatrixXd>(random_matrix(d, bases, 13000 + rep))
                .householderQ() *
            Eigen::MatrixXd::Identity(d, bases);
        for (int c = 0; c < bases; ++c) {
            base.col(c) *= magnitude(rng);
        }
        // duplicate group lives at columns dup_at..dup_at+copies-1
        const int dup_at = rep % bases;
        Eigen::MatrixXd z(d, n);
        std::vector<int> group_of(static_cast<std::size_t>(n));
        int col = 0;
        for (int b = 0; b < bases; ++b) {
            const int reps_here = b == dup_at ? copies : 1;
            for (int r = 0; r < reps_here; ++r) {
                z.col(col) = base.col(b);
                group_of[static_cast<std::size_t>(col)] = b;
                ++col;
            }
        }

        SelectionProblem p(z, Eigen::MatrixXd(), 0.0, 0.0);
        p.lambda2 = lambda0(p) / 10.0;  // weak sparsity: keep every base alive
        const auto result = select_representatives(p, bases, tight_selector(40000, 1e-13));

        std::set<int> covered;
        for (Eigen::Index i : result.indices) {
            require(covered.insert(group_of[static_cast<std::size_t>(i)]).second,
                    "duplicate group covered twice at rep " + std::to_string(rep));
        }

        // brute force over all subsets of the same size
        const auto k = result.indices.size();
        require(k >= 1, "empty selection at rep " + std::to_string(rep));
        std::vector<Eigen::Index> subset(k);
        double best = std::numeric_limits<double>::infinity();
        std::function<void(std::size_t, Eigen::Index)> enumerate =
            [&](std::size_t depth, Eigen::Index from) {
                if (depth == k) {
                    best = std::min(best, subset_error(z, subset));
                    return;
                }
                for (Eigen::Index c = from; c < n; ++c) {
                    subset[depth] = c;
                    enumerate(depth + 1, c + 1);
                }
            };
        enumerate(0, 0);

        const double achieved = subset_error(z, result.indices);
        require(achieved <= 1.05 * best + 1e-12,
                "reconstruction error " + std::to_string(achieved) + " misses brute-force " +
                    std::to_string(best) + " by more than 5% at rep " + std::to_string(rep));
    }
}

// ---------------------------------------------------------------------
// 7. inter-iteration decorrelation
// ---------------------------------------------------------------------
void criterion_decorrelation() {
    double with = 0.0, without = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::VectorXd mean;
        const Eigen::MatrixXd z =
            center_columns(random_matrix(8, 30, 15000 + rep), mean);
        const Eigen::MatrixXd z0 = z.leftCols(6);
        for (const double lambda1 : {0.0, 10.0}) {
            SelectionProblem p(z, z0, lambda1, 0.0);
            p.lambda2 = lambda0(p) / 2.5;
            const auto result = select_representatives(p, 30, tight_selector(4000, 1e-10));
            const double correlation =
                (z0.transpose() * z * result.solution.x).squaredNorm();
            (lambda1 == 0.0 ? without : with) += correlation / 20.0;
        }
    }
    require(with < without, "mean correlation at lambda1 = 10 (" + std::to_string(with) +
                                ") not below lambda1 = 0 (" + std::to_string(without) + ")");
}

// ---------------------------------------------------------------------
// 8. SRC recovery
// ---------------------------------------------------------------------
void criterion_src_recovery() {
    // orthonormal dictionary, no regularization: C = D^T Y
    const Eigen::MatrixXd q =
        Eigen::HouseholderQR<Eigen::MatrixXd>(random_matrix(10, 6, 501)).householderQ() *
        Eigen::MatrixXd::Identity(10, 6);
    LabeledDictionary dict;
    {
        const std::vector<std::uint32_t> labels{0, 1, 2, 3, 4, 5};
        const std::vector<Provenance> prov(6, Provenance::queried);
        dict.append(q, labels, prov, true);
    }
    const Eigen::MatrixXd y = random_matrix(10, 8, 502);
    const LaplacianGraph graph = build_laplacian(y, 3);
    SrcConfig config;
    config.fista.max_iter = 20000;
    config.fista.rel_tol = 1e-13;
    const SparseCodeMatrix code = src_solve(dict, y, 0.0, 0.0, graph, config);
    require((code.c - q.transpose() * y).cwiseAbs().maxCoeff() <= 1e-8,
            "orthonormal recovery misses D^T Y");

    // noiseless separable classes: one exemplar each gives 100% accuracy
    SyntheticSpec spec;
    spec.identities = 10;
    spec.cameras = 2;
    spec.images_per_identity_per_camera = 3;
    spec.dim = 24;
    spec.cluster_std = 0.0;
    spec.camera_shift_scale = 0.0;
    const FeatureMatrix data = gen_synthetic(spec, 503);
    const Oracle oracle(data);

    LabeledDictionary exemplars;
    std::set<std::uint32_t> seen;
    std::vector<Eigen::Index> rest;
    for (Eigen::Index c = 0; c < data.count(); ++c) {
        const std::uint32_t label = oracle.label_of(c);
        if (seen.insert(label).second) {
            const std::vector<std::uint32_t> labels{label};
            const std::vector<Provenance> prov{Provenance::queried};
            exemplars.append(data.data().col(c), labels, prov, true);
        } else {
            rest.push_back(c);
        }
    }
    const FeatureMatrix test = data.subset(rest);
    const Oracle test_oracle(test);
    const LaplacianGraph test_graph = build_laplacian(test, 5);
    const SparseCodeMatrix codes = src_solve(exemplars, test, 0.2, 0.3, test_graph, config);
    const auto preds = class_probabilities(codes, exemplars.labels()).predictions();
    for (Eigen::Index t = 0; t < test.count(); ++t) {
        require(preds[static_cast<std::size_t>(t)] == test_oracle.label_of(t),
                "misclassified a noiseless separable test column");
    }
}

// ---------------------------------------------------------------------
// 9. Laplacian validity and beta smoothing
// ---------------------------------------------------------------------
void criterion_laplacian() {
    const Eigen::MatrixXd y = random_matrix(6, 30, 601);
    const LaplacianGraph graph = build_laplacian(y, 5);
    require(graph.l.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-10, "row sums exceed 1e-10");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(graph.l);
    require(eig.eigenvalues().minCoeff() >= -1e-8, "Laplacian not PSD within -1e-8");

    // beta smoothing on a seeded near-duplicate instance
    std::mt19937_64 rng(602);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd d = random_matrix(8, 12, 603);
    for (Eigen::Index c = 1; c < d.cols(); ++c) {
        d.col(c) = 0.9 * d.col(0) + 0.1 * d.col(c);
    }
    LabeledDictionary dict;
    {
        const std::vector<std::uint32_t> labels(12, 0);
        const std::vector<Provenance> prov(12, Provenance::queried);
        dict.append(d, labels, prov, true);
    }
    const int pairs = 5;
    Eigen::MatrixXd t(8, 2 * pairs);
    for (int p = 0; p < pairs; ++p) {
        Eigen::VectorXd base(8), noise(8);
        for (int r = 0; r < 8; ++r) {
            base(r) = gauss(rng);
            noise(r) = 0.01 * gauss(rng);
        }
        t.col(2 * p) = base;
        t.col(2 * p + 1) = base + noise;
    }
    const LaplacianGraph pair_graph = build_laplacian(t, 1);
    SrcConfig config;
    config.fista.max_iter = 20000;
    config.fista.rel_tol = 1e-12;
    const auto spread = [&](double beta) {
        const SparseCodeMatrix code = src_solve(dict, t, 0.2, beta, pair_graph, config);
        double total = 0.0;
        for (int p = 0; p < pairs; ++p) {
            total += (code.c.col(2 * p) - code.c.col(2 * p + 1)).squaredNorm();
        }
        return total / pairs;
    };
    require(spread(0.3) < spread(0.0), "beta = 0.3 does not pull duplicate codes together");
}

// ---------------------------------------------------------------------
// 10. end-to-end active loop
// ---------------------------------------------------------------------
ExperimentConfig end_to_end_config() {
    ExperimentConfig cfg;
    cfg.synthetic.identities = 50;
    cfg.synthetic.cameras = 3;
    cfg.synthetic.images_per_identity_per_camera = 6;
    cfg.synthetic.dim = 20;
    cfg.synthetic.cluster_std = 0.3;
    cfg.synthetic.camera_shift_scale = 1.0;
    cfg.pool.images_per_person_per_camera = 2;
    cfg.pool.test_images_per_person_per_camera = 2;
    cfg.embedding.method = EmbedMethod::tsne;
    cfg.embedding.target_dim = 10;
    cfg.embedding.perplexity = 10.0;
    cfg.embedding.iterations = 1000;
    cfg.lambda1 = 2.0;
    cfg.budget_fraction = 0.3;
    cfg.trials = 5;
    cfg.seeds = {1, 2, 3, 4, 5};
    cfg.selector.fista.max_iter = 300;
    cfg.selector.fista.rel_tol = 1e-5;
    cfg.src.fista.max_iter = 300;
    cfg.src.fista.rel_tol = 1e-5;
    return cfg;
}

void criterion_end_to_end() {
    ExperimentConfig cfg = end_to_end_config();
    const ExperimentResult proposed = run_experiment(cfg);
    cfg.method = SelectionMethod::random;
    const ExperimentResult random = run_experiment(cfg);

    double proposed_mean = 0.0, random_mean = 0.0;
    int queries = 0, labeled = 0;
    for (int i = 0; i < 5; ++i) {
        const auto& p = proposed.trials[static_cast<std::size_t>(i)];
        const auto& r = random.trials[static_cast<std::size_t>(i)];
        require(p.total_queries == 90 && r.total_queries == 90,
                "trial did not reach the 30% query budget");
        proposed_mean += p.curve.points.back().accuracy / 5.0;
        random_mean += r.curve.points.back().accuracy / 5.0;
        queries += p.total_queries;
        labeled += p.total_labeled;
    }
    require(proposed_mean >= random_mean,
            "proposed mean " + std::to_string(proposed_mean) + " below random mean " +
                std::to_string(random_mean));
    require(queries < labeled, "no label propagation occurred");
}

// ---------------------------------------------------------------------
// 11. smrs equals proposed with lambda1 = 0
// ---------------------------------------------------------------------
void criterion_smrs_equivalence() {
    ExperimentConfig cfg;
    cfg.synthetic.identities = 20;
    cfg.synthetic.cameras = 2;
    cfg.synthetic.images_per_identity_per_camera = 4;
    cfg.synthetic.dim = 16;
    cfg.synthetic.cluster_std = 0.2;
    cfg.synthetic.camera_shift_scale = 0.5;
    cfg.pool.images_per_person_per_camera = 2;
    cfg.pool.test_images_per_person_per_camera = 1;
    cfg.embedding.method = EmbedMethod::pca;
    cfg.embedding.target_dim = 8;
    cfg.batch_cap = 8;
    cfg.budget_count = 20;
    cfg.trials = 1;
    cfg.selector.fista.max_iter = 2000;
    cfg.selector.fista.rel_tol = 1e-9;
    cfg.src.fista.max_iter = 500;
    cfg.src.fista.rel_tol = 1e-7;

    for (std::uint64_t seed : {11ull, 22ull, 33ull}) {
        cfg.seeds = {seed};
        cfg.method = SelectionMethod::smrs;
        const TrialResult smrs = run_trial(cfg, seed);
        cfg.method = SelectionMethod::proposed;
        cfg.lambda1 = 0.0;
        const TrialResult proposed = run_trial(cfg, seed);

        require(smrs.iterations.size() == proposed.iterations.size(),
                "iteration counts differ at seed " + std::to_string(seed));
        for (std::size_t i = 0; i < smrs.iterations.size(); ++i) {
            require(smrs.iterations[i].selected == proposed.iterations[i].selected,
                    "selections differ at seed " + std::to_string(seed));
            require(smrs.iterations[i].queried == proposed.iterations[i].queried,
                    "queries differ at seed " + std::to_string(seed));
        }
        require(smrs.curve.points.size() == proposed.curve.points.size(),
                "curves differ in length");
        for (std::size_t i = 0; i < smrs.curve.points.size(); ++i) {
            require(smrs.curve.points[i].accuracy == proposed.curve.points[i].accuracy,
                    "accuracies not bit-identical at seed " + std::to_string(seed));
        }
    }
}

// ---------------------------------------------------------------------
// 12. gradient cost scaling
// ---------------------------------------------------------------------
void criterion_complexity() {
    const BenchReport report = bench_complexity({100, 200, 400, 800}, 10, 20, 3, 1);
    require(report.loglog_slope >= 2.0 && report.loglog_slope <= 3.6,
            "log-log slope " + std::to_string(report.loglog_slope) + " outside [2.0, 3.6]");
}

// ---------------------------------------------------------------------
// 13. CLI determinism
// ---------------------------------------------------------------------
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "missing output file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void run_cli(const std::string& args) {
    const std::string command = g_cli_path + " " + args + " > /dev/null 2>&1";
    require(std::system(command.c_str()) == 0, "command failed: " + command);
}

void criterion_cli_determinism() {
    require(!g_cli_path.empty(), "pass --cli <path to rsel binary>");
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / ("rsel_accept_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const auto at = [&](const std::string& name) { return (dir / name).string(); };

    // gen-synth
    run_cli("gen-synth --identities 12 --cameras 2 --images-per 4 --dim 8 --seed 5 --out " +
            at("a.csv"));
    run_cli("gen-synth --identities 12 --cameras 2 --images-per 4 --dim 8 --seed 5 --out " +
            at("b.csv"));
    require(slurp(at("a.csv")) == slurp(at("b.csv")), "gen-synth runs differ");

    // select
    run_cli("select --data " + at("a.csv") + " --k 6 --out " + at("sel1.csv"));
    run_cli("select --data " + at("a.csv") + " --k 6 --out " + at("sel2.csv"));
    require(slurp(at("sel1.csv")) == slurp(at("sel2.csv")), "select runs differ");

    // classify
    run_cli("gen-synth --identities 6 --cameras 1 --images-per 1 --dim 8 --seed 9 --out " +
            at("dict.csv"));
    run_cli("classify --dict " + at("dict.csv") + " --test " + at("a.csv") + " --out " +
            at("cls1.csv"));
    run_cli("classify --dict " + at("dict.csv") + " --test " + at("a.csv") + " --out " +
            at("cls2.csv"));
    require(slurp(at("cls1.csv")) == slurp(at("cls2.csv")), "classify runs differ");

    // extract-features
    fs::create_directories(dir / "imgs");
    std::ostringstream manifest;
    manifest << "id,camera,label,path\n";
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 4; ++i) {
        const std::string name = "img" + std::to_string(i) + ".ppm";
        std::ofstream out(dir / "imgs" / name, std::ios::binary);
        out << "P6\n8 16\n255\n";
        for (int px = 0; px < 8 * 16 * 3; ++px) {
            out.put(static_cast<char>(byte(rng)));
        }
        manifest << "img" << i << ',' << i % 2 << ',' << i << ',' << name << '\n';
    }
    {
        std::ofstream out(dir / "manifest.csv");
        out << manifest.str();
    }
    run_cli("extract-features --in " + (dir / "imgs").string() + " --manifest " +
            at("manifest.csv") + " --out " + at("f1.csv"));
    run_cli("extract-features --in " + (dir / "imgs").string() + " --manifest " +
            at("manifest.csv") + " --out " + at("f2.csv"));
    require(slurp(at("f1.csv")) == slurp(at("f2.csv")), "extract-features runs differ");

    // run-experiment
    {
        std::ofstream out(dir / "exp.cfg");
        out << "synthetic_identities = 10\n"
               "synthetic_cameras = 2\n"
               "synthetic_images_per = 4\n"
               "synthetic_dim = 12\n"
               "synthetic_cluster_std = 0.1\n"
               "pool_images_per = 2\n"
               "test_images_per = 1\n"
               "embed_method = pca\n"
               "embed_dim = 6\n"
               "batch_cap = 5\n"
               "budget_count = 10\n"
               "trials = 2\n"
               "seeds = 1, 2\n"
               "select_max_iter = 1000\n"
               "src_max_iter = 400\n"
               "grid_points = 6\n";
    }
    run_cli("run-experiment --config " + at("exp.cfg") + " --out " + at("out1"));
    run_cli("run-experiment --config " + at("exp.cfg") + " --out " + at("out2"));
    for (const std::string name : {"trial_0.csv", "trial_1.csv", "aggregate.csv", "plot.svg"}) {
        require(slurp((dir / "out1" / name).string()) == slurp((dir / "out2" / name).string()),
                "run-experiment output " + name + " differs between runs");
    }

    fs::remove_all(dir);
}

struct Criterion {
    int id;
    const char* name;
    void (*run)();
    double budget_seconds;
};

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        if (std::string(argv[i]) == "--cli") {
            g_cli_path = argv[i + 1];
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "prox closed forms", criterion_prox, 1.0},
        {2, "gradient correctness vs finite differences", criterion_gradients, 10.0},
        {3, "squared-correlation identity", criterion_correlation_identity, 5.0},
        {4, "row-wise optimality conditions", criterion_optimality, 30.0},
        {5, "lambda0 threshold bracketing", criterion_lambda0, 30.0},
        {6, "brute-force subset oracle", criterion_brute_force, 60.0},
        {7, "inter-iteration decorrelation", criterion_decorrelation, 60.0},
        {8, "SRC recovery", criterion_src_recovery, 10.0},
        {9, "Laplacian validity and beta smoothing", criterion_laplacian, 5.0},
        {10, "end-to-end active loop", criterion_end_to_end, 120.0},
        {11, "smrs equivalence", criterion_smrs_equivalence, 60.0},
        {12, "gradient cost scaling", criterion_complexity, 180.0},
        {13, "CLI determinism", criterion_cli_determinism, 120.0},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criterion.run();
        } catch (const std::exception& e) {
            failure = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        if (failure.empty() && elapsed <= criterion.budget_seconds) {
            line << "PASS  " << criterion.id << "  " << criterion.name << "  (" << elapsed
                 << "s of " << criterion.budget_seconds << "s)";
        } else {
            ++failures;
            line << "FAIL  " << criterion.id << "  " << criterion.name << "  (" << elapsed
                 << "s of " << criterion.budget_seconds << "s)";
            if (!failure.empty()) {
                line << "  " << failure;
            } else {
                line << "  exceeded the runtime budget";
            }
        }
        std::cout << line.str() << std::endl;
    }

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all 13 criteria passed" << std::endl;
    return 0;
}
