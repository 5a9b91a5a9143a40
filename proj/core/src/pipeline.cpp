#include "rsel/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rsel/matrix_ops.hpp"
#include "rsel/redundancy.hpp"

namespace rsel {

namespace {

// independent substreams from one trial seed
std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Eigen::MatrixXd columns_at(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.col(static_cast<Eigen::Index>(i)) = m.col(idx[i]);
    }
    return out;
}

double uniform_guess_accuracy(const FeatureMatrix& test) {
    const Oracle oracle(test);
    std::set<std::uint32_t> classes;
    for (Eigen::Index t = 0; t < test.count(); ++t) {
        classes.insert(oracle.label_of(t));
    }
    return classes.empty() ? 0.0 : 1.0 / static_cast<double>(classes.size());
}

double evaluate_accuracy(const LabeledDictionary& dict,
                         const FeatureMatrix& test,
                         const LaplacianGraph& graph,
                         const ExperimentConfig& cfg) {
    const SparseCodeMatrix codes = src_solve(dict, test, cfg.alpha, cfg.beta, graph, cfg.src);
    const ClassProbabilities probs = class_probabilities(codes, dict.labels());
    const auto preds = probs.predictions();
    const Oracle oracle(test);
    Eigen::Index hits = 0;
    for (Eigen::Index t = 0; t < test.count(); ++t) {
        if (preds[static_cast<std::size_t>(t)] == oracle.label_of(t)) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(test.count());
}

} // namespace

TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();

    const FeatureMatrix dataset =
        cfg.dataset_path.empty() ? gen_synthetic(cfg.synthetic, cfg.synthetic_seed)
                                 : load_dataset(cfg.dataset_path, cfg.dataset_format);

    auto [pool, test] = build_pools(dataset, cfg.pool, substream(seed, 0));

    EmbeddingConfig embed_cfg = cfg.embedding;
    embed_cfg.seed = substream(seed, 1);
    const FeatureMatrix pool_embedded = embed(pool, embed_cfg);

    const Eigen::Index pool_size = pool.count();
    const Eigen::Index batch_cap =
        cfg.batch_cap > 0 ? cfg.batch_cap
                          : static_cast<Eigen::Index>(
                                std::ceil(0.05 * static_cast<double>(pool_size)));
    int budget = cfg.budget_count > 0
                     ? cfg.budget_count
                     : static_cast<int>(std::lround(cfg.budget_fraction *
                                                    static_cast<double>(pool_size)));
    budget = std::min<int>(budget, static_cast<int>(pool_size));

    const LaplacianGraph test_graph = build_laplacian(test, cfg.knn_k);
    const Oracle pool_oracle(pool);

    std::vector<Eigen::Index> active(static_cast<std::size_t>(pool_size));
    std::iota(active.begin(), active.end(), Eigen::Index{0});

    LabeledDictionary src_dict;       // original features, normalized columns
    LabeledDictionary embedded_dict;  // embedding-space columns for the selector

    std::mt19937_64 random_rng(substream(seed, 2));

    TrialResult result;
    result.initial_pool_size = pool_size;
    result.curve.points.push_back({0, 0, uniform_guess_accuracy(test)});

    Eigen::Index discarded = 0;
    int queries = 0;
    int labeled = 0;

    while (queries < budget && !active.empty()) {
        const Eigen::Index n_active = static_cast<Eigen::Index>(active.size());
        const Eigen::Index cap = std::min(batch_cap, n_active);

        // pool and dictionary share the current pool mean before solving
        Eigen::VectorXd pool_mean;
        const Eigen::MatrixXd z =
            center_columns(columns_at(pool_embedded.data(), active), pool_mean);

        std::vector<Eigen::Index> batch_local;  // indices into `active`
        if (cfg.method == SelectionMethod::random) {
            std::vector<Eigen::Index> all(static_cast<std::size_t>(n_active));
            std::iota(all.begin(), all.end(), Eigen::Index{0});
            std::sample(all.begin(), all.end(), std::back_inserter(batch_local),
                        static_cast<std::size_t>(cap), random_rng);
        } else {
            const double lambda1 = cfg.method == SelectionMethod::smrs ? 0.0 : cfg.lambda1;
            Eigen::MatrixXd z0;
            if (!embedded_dict.empty()) {
                z0 = embedded_dict.data().colwise() - pool_mean;
            }
            SelectionProblem problem(z, std::move(z0), lambda1, 0.0);
            problem.lambda2 = lambda0(problem) / cfg.gamma;
            SelectionResult selection = select_representatives(problem, cap, cfg.selector);
            batch_local = std::move(selection.indices);
            if (batch_local.empty()) {
                result.curve.warning = "selection returned no representatives after " +
                                       std::to_string(queries) + " of " + std::to_string(budget) +
                                       " queries";
                break;
            }
        }

        // redundancy is judged in the raw feature space: embedded
        // coordinates separate identities but distort cosine similarity
        std::vector<Eigen::Index> batch_global;
        batch_global.reserve(batch_local.size());
        for (Eigen::Index local : batch_local) {
            batch_global.push_back(active[static_cast<std::size_t>(local)]);
        }
        const Eigen::MatrixXd batch_features = columns_at(pool.data(), batch_global);
        const RedundancyGroups groups = build_groups(batch_features, cfg.tau);

        IterationRecord record;
        record.selected = batch_local;

        std::vector<Eigen::Index> leaving_local;  // indices into `active`
        std::vector<Eigen::Index> dict_global;
        std::vector<std::uint32_t> dict_labels;
        std::vector<Provenance> dict_provenance;

        for (Eigen::Index g = 0; g < groups.group_count() && queries < budget; ++g) {
            const Eigen::Index query_local =
                batch_local[static_cast<std::size_t>(
                    groups.query_index[static_cast<std::size_t>(g)])];
            const Eigen::Index query_global = active[static_cast<std::size_t>(query_local)];
            const std::uint32_t label = pool_oracle.label_of(query_global);
            ++queries;
            record.queried.push_back(query_global);
            ++record.queries;

            for (const LabelRecord& rec : propagate_label(groups, g, label)) {
                const Eigen::Index member_local =
                    batch_local[static_cast<std::size_t>(rec.index)];
                const Eigen::Index member_global = active[static_cast<std::size_t>(member_local)];
                ++labeled;
                ++record.labeled;
                leaving_local.push_back(member_local);
                if (cfg.strict_dictionary && rec.provenance == Provenance::propagated) {
                    ++discarded;
                    continue;
                }
                dict_global.push_back(member_global);
                dict_labels.push_back(rec.label);
                dict_provenance.push_back(rec.provenance);
            }
        }

        if (!dict_global.empty()) {
            src_dict.append(columns_at(pool.data(), dict_global), dict_labels, dict_provenance,
                            /*normalize_columns=*/true);
            embedded_dict.append(columns_at(pool_embedded.data(), dict_global), dict_labels,
                                 dict_provenance, /*normalize_columns=*/false);
        }

        std::sort(leaving_local.begin(), leaving_local.end());
        for (auto it = leaving_local.rbegin(); it != leaving_local.rend(); ++it) {
            active.erase(active.begin() + *it);
        }

        // every column is in exactly one of pool, dictionary, discarded
        if (static_cast<Eigen::Index>(active.size()) + src_dict.size() + discarded != pool_size) {
            throw std::logic_error("run_trial: pool conservation violated");
        }

        const double accuracy = evaluate_accuracy(src_dict, test, test_graph, cfg);
        result.curve.points.push_back({queries, labeled, accuracy});
        result.iterations.push_back(std::move(record));
    }

    if (queries < budget && active.empty() && result.curve.warning.empty()) {
        result.curve.warning = "pool exhausted after " + std::to_string(queries) + " of " +
                               std::to_string(budget) + " queries";
    }

    result.total_queries = queries;
    result.total_labeled = labeled;
    result.curve.validate();
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    ExperimentResult result;
    result.trials.resize(cfg.seeds.size());

    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(cfg.seeds.size())));
    std::vector<std::future<TrialResult>> futures;
    futures.reserve(cfg.seeds.size());
    if (workers > 1) {
        for (std::uint64_t seed : cfg.seeds) {
            futures.push_back(std::async(std::launch::async,
                                         [&cfg, seed] { return run_trial(cfg, seed); }));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) {
            result.trials[i] = futures[i].get();
        }
    } else {
        for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
            result.trials[i] = run_trial(cfg, cfg.seeds[i]);
        }
    }

    std::vector<AccuracyCurve> curves;
    curves.reserve(result.trials.size());
    for (const auto& trial : result.trials) {
        curves.push_back(trial.curve);
    }
    const auto [lo, hi] = common_support(curves, cfg.curve_axis);
    std::vector<double> grid(static_cast<std::size_t>(cfg.grid_points));
    for (int i = 0; i < cfg.grid_points; ++i) {
        grid[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cfg.grid_points - 1);
    }
    result.aggregate = aggregate_curves(curves, grid, cfg.curve_axis);
    return result;
}

namespace {

std::string full_precision(double v) {
    std::ostringstream ss;
    ss.precision(std::numeric_limits<double>::max_digits10);
    ss << v;
    return ss.str();
}

} // namespace

void write_svg_plot(const std::string& path, const AggregateCurve& aggregate,
                    const std::string& x_label);  // svg_plot.cpp

void write_experiment_outputs(const ExperimentConfig& cfg,
                              const ExperimentResult& result,
                              const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    for (std::size_t i = 0; i < result.trials.size(); ++i) {
        std::ofstream out(fs::path(out_dir) / ("trial_" + std::to_string(i) + ".csv"),
                          std::ios::trunc);
        if (!out) {
            throw std::runtime_error(out_dir + ": cannot write trial csv");
        }
        out << "queries,total_labeled,accuracy\n";
        for (const auto& pt : result.trials[i].curve.points) {
            out << pt.queries << ',' << pt.total_labeled << ',' << full_precision(pt.accuracy)
                << '\n';
        }
    }

    {
        std::ofstream out(fs::path(out_dir) / "aggregate.csv", std::ios::trunc);
        if (!out) {
            throw std::runtime_error(out_dir + ": cannot write aggregate csv");
        }
        out << "grid,mean,std\n";
        for (std::size_t g = 0; g < result.aggregate.grid.size(); ++g) {
            out << full_precision(result.aggregate.grid[g]) << ','
                << full_precision(result.aggregate.mean[g]) << ','
                << full_precision(result.aggregate.stddev[g]) << '\n';
        }
    }

    write_svg_plot((fs::path(out_dir) / "plot.svg").string(), result.aggregate,
                   cfg.curve_axis == CurveAxis::queries ? "annotation queries"
                                                        : "images labeled");

    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < result.trials.size(); ++i) {
        if (!result.trials[i].curve.warning.empty()) {
            warnings.push_back("trial " + std::to_string(i) + ": " +
                               result.trials[i].curve.warning);
        }
    }
    if (!warnings.empty()) {
        std::ofstream out(fs::path(out_dir) / "warnings.txt", std::ios::trunc);
        for (const auto& w : warnings) {
            out << w << '\n';
        }
    }
}

} // namespace rsel
