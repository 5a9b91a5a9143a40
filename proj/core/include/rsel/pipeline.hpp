#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsel/classifier.hpp"
#include "rsel/curves.hpp"
#include "rsel/dataset_io.hpp"
#include "rsel/embed.hpp"
#include "rsel/feature_matrix.hpp"
#include "rsel/pool.hpp"
#include "rsel/selector.hpp"
#include "rsel/synthetic.hpp"

namespace rsel {

enum class SelectionMethod { proposed, smrs, random };

struct ExperimentConfig {
    // data source: a dataset file, or the synthetic spec when path is empty
    std::string dataset_path;
    DatasetFormat dataset_format = DatasetFormat::binary;
    SyntheticSpec synthetic;
    std::uint64_t synthetic_seed = 42;  // dataset fixed across trials

    PoolSpec pool;
    EmbeddingConfig embedding;

    SelectionMethod method = SelectionMethod::proposed;
    double lambda1 = 2.0;
    double gamma = 2.5;       // lambda2 = lambda0 / gamma
    double tau = 0.8;
    double alpha = 0.2;
    double beta = 0.3;
    int knn_k = 5;

    Eigen::Index batch_cap = 0;   // 0 -> ceil(5% of the initial pool)
    double budget_fraction = 0.7; // of the initial pool, in queries
    int budget_count = 0;         // overrides the fraction when > 0

    int trials = 5;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

    // only queried members enter the dictionary; propagated group members
    // are discarded from the pool (ablation mode)
    bool strict_dictionary = false;

    SelectorConfig selector;
    SrcConfig src;

    int grid_points = 25;
    CurveAxis curve_axis = CurveAxis::queries;

    void validate() const;
};

struct IterationRecord {
    std::vector<Eigen::Index> selected;  // batch handed to grouping, pool-local
    std::vector<Eigen::Index> queried;   // annotated columns, initial-pool indices
    int queries = 0;
    int labeled = 0;
};

struct TrialResult {
    AccuracyCurve curve;
    std::vector<IterationRecord> iterations;
    int total_queries = 0;
    int total_labeled = 0;
    Eigen::Index initial_pool_size = 0;
};

/// One pass of the active loop: build pools, embed the pool once, then
/// iterate select -> group -> annotate (oracle) -> grow dictionaries ->
/// evaluate, until the query budget is spent or the pool runs dry.
TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t seed);

struct ExperimentResult {
    std::vector<TrialResult> trials;
    AggregateCurve aggregate;
};

/// Runs all configured trials (in parallel, each determined by its seed)
/// and aggregates the curves on a common grid.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes trial_<i>.csv files, aggregate.csv and plot.svg into out_dir.
void write_experiment_outputs(const ExperimentConfig& cfg,
                              const ExperimentResult& result,
                              const std::string& out_dir);

/// Parses the plain-text `key = value` experiment description.
ExperimentConfig parse_experiment_config(const std::string& path);

} // namespace rsel
