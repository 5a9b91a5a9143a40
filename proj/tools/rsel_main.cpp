#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rsel/bench.hpp"
#include "rsel/classifier.hpp"
#include "rsel/dataset_io.hpp"
#include "rsel/features.hpp"
#include "rsel/matrix_ops.hpp"
#include "rsel/pipeline.hpp"
#include "rsel/selector.hpp"
#include "rsel/synthetic.hpp"

namespace {

std::string full_precision(double v) {
    std::ostringstream ss;
    ss.precision(std::numeric_limits<double>::max_digits10);
    ss << v;
    return ss.str();
}

rsel::DatasetFormat format_for(const std::string& path, const std::string& forced) {
    if (forced == "csv") return rsel::DatasetFormat::csv;
    if (forced == "binary") return rsel::DatasetFormat::binary;
    return rsel::format_from_extension(path);
}

struct GenSynthArgs {
    rsel::SyntheticSpec spec;
    std::uint64_t seed = 42;
    std::string out;
    std::string format;
};

int cmd_gen_synth(const GenSynthArgs& args) {
    const rsel::FeatureMatrix m = rsel::gen_synthetic(args.spec, args.seed);
    rsel::save_dataset(m, args.out, format_for(args.out, args.format));
    std::cout << "wrote " << m.count() << " columns of dimension " << m.dim() << " to "
              << args.out << "\n";
    return 0;
}

struct SelectArgs {
    std::string data;
    std::string dict;
    std::string format;
    std::string out;
    double lambda1 = 2.0;
    double gamma = 2.5;
    double lambda2 = -1.0;  // overrides gamma when >= 0
    std::int64_t k = 0;     // 0 -> ceil(5% of n)
    int max_iter = 1000;
    double rel_tol = 1e-6;
};

int cmd_select(const SelectArgs& args) {
    const rsel::FeatureMatrix data = rsel::load_dataset(args.data, format_for(args.data, args.format));

    Eigen::VectorXd mean;
    const Eigen::MatrixXd z = rsel::center_columns(data.data(), mean);
    Eigen::MatrixXd z0;
    if (!args.dict.empty()) {
        const rsel::FeatureMatrix dict =
            rsel::load_dataset(args.dict, format_for(args.dict, args.format));
        z0 = dict.data().colwise() - mean;
    }

    rsel::SelectionProblem problem(z, std::move(z0), args.lambda1, 0.0);
    problem.lambda2 = args.lambda2 >= 0.0 ? args.lambda2 : rsel::lambda0(problem) / args.gamma;

    const Eigen::Index k = args.k > 0
                               ? static_cast<Eigen::Index>(args.k)
                               : static_cast<Eigen::Index>(
                                     std::ceil(0.05 * static_cast<double>(data.count())));
    rsel::SelectorConfig config;
    config.fista.max_iter = args.max_iter;
    config.fista.rel_tol = args.rel_tol;
    const rsel::SelectionResult result =
        rsel::select_representatives(problem, std::min<Eigen::Index>(k, data.count()), config);

    std::ofstream out(args.out, std::ios::trunc);
    if (!out) {
        throw std::runtime_error(args.out + ": cannot open for writing");
    }
    out << "index,id,row_norm\n";
    for (Eigen::Index i : result.indices) {
        out << i << ',' << data.ids()[static_cast<std::size_t>(i)] << ','
            << full_precision(result.solution.row_norms(i)) << '\n';
    }
    std::cout << "selected " << result.indices.size() << " of " << data.count()
              << " columns (lambda2 = " << problem.lambda2 << ", "
              << result.report.iterations << " solver iterations)\n";
    return 0;
}

struct ClassifyArgs {
    std::string dict;
    std::string test;
    std::string format;
    std::string out;
    double alpha = 0.2;
    double beta = 0.3;
    int knn = 5;
    int max_iter = 1000;
    double rel_tol = 1e-6;
    bool no_normalize = false;
};

int cmd_classify(const ClassifyArgs& args) {
    const rsel::FeatureMatrix dict_data =
        rsel::load_dataset(args.dict, format_for(args.dict, args.format));
    const rsel::FeatureMatrix test =
        rsel::load_dataset(args.test, format_for(args.test, args.format));

    // dictionary labels come from the dataset file itself: these are the
    // annotated columns
    rsel::LabeledDictionary dict;
    {
        const rsel::Oracle oracle(dict_data);
        std::vector<std::uint32_t> labels;
        std::vector<rsel::Provenance> prov;
        for (Eigen::Index c = 0; c < dict_data.count(); ++c) {
            labels.push_back(oracle.label_of(c));
            prov.push_back(rsel::Provenance::queried);
        }
        dict.append(dict_data.data(), labels, prov, !args.no_normalize);
    }

    const rsel::LaplacianGraph graph = rsel::build_laplacian(test, args.knn);
    rsel::SrcConfig config;
    config.fista.max_iter = args.max_iter;
    config.fista.rel_tol = args.rel_tol;
    const rsel::SparseCodeMatrix codes =
        rsel::src_solve(dict, test, args.alpha, args.beta, graph, config);
    const rsel::ClassProbabilities probs = rsel::class_probabilities(codes, dict.labels());
    const auto preds = probs.predictions();

    std::ofstream out(args.out, std::ios::trunc);
    if (!out) {
        throw std::runtime_error(args.out + ": cannot open for writing");
    }
    out << "id,predicted";
    for (std::uint32_t cls : probs.classes) {
        out << ",p" << cls;
    }
    out << '\n';
    for (Eigen::Index t = 0; t < test.count(); ++t) {
        out << test.ids()[static_cast<std::size_t>(t)] << ',' << preds[static_cast<std::size_t>(t)];
        for (Eigen::Index r = 0; r < probs.p.rows(); ++r) {
            out << ',' << full_precision(probs.p(r, t));
        }
        out << '\n';
    }
    std::cout << "classified " << test.count() << " test columns over "
              << probs.classes.size() << " classes\n";
    return 0;
}

struct ExtractArgs {
    std::string in_dir;
    std::string manifest;
    std::string out;
    std::string format;
};

int cmd_extract_features(const ExtractArgs& args) {
    std::ifstream manifest(args.manifest);
    if (!manifest) {
        throw std::runtime_error(args.manifest + ": cannot open manifest");
    }
    std::string line;
    if (!std::getline(manifest, line)) {
        throw std::runtime_error(args.manifest + ": missing header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "id,camera,label,path") {
        throw std::runtime_error(args.manifest + ": line 1: expected header id,camera,label,path");
    }

    std::vector<Eigen::VectorXd> features;
    std::vector<std::string> ids;
    std::vector<std::uint32_t> cameras, labels;
    std::size_t line_no = 1;
    while (std::getline(manifest, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 4) {
            throw std::runtime_error(args.manifest + ": line " + std::to_string(line_no) +
                                     ": expected 4 fields, got " + std::to_string(fields.size()));
        }
        rsel::RawImage img =
            rsel::load_ppm((std::filesystem::path(args.in_dir) / fields[3]).string());
        img.id = fields[0];
        img.camera_id = static_cast<std::uint32_t>(std::stoul(fields[1]));
        img.label = static_cast<std::uint32_t>(std::stoul(fields[2]));
        features.push_back(rsel::extract_hsv_blocks(img));
        ids.push_back(img.id);
        cameras.push_back(img.camera_id);
        labels.push_back(img.label);
    }
    if (features.empty()) {
        throw std::runtime_error(args.manifest + ": no images listed");
    }
    Eigen::MatrixXd data(features.front().size(), static_cast<Eigen::Index>(features.size()));
    for (std::size_t i = 0; i < features.size(); ++i) {
        data.col(static_cast<Eigen::Index>(i)) = features[i];
    }
    const rsel::FeatureMatrix m(std::move(data), std::move(ids), std::move(cameras),
                                std::move(labels));
    rsel::save_dataset(m, args.out, format_for(args.out, args.format));
    std::cout << "extracted " << m.count() << " feature columns of dimension " << m.dim()
              << " to " << args.out << "\n";
    return 0;
}

struct RunArgs {
    std::string config;
    std::string out_dir;
};

int cmd_run_experiment(const RunArgs& args) {
    const rsel::ExperimentConfig cfg = rsel::parse_experiment_config(args.config);
    const rsel::ExperimentResult result = rsel::run_experiment(cfg);
    rsel::write_experiment_outputs(cfg, result, args.out_dir);
    for (std::size_t i = 0; i < result.trials.size(); ++i) {
        const auto& trial = result.trials[i];
        std::cout << "trial " << i << ": " << trial.total_queries << " queries, "
                  << trial.total_labeled << " labeled, final accuracy "
                  << trial.curve.points.back().accuracy << "\n";
        if (!trial.curve.warning.empty()) {
            std::cerr << "warning: trial " << i << ": " << trial.curve.warning << "\n";
        }
    }
    std::cout << "outputs written to " << args.out_dir << "\n";
    return 0;
}

struct BenchArgs {
    std::vector<int> sizes{100, 200, 400, 800};
    int dim = 10;
    int dict = 20;
    int reps = 3;
    std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& args) {
    const rsel::BenchReport report =
        rsel::bench_complexity(args.sizes, args.dim, args.dict, args.reps, args.seed);
    std::cout << "n,mean_seconds\n";
    for (const auto& row : report.rows) {
        std::cout << row.n << ',' << full_precision(row.mean_seconds) << '\n';
    }
    std::cout << "loglog_slope," << full_precision(report.loglog_slope) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse non-redundant representative selection harness"};
    app.require_subcommand(1);

    GenSynthArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-synth", "generate a synthetic multi-camera dataset");
    gen_cmd->add_option("--identities", gen.spec.identities, "number of identities");
    gen_cmd->add_option("--cameras", gen.spec.cameras, "number of cameras");
    gen_cmd->add_option("--images-per", gen.spec.images_per_identity_per_camera,
                        "images per identity per camera");
    gen_cmd->add_option("--dim", gen.spec.dim, "feature dimension");
    gen_cmd->add_option("--cluster-std", gen.spec.cluster_std, "within-cluster std");
    gen_cmd->add_option("--camera-shift", gen.spec.camera_shift_scale, "camera shift scale");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--out", gen.out, "output dataset path")->required();
    gen_cmd->add_option("--format", gen.format, "csv or binary (default: by extension)");

    SelectArgs sel;
    auto* sel_cmd = app.add_subcommand("select", "solve the representative selection program");
    sel_cmd->add_option("--data", sel.data, "unlabeled pool dataset")->required();
    sel_cmd->add_option("--dict", sel.dict, "previously selected columns (optional)");
    sel_cmd->add_option("--format", sel.format, "csv or binary (default: by extension)");
    sel_cmd->add_option("--out", sel.out, "output csv of selected indices")->required();
    sel_cmd->add_option("--lambda1", sel.lambda1, "decorrelation weight");
    sel_cmd->add_option("--gamma", sel.gamma, "lambda2 = lambda0 / gamma");
    sel_cmd->add_option("--lambda2", sel.lambda2, "explicit sparsity weight (overrides gamma)");
    sel_cmd->add_option("--k", sel.k, "batch cap (default: 5% of pool)");
    sel_cmd->add_option("--max-iter", sel.max_iter, "solver iteration cap");
    sel_cmd->add_option("--rel-tol", sel.rel_tol, "solver relative tolerance");

    ClassifyArgs cls;
    auto* cls_cmd = app.add_subcommand("classify", "sparse-reconstruction classification");
    cls_cmd->add_option("--dict", cls.dict, "labeled dictionary dataset")->required();
    cls_cmd->add_option("--test", cls.test, "test dataset")->required();
    cls_cmd->add_option("--format", cls.format, "csv or binary (default: by extension)");
    cls_cmd->add_option("--out", cls.out, "output probability csv")->required();
    cls_cmd->add_option("--alpha", cls.alpha, "sparsity weight");
    cls_cmd->add_option("--beta", cls.beta, "structure preservation weight");
    cls_cmd->add_option("--knn", cls.knn, "k-NN graph degree");
    cls_cmd->add_option("--max-iter", cls.max_iter, "solver iteration cap");
    cls_cmd->add_option("--rel-tol", cls.rel_tol, "solver relative tolerance");
    cls_cmd->add_flag("--no-normalize", cls.no_normalize, "skip dictionary column normalization");

    ExtractArgs ext;
    auto* ext_cmd = app.add_subcommand("extract-features", "block-mean HSV features from PPMs");
    ext_cmd->add_option("--in", ext.in_dir, "image directory")->required();
    ext_cmd->add_option("--manifest", ext.manifest, "csv of id,camera,label,path")->required();
    ext_cmd->add_option("--out", ext.out, "output dataset path")->required();
    ext_cmd->add_option("--format", ext.format, "csv or binary (default: by extension)");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run-experiment", "iterative active labeling experiment");
    run_cmd->add_option("--config", run.config, "key = value experiment description")->required();
    run_cmd->add_option("--out", run.out_dir, "output directory")->required();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "gradient cost scaling measurement");
    bench_cmd->add_option("--sizes", bench.sizes, "pool sizes, ascending")->delimiter(',');
    bench_cmd->add_option("--dim", bench.dim, "feature dimension");
    bench_cmd->add_option("--dict", bench.dict, "dictionary size");
    bench_cmd->add_option("--reps", bench.reps, "repetitions per size");
    bench_cmd->add_option("--seed", bench.seed, "instance seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) return cmd_gen_synth(gen);
        if (sel_cmd->parsed()) return cmd_select(sel);
        if (cls_cmd->parsed()) return cmd_classify(cls);
        if (ext_cmd->parsed()) return cmd_extract_features(ext);
        if (run_cmd->parsed()) return cmd_run_experiment(run);
        if (bench_cmd->parsed()) return cmd_bench(bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
