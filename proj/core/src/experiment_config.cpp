#include "rsel/pipeline.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rsel {

void ExperimentConfig::validate() const {
    pool.validate();
    if (gamma <= 0.0) {
        throw std::invalid_argument("ExperimentConfig: gamma must be positive");
    }
    if (tau < 0.0 || tau > 1.0) {
        throw std::invalid_argument("ExperimentConfig: tau must lie in [0, 1]");
    }
    if (lambda1 < 0.0 || alpha < 0.0 || beta < 0.0) {
        throw std::invalid_argument("ExperimentConfig: lambda1, alpha, beta must be >= 0");
    }
    if (trials < 1 || static_cast<std::size_t>(trials) != seeds.size()) {
        throw std::invalid_argument("ExperimentConfig: trials must match the seed list length");
    }
    if (budget_count < 0 || budget_fraction < 0.0 || budget_fraction > 1.0) {
        throw std::invalid_argument("ExperimentConfig: bad annotation budget");
    }
    if (grid_points < 2) {
        throw std::invalid_argument("ExperimentConfig: grid_points must be >= 2");
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw std::runtime_error("config: bad value '" + value + "' for key '" + key + "'");
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        bad_value(key, value);
    }
}

long to_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        bad_value(key, value);
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    bad_value(key, value);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream ss(s);
    while (std::getline(ss, part, sep)) {
        parts.push_back(trim(part));
    }
    return parts;
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(path + ": cannot open config");
    }
    ExperimentConfig cfg;
    bool seeds_given = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "dataset") {
            cfg.dataset_path = value;
        } else if (key == "dataset_format") {
            if (value == "csv") cfg.dataset_format = DatasetFormat::csv;
            else if (value == "binary") cfg.dataset_format = DatasetFormat::binary;
            else bad_value(key, value);
        } else if (key == "synthetic_identities") {
            cfg.synthetic.identities = static_cast<int>(to_long(key, value));
        } else if (key == "synthetic_cameras") {
            cfg.synthetic.cameras = static_cast<int>(to_long(key, value));
        } else if (key == "synthetic_images_per") {
            cfg.synthetic.images_per_identity_per_camera = static_cast<int>(to_long(key, value));
        } else if (key == "synthetic_dim") {
            cfg.synthetic.dim = static_cast<int>(to_long(key, value));
        } else if (key == "synthetic_cluster_std") {
            cfg.synthetic.cluster_std = to_double(key, value);
        } else if (key == "synthetic_camera_shift") {
            cfg.synthetic.camera_shift_scale = to_double(key, value);
        } else if (key == "synthetic_seed") {
            cfg.synthetic_seed = static_cast<std::uint64_t>(to_long(key, value));
        } else if (key == "pool_mode") {
            if (value == "balanced") cfg.pool.mode = PoolMode::balanced;
            else if (value == "imbalanced") cfg.pool.mode = PoolMode::imbalanced;
            else bad_value(key, value);
        } else if (key == "pool_images_per") {
            cfg.pool.images_per_person_per_camera = static_cast<int>(to_long(key, value));
        } else if (key == "pool_tiers") {
            cfg.pool.tiers.clear();
            for (const auto& item : split(value, ',')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) bad_value(key, value);
                PoolTier tier;
                tier.fraction_of_persons = to_double(key, trim(item.substr(0, colon)));
                tier.images_per_camera = static_cast<int>(to_long(key, trim(item.substr(colon + 1))));
                cfg.pool.tiers.push_back(tier);
            }
        } else if (key == "test_images_per") {
            cfg.pool.test_images_per_person_per_camera = static_cast<int>(to_long(key, value));
        } else if (key == "method") {
            if (value == "proposed") cfg.method = SelectionMethod::proposed;
            else if (value == "smrs") cfg.method = SelectionMethod::smrs;
            else if (value == "random") cfg.method = SelectionMethod::random;
            else bad_value(key, value);
        } else if (key == "lambda1") {
            cfg.lambda1 = to_double(key, value);
        } else if (key == "gamma") {
            cfg.gamma = to_double(key, value);
        } else if (key == "tau") {
            cfg.tau = to_double(key, value);
        } else if (key == "alpha") {
            cfg.alpha = to_double(key, value);
        } else if (key == "beta") {
            cfg.beta = to_double(key, value);
        } else if (key == "knn_k") {
            cfg.knn_k = static_cast<int>(to_long(key, value));
        } else if (key == "batch_cap") {
            cfg.batch_cap = to_long(key, value);
        } else if (key == "budget_fraction") {
            cfg.budget_fraction = to_double(key, value);
        } else if (key == "budget_count") {
            cfg.budget_count = static_cast<int>(to_long(key, value));
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(to_long(key, value));
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const auto& item : split(value, ',')) {
                cfg.seeds.push_back(static_cast<std::uint64_t>(to_long(key, item)));
            }
            seeds_given = true;
        } else if (key == "embed_method") {
            if (value == "tsne") cfg.embedding.method = EmbedMethod::tsne;
            else if (value == "pca") cfg.embedding.method = EmbedMethod::pca;
            else bad_value(key, value);
        } else if (key == "embed_dim") {
            cfg.embedding.target_dim = static_cast<int>(to_long(key, value));
        } else if (key == "perplexity") {
            cfg.embedding.perplexity = to_double(key, value);
        } else if (key == "embed_iterations") {
            cfg.embedding.iterations = static_cast<int>(to_long(key, value));
        } else if (key == "embed_learning_rate") {
            cfg.embedding.learning_rate = to_double(key, value);
        } else if (key == "strict_dictionary") {
            cfg.strict_dictionary = to_bool(key, value);
        } else if (key == "select_max_iter") {
            cfg.selector.fista.max_iter = static_cast<int>(to_long(key, value));
        } else if (key == "select_rel_tol") {
            cfg.selector.fista.rel_tol = to_double(key, value);
        } else if (key == "src_max_iter") {
            cfg.src.fista.max_iter = static_cast<int>(to_long(key, value));
        } else if (key == "src_rel_tol") {
            cfg.src.fista.rel_tol = to_double(key, value);
        } else if (key == "grid_points") {
            cfg.grid_points = static_cast<int>(to_long(key, value));
        } else if (key == "curve_axis") {
            if (value == "queries") cfg.curve_axis = CurveAxis::queries;
            else if (value == "total_labeled") cfg.curve_axis = CurveAxis::total_labeled;
            else bad_value(key, value);
        } else {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
    }

    if (!seeds_given && cfg.trials != static_cast<int>(cfg.seeds.size())) {
        // default seeds 1..trials when only the count was given
        cfg.seeds.resize(static_cast<std::size_t>(cfg.trials));
        for (int i = 0; i < cfg.trials; ++i) {
            cfg.seeds[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i + 1);
        }
    }
    cfg.validate();
    return cfg;
}

} // namespace rsel
