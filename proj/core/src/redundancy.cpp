#include "rsel/redundancy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rsel/matrix_ops.hpp"

namespace rsel {

RedundancyGroups build_groups(const Eigen::MatrixXd& batch_features, double tau) {
    const Eigen::Index k = batch_features.cols();
    if (k < 1) {
        throw std::invalid_argument("build_groups: empty batch");
    }
    if (tau < 0.0 || tau > 1.0) {
        throw std::invalid_argument("build_groups: tau must lie in [0, 1]");
    }

    // similarity clamped to [0, 1]: negative cosine never counts as redundant
    Eigen::MatrixXd sim = cosine_similarity(batch_features).cwiseMax(0.0);

    Eigen::MatrixXi adjacency = Eigen::MatrixXi::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            if (i != j && sim(i, j) >= tau) {
                adjacency(i, j) = 1;
            }
        }
    }

    // hyperedges: closed neighborhoods, deduplicated in first-seen order
    std::vector<std::vector<Eigen::Index>> hyperedges;
    std::set<std::vector<Eigen::Index>> seen;
    for (Eigen::Index i = 0; i < k; ++i) {
        std::vector<Eigen::Index> edge{i};
        for (Eigen::Index j = 0; j < k; ++j) {
            if (adjacency(i, j) == 1) {
                edge.push_back(j);
            }
        }
        std::sort(edge.begin(), edge.end());
        if (seen.insert(edge).second) {
            hyperedges.push_back(std::move(edge));
        }
    }

    RedundancyGroups out;
    out.incidence = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(hyperedges.size()), k);
    for (std::size_t e = 0; e < hyperedges.size(); ++e) {
        for (Eigen::Index member : hyperedges[e]) {
            out.incidence(static_cast<Eigen::Index>(e), member) = 1;
        }
    }

    // groups: connected components of the union of hyperedges, which for
    // closed neighborhoods coincide with the components of the adjacency
    std::vector<Eigen::Index> component(static_cast<std::size_t>(k), -1);
    Eigen::Index n_components = 0;
    for (Eigen::Index start = 0; start < k; ++start) {
        if (component[static_cast<std::size_t>(start)] >= 0) {
            continue;
        }
        std::vector<Eigen::Index> stack{start};
        component[static_cast<std::size_t>(start)] = n_components;
        while (!stack.empty()) {
            const Eigen::Index node = stack.back();
            stack.pop_back();
            for (Eigen::Index j = 0; j < k; ++j) {
                if (adjacency(node, j) == 1 && component[static_cast<std::size_t>(j)] < 0) {
                    component[static_cast<std::size_t>(j)] = n_components;
                    stack.push_back(j);
                }
            }
        }
        ++n_components;
    }
    out.groups.assign(static_cast<std::size_t>(n_components), {});
    for (Eigen::Index i = 0; i < k; ++i) {
        out.groups[static_cast<std::size_t>(component[static_cast<std::size_t>(i)])].push_back(i);
    }

    // medoid: maximal summed within-group similarity, ties to smaller index
    out.query_index.reserve(out.groups.size());
    for (const auto& group : out.groups) {
        Eigen::Index best = group.front();
        double best_sum = -1.0;
        for (Eigen::Index candidate : group) {
            double sum = 0.0;
            for (Eigen::Index other : group) {
                if (other != candidate) {
                    sum += sim(candidate, other);
                }
            }
            if (sum > best_sum) {
                best_sum = sum;
                best = candidate;
            }
        }
        out.query_index.push_back(best);
    }
    return out;
}

RedundancyGroups build_groups(const FeatureMatrix& batch, double tau) {
    return build_groups(batch.data(), tau);
}

std::vector<LabelRecord> propagate_label(const RedundancyGroups& groups,
                                         Eigen::Index group_id,
                                         std::uint32_t label) {
    if (group_id < 0 || group_id >= groups.group_count()) {
        throw std::out_of_range("propagate_label: unknown group id " + std::to_string(group_id));
    }
    const auto& members = groups.groups[static_cast<std::size_t>(group_id)];
    const Eigen::Index query = groups.query_index[static_cast<std::size_t>(group_id)];
    std::vector<LabelRecord> records;
    records.reserve(members.size());
    records.push_back({query, label, Provenance::queried});
    for (Eigen::Index member : members) {
        if (member != query) {
            records.push_back({member, label, Provenance::propagated});
        }
    }
    return records;
}

} // namespace rsel
