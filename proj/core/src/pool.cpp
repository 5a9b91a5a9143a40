#include "rsel/pool.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rsel {

void PoolSpec::validate() const {
    if (test_images_per_person_per_camera < 1) {
        throw std::invalid_argument("PoolSpec: test images per person per camera must be >= 1");
    }
    if (mode == PoolMode::balanced) {
        if (images_per_person_per_camera < 1) {
            throw std::invalid_argument("PoolSpec: images per person per camera must be >= 1");
        }
        return;
    }
    if (tiers.empty()) {
        throw std::invalid_argument("PoolSpec: imbalanced mode needs at least one tier");
    }
    double total = 0.0;
    for (const auto& tier : tiers) {
        if (tier.images_per_camera < 1) {
            throw std::invalid_argument("PoolSpec: every tier count must be >= 1");
        }
        if (tier.fraction_of_persons <= 0.0) {
            throw std::invalid_argument("PoolSpec: tier fractions must be positive");
        }
        total += tier.fraction_of_persons;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("PoolSpec: tier fractions must sum to 1");
    }
}

namespace {

// largest-remainder rounding of fractions to integer person counts
std::vector<int> tier_person_counts(const std::vector<PoolTier>& tiers, int persons) {
    std::vector<int> counts(tiers.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t t = 0; t < tiers.size(); ++t) {
        const double exact = tiers[t].fraction_of_persons * persons;
        counts[t] = static_cast<int>(std::floor(exact));
        assigned += counts[t];
        remainders.emplace_back(exact - std::floor(exact), t);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    const int leftover = persons - assigned;
    for (int i = 0; i < leftover; ++i) {
        counts[remainders[static_cast<std::size_t>(i)].second] += 1;
    }
    return counts;
}

} // namespace

std::pair<FeatureMatrix, FeatureMatrix>
build_pools(const FeatureMatrix& dataset, const PoolSpec& spec, std::uint64_t seed) {
    spec.validate();

    // columns per (person, camera), persons and cameras in sorted order
    std::map<std::uint32_t, std::map<std::uint32_t, std::vector<Eigen::Index>>> cells;
    for (Eigen::Index c = 0; c < dataset.count(); ++c) {
        const auto person = dataset.labels_[static_cast<std::size_t>(c)];
        const auto camera = dataset.cameras_[static_cast<std::size_t>(c)];
        cells[person][camera].push_back(c);
    }
    const int persons = static_cast<int>(cells.size());
    if (persons == 0) {
        throw std::invalid_argument("build_pools: empty dataset");
    }

    std::vector<std::uint32_t> person_ids;
    person_ids.reserve(cells.size());
    for (const auto& [person, _] : cells) {
        person_ids.push_back(person);
    }

    std::mt19937_64 rng(seed);

    // per-person pool count per camera
    std::vector<int> pool_per_camera(person_ids.size(), spec.images_per_person_per_camera);
    if (spec.mode == PoolMode::imbalanced) {
        std::vector<std::uint32_t> shuffled = person_ids;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto counts = tier_person_counts(spec.tiers, persons);
        std::map<std::uint32_t, int> assignment;
        std::size_t pos = 0;
        for (std::size_t t = 0; t < spec.tiers.size(); ++t) {
            for (int i = 0; i < counts[t]; ++i) {
                assignment[shuffled[pos++]] = spec.tiers[t].images_per_camera;
            }
        }
        for (std::size_t p = 0; p < person_ids.size(); ++p) {
            pool_per_camera[p] = assignment.at(person_ids[p]);
        }
    }

    // verify every cell can satisfy pool + test draws before sampling
    std::ostringstream deficits;
    bool short_somewhere = false;
    for (std::size_t p = 0; p < person_ids.size(); ++p) {
        const int need = pool_per_camera[p] + spec.test_images_per_person_per_camera;
        for (const auto& [camera, columns] : cells.at(person_ids[p])) {
            if (static_cast<int>(columns.size()) < need) {
                if (short_somewhere) {
                    deficits << "; ";
                }
                deficits << "person " << person_ids[p] << " camera " << camera << ": have "
                         << columns.size() << ", need " << need;
                short_somewhere = true;
            }
        }
    }
    if (short_somewhere) {
        throw std::invalid_argument("build_pools: insufficient images: " + deficits.str());
    }

    std::vector<Eigen::Index> pool_columns, test_columns;
    for (std::size_t p = 0; p < person_ids.size(); ++p) {
        for (const auto& [camera, columns] : cells.at(person_ids[p])) {
            std::vector<Eigen::Index> order = columns;
            std::shuffle(order.begin(), order.end(), rng);
            const int take_pool = pool_per_camera[p];
            const int take_test = spec.test_images_per_person_per_camera;
            pool_columns.insert(pool_columns.end(), order.begin(), order.begin() + take_pool);
            test_columns.insert(test_columns.end(), order.begin() + take_pool,
                                order.begin() + take_pool + take_test);
        }
    }

    return {dataset.subset(pool_columns), dataset.subset(test_columns)};
}

} // namespace rsel
