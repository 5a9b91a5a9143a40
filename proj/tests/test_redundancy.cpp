#include <doctest.h>

#include <random>
#include <set>

#include "rsel/redundancy.hpp"

using namespace rsel;

namespace {

Eigen::MatrixXd random_unit_columns(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            m(r, c) = gauss(rng);
        }
        m.col(c).normalize();
    }
    return m;
}

} // namespace

TEST_CASE("a prohibitive threshold yields singletons and identity incidence") {
    const Eigen::MatrixXd batch = random_unit_columns(16, 5, 1);
    const RedundancyGroups groups = build_groups(batch, 1.0);
    CHECK(groups.group_count() == 5);
    for (Eigen::Index g = 0; g < 5; ++g) {
        CHECK(groups.groups[static_cast<std::size_t>(g)].size() == 1);
        CHECK(groups.query_index[static_cast<std::size_t>(g)] ==
              groups.groups[static_cast<std::size_t>(g)][0]);
    }
    CHECK(groups.incidence == Eigen::MatrixXi::Identity(5, 5));
}

TEST_CASE("threshold zero collapses the batch into one group") {
    const Eigen::MatrixXd batch = random_unit_columns(8, 6, 2);
    const RedundancyGroups groups = build_groups(batch, 0.0);
    CHECK(groups.group_count() == 1);
    CHECK(groups.groups[0].size() == 6);
}

TEST_CASE("three duplicates plus an orthogonal column split into two groups") {
    Eigen::MatrixXd batch(4, 4);
    batch.col(0) << 1, 1, 0, 0;
    batch.col(1) << 1, 1, 0, 0;
    batch.col(2) << 1, 1, 0, 0;
    batch.col(3) << 0, 0, 1, -1;
    const RedundancyGroups groups = build_groups(batch, 0.8);
    REQUIRE(groups.group_count() == 2);
    CHECK(groups.groups[0] == std::vector<Eigen::Index>{0, 1, 2});
    CHECK(groups.groups[1] == std::vector<Eigen::Index>{3});
    CHECK(groups.query_index[0] == 0);  // duplicates tie, smaller index wins
    CHECK(groups.query_index[1] == 3);
}

TEST_CASE("groups partition the batch") {
    const Eigen::MatrixXd batch = random_unit_columns(3, 12, 3);
    const RedundancyGroups groups = build_groups(batch, 0.7);
    std::set<Eigen::Index> seen;
    for (std::size_t g = 0; g < groups.groups.size(); ++g) {
        CHECK_FALSE(groups.groups[g].empty());
        for (Eigen::Index member : groups.groups[g]) {
            CHECK(seen.insert(member).second);  // disjoint
        }
        const Eigen::Index query = groups.query_index[g];
        CHECK(std::find(groups.groups[g].begin(), groups.groups[g].end(), query) !=
              groups.groups[g].end());
    }
    CHECK(seen.size() == 12);  // complete
    // every hyperedge is nonempty
    for (Eigen::Index e = 0; e < groups.incidence.rows(); ++e) {
        CHECK(groups.incidence.row(e).sum() >= 1);
    }
}

TEST_CASE("grouping is deterministic") {
    const Eigen::MatrixXd batch = random_unit_columns(6, 10, 4);
    const RedundancyGroups a = build_groups(batch, 0.75);
    const RedundancyGroups b = build_groups(batch, 0.75);
    CHECK(a.groups == b.groups);
    CHECK(a.query_index == b.query_index);
    CHECK(a.incidence == b.incidence);
}

TEST_CASE("raising tau never lowers the group count") {
    for (int rep = 0; rep < 5; ++rep) {
        const Eigen::MatrixXd batch = random_unit_columns(4, 9, 10 + rep);
        Eigen::Index previous = 0;
        for (double tau : {0.0, 0.2, 0.4, 0.6, 0.8, 0.95, 1.0}) {
            const Eigen::Index count = build_groups(batch, tau).group_count();
            CHECK(count >= previous);
            previous = count;
        }
    }
}

TEST_CASE("high threshold never mixes identities on near-duplicate clusters") {
    // same-identity columns at similarity >= 0.95, cross-identity <= 0.6
    std::mt19937_64 rng(20);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int identities = 4, copies = 3, dim = 40;
    Eigen::MatrixXd batch(dim, identities * copies);
    std::vector<int> identity_of(static_cast<std::size_t>(identities * copies));
    Eigen::MatrixXd bases(dim, identities);
    for (int i = 0; i < identities; ++i) {
        for (int r = 0; r < dim; ++r) {
            bases(r, i) = gauss(rng);
        }
        bases.col(i).normalize();
    }
    Eigen::Index col = 0;
    for (int i = 0; i < identities; ++i) {
        for (int c = 0; c < copies; ++c) {
            Eigen::VectorXd noise(dim);
            for (int r = 0; r < dim; ++r) {
                noise(r) = 0.02 * gauss(rng);
            }
            batch.col(col) = (bases.col(i) + noise).normalized();
            identity_of[static_cast<std::size_t>(col)] = i;
            ++col;
        }
    }
    // verify the premise, then the grouping
    const Eigen::MatrixXd sim = batch.transpose() * batch;
    for (Eigen::Index a = 0; a < batch.cols(); ++a) {
        for (Eigen::Index b = a + 1; b < batch.cols(); ++b) {
            if (identity_of[static_cast<std::size_t>(a)] ==
                identity_of[static_cast<std::size_t>(b)]) {
                REQUIRE(sim(a, b) >= 0.95);
            } else {
                REQUIRE(sim(a, b) <= 0.6);
            }
        }
    }
    const RedundancyGroups groups = build_groups(batch, 0.8);
    for (const auto& group : groups.groups) {
        for (Eigen::Index member : group) {
            CHECK(identity_of[static_cast<std::size_t>(member)] ==
                  identity_of[static_cast<std::size_t>(group[0])]);
        }
    }
}

TEST_CASE("propagate_label emits one queried record plus propagations") {
    Eigen::MatrixXd batch(4, 4);
    batch.col(0) << 1, 1, 0, 0;
    batch.col(1) << 1, 1, 0, 0;
    batch.col(2) << 1, 1, 0, 0;
    batch.col(3) << 0, 0, 1, -1;
    const RedundancyGroups groups = build_groups(batch, 0.8);

    const auto records = propagate_label(groups, 0, 7);
    REQUIRE(records.size() == 3);
    CHECK(records[0].index == groups.query_index[0]);
    CHECK(records[0].provenance == Provenance::queried);
    for (std::size_t i = 1; i < records.size(); ++i) {
        CHECK(records[i].provenance == Provenance::propagated);
        CHECK(records[i].label == 7);
    }

    const auto singleton = propagate_label(groups, 1, 3);
    REQUIRE(singleton.size() == 1);
    CHECK(singleton[0].index == 3);
    CHECK(singleton[0].provenance == Provenance::queried);

    CHECK_THROWS(propagate_label(groups, 2, 0));
    CHECK_THROWS(propagate_label(groups, -1, 0));
}

TEST_CASE("annotation cost is one query per group") {
    // 10 members in 4 similarity clusters consume exactly 4 queries
    std::mt19937_64 rng(30);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd bases = random_unit_columns(30, 4, 31);
    const std::vector<int> sizes = {4, 3, 2, 1};
    Eigen::MatrixXd batch(30, 10);
    Eigen::Index col = 0;
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        for (int c = 0; c < sizes[g]; ++c) {
            Eigen::VectorXd noise(30);
            for (int r = 0; r < 30; ++r) {
                noise(r) = 0.02 * gauss(rng);
            }
            batch.col(col++) = (bases.col(static_cast<Eigen::Index>(g)) + noise).normalized();
        }
    }
    const RedundancyGroups groups = build_groups(batch, 0.8);
    CHECK(groups.group_count() == 4);
    int queries = 0;
    int labeled = 0;
    for (Eigen::Index g = 0; g < groups.group_count(); ++g) {
        const auto records = propagate_label(groups, g, static_cast<std::uint32_t>(g));
        for (const auto& record : records) {
            labeled += 1;
            queries += record.provenance == Provenance::queried ? 1 : 0;
        }
    }
    CHECK(queries == 4);
    CHECK(labeled == 10);
}
