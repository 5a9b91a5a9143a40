#pragma once

#include <cstdint>
#include <vector>

namespace rsel {

struct BenchRow {
    int n = 0;
    double mean_seconds = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    double loglog_slope = 0.0;  // least-squares fit of log(time) vs log(n)
};

/// Times gradient evaluations of the selection objective at each pool
/// size (fixed feature dim and dictionary size), instances seeded so the
/// problem shapes are identical across runs. Requires >= 4 ascending
/// sizes; reports the fitted log-log slope.
BenchReport bench_complexity(const std::vector<int>& sizes,
                             int feature_dim = 10,
                             int dictionary_size = 20,
                             int repetitions = 3,
                             std::uint64_t seed = 1);

} // namespace rsel
