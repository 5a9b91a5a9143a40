#include "rsel/bench.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rsel/selector.hpp"

namespace rsel {

BenchReport bench_complexity(const std::vector<int>& sizes,
                             int feature_dim,
                             int dictionary_size,
                             int repetitions,
                             std::uint64_t seed) {
    if (sizes.size() < 4) {
        throw std::invalid_argument("bench_complexity: need at least 4 sizes");
    }
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] <= sizes[i - 1]) {
            throw std::invalid_argument("bench_complexity: sizes must be strictly ascending");
        }
    }
    if (sizes.front() < 2 || feature_dim < 1 || dictionary_size < 1 || repetitions < 1) {
        throw std::invalid_argument("bench_complexity: bad parameters");
    }

    using clock = std::chrono::steady_clock;

    BenchReport report;
    report.rows.reserve(sizes.size());
    double accumulate = 0.0;  // keeps results observable, defeats dead-code elimination

    for (int n : sizes) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXd z(feature_dim, n);
        for (Eigen::Index c = 0; c < z.cols(); ++c) {
            for (Eigen::Index r = 0; r < z.rows(); ++r) {
                z(r, c) = gauss(rng);
            }
        }
        Eigen::MatrixXd z0(feature_dim, dictionary_size);
        for (Eigen::Index c = 0; c < z0.cols(); ++c) {
            for (Eigen::Index r = 0; r < z0.rows(); ++r) {
                z0(r, c) = gauss(rng);
            }
        }
        const SelectionProblem problem(std::move(z), std::move(z0), 1.0, 0.0);
        Eigen::MatrixXd x(n, n);
        for (Eigen::Index c = 0; c < n; ++c) {
            for (Eigen::Index r = 0; r < n; ++r) {
                x(r, c) = gauss(rng);
            }
        }

        accumulate += grad_g(problem, x).sum();  // warmup

        const auto start = clock::now();
        for (int rep = 0; rep < repetitions; ++rep) {
            accumulate += grad_g(problem, x).sum();
        }
        const auto stop = clock::now();
        const double seconds =
            std::chrono::duration<double>(stop - start).count() / repetitions;
        report.rows.push_back({n, seconds});
    }

    // least-squares slope of log(time) against log(n)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double count = static_cast<double>(report.rows.size());
    for (const auto& row : report.rows) {
        const double lx = std::log(static_cast<double>(row.n));
        const double ly = std::log(std::max(row.mean_seconds, 1e-12));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    report.loglog_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);

    if (!std::isfinite(accumulate)) {
        throw std::runtime_error("bench_complexity: non-finite gradient");
    }
    return report;
}

} // namespace rsel
