#include <benchmark/benchmark.h>

#include <random>

#include "rsel/solver.hpp"

namespace {

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

void BM_prox_l21(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const Eigen::MatrixXd x = random_matrix(n, n, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rsel::prox_l21(x, 0.3));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_prox_l21)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_prox_l1(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const Eigen::MatrixXd x = random_matrix(n, n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rsel::prox_l1(x, 0.3));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_prox_l1)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_fista_identity_lasso(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const Eigen::MatrixXd a = random_matrix(n, n, 3);
    const rsel::SmoothPart smooth{
        [&a](const Eigen::MatrixXd& x) { return Eigen::MatrixXd(x - a); },
        1.0,
        [&a](const Eigen::MatrixXd& x) { return 0.5 * (x - a).squaredNorm(); },
    };
    const rsel::ProxPart shrink{
        [](const Eigen::MatrixXd& x, double step) { return rsel::prox_l1(x, 0.1 * step); },
        [](const Eigen::MatrixXd& x) { return 0.1 * x.cwiseAbs().sum(); },
    };
    rsel::FistaOptions options;
    options.max_iter = 50;
    options.rel_tol = 1e-12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            rsel::fista(smooth, shrink, Eigen::MatrixXd::Zero(n, n), options));
    }
}
BENCHMARK(BM_fista_identity_lasso)->Arg(64)->Arg(128);

} // namespace

BENCHMARK_MAIN();
