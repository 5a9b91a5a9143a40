#include <benchmark/benchmark.h>

#include <random>

#include "rsel/classifier.hpp"
#include "rsel/selector.hpp"

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

// the dominant per-iteration cost of the selection solve
void BM_selection_gradient(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const rsel::SelectionProblem p(random_matrix(10, n, 4), random_matrix(10, 20, 5), 1.0, 0.0);
    const Eigen::MatrixXd x = random_matrix(n, n, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rsel::grad_g(p, x));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_selection_gradient)->RangeMultiplier(2)->Range(100, 800)->Complexity();

void BM_spectral_lipschitz(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const rsel::SelectionProblem p(random_matrix(10, n, 7), random_matrix(10, 20, 8), 1.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rsel::lipschitz_g(p, rsel::LipschitzMode::spectral));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_spectral_lipschitz)->RangeMultiplier(2)->Range(100, 800)->Complexity();

void BM_laplacian_build(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const Eigen::MatrixXd y = random_matrix(10, n, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rsel::build_laplacian(y, 5));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_laplacian_build)->RangeMultiplier(2)->Range(100, 800)->Complexity();

// gradient of the sparse-coding smooth part at growing dictionary size
void BM_src_gradient(benchmark::State& state) {
    const auto n0 = static_cast<Eigen::Index>(state.range(0));
    const Eigen::MatrixXd d = random_matrix(40, n0, 10);
    const Eigen::MatrixXd y = random_matrix(40, 200, 11);
    const Eigen::MatrixXd l = [&] {
        return rsel::build_laplacian(y, 5).l;
    }();
    const Eigen::MatrixXd dict_gram = d.transpose() * d;
    const Eigen::MatrixXd dty = d.transpose() * y;
    const Eigen::MatrixXd c = random_matrix(n0, 200, 12);
    for (auto _ : state) {
        Eigen::MatrixXd grad = -dty;
        grad.noalias() += dict_gram * c;
        grad.noalias() += 0.3 * (c * l);
        benchmark::DoNotOptimize(grad);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_src_gradient)->RangeMultiplier(2)->Range(50, 400)->Complexity();

} // namespace
