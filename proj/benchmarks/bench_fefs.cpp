#include <random>

#include <benchmark/benchmark.h>

#include "fefs/fefs.hpp"

namespace {

fefs::Dataset synthetic(std::size_t m, std::size_t d, std::size_t classes) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(fefs::normalization_floor, 1.0);
    fefs::Dataset out;
    out.values = fefs::Matrix(m, d);
    for (std::size_t i = 0; i < m; ++i) {
        out.labels.push_back(i % classes);
        for (std::size_t j = 0; j < d; ++j) out.values(i, j) = u(gen);
    }
    for (std::size_t k = 0; k < classes; ++k) out.class_names.push_back(std::to_string(k));
    for (std::size_t j = 0; j < d; ++j) out.feature_names.push_back(std::to_string(j));
    return out;
}

void BM_SimilarityMatrix(benchmark::State& state) {
    const auto data = synthetic(static_cast<std::size_t>(state.range(0)), 30, 2);
    const auto ideals = fefs::ideal_vector_set(data, fefs::MeanKind::geometric);
    for (auto _ : state) benchmark::DoNotOptimize(fefs::similarity_matrix(data, ideals, 2.0));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimilarityMatrix)->Arg(300)->Arg(3000);

void BM_EntropyRanking(benchmark::State& state) {
    const auto data = synthetic(300, 30, 2);
    const auto ideals = fefs::ideal_vector_set(data, fefs::MeanKind::geometric);
    const auto matrix = fefs::similarity_matrix(data, ideals, 2.0);
    const auto kind = static_cast<fefs::EntropyKind>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fefs::rank_features(matrix, kind));
}
BENCHMARK(BM_EntropyRanking)->DenseRange(0, 2);

void BM_Classify(benchmark::State& state) {
    const auto data = synthetic(300, 30, 2);
    const auto ideals = fefs::ideal_vector_set(data, fefs::MeanKind::geometric);
    fefs::ClassifierConfig cfg;
    for (std::size_t j = 0; j < 30; ++j) cfg.feature_subset.push_back(j);
    for (auto _ : state) benchmark::DoNotOptimize(fefs::classify(data, ideals, cfg));
}
BENCHMARK(BM_Classify);

void BM_CachedRemovalPass(benchmark::State& state) {
    const auto data = synthetic(300, 30, 2);
    const auto ideals = fefs::ideal_vector_set(data, fefs::MeanKind::geometric);
    const fefs::SimilarityCache cache(data, ideals, 2.0);
    const auto ranking = fefs::rank_features(fefs::similarity_matrix(data, ideals, 2.0), fefs::EntropyKind::luca);
    for (auto _ : state)
        benchmark::DoNotOptimize(fefs::evaluate_removal(cache, data.labels, ranking, fefs::RemovalOrder::lowest_first,
                                                        fefs::MeanKind::geometric));
}
BENCHMARK(BM_CachedRemovalPass);

void BM_ReliefF(benchmark::State& state) {
    const auto data = synthetic(static_cast<std::size_t>(state.range(0)), 30, 2);
    for (auto _ : state) benchmark::DoNotOptimize(fefs::relieff_weights(data, 10));
}
BENCHMARK(BM_ReliefF)->Arg(150)->Arg(300);

void BM_Repeat(benchmark::State& state) {
    const auto data = synthetic(570, 30, 2);
    fefs::ExperimentConfig cfg;
    std::size_t r = 0;
    for (auto _ : state) benchmark::DoNotOptimize(fefs::run_repeat(data, cfg, r++));
}
BENCHMARK(BM_Repeat);

}  // namespace

BENCHMARK_MAIN();
