#include <benchmark/benchmark.h>

#include <vector>

#include "specprop/approx.hpp"
#include "specprop/filters.hpp"
#include "specprop/gcn.hpp"
#include "specprop/graph.hpp"
#include "specprop/sampling.hpp"

using namespace specprop;

namespace {

const FilterSpec& bench_filter() {
    static const FilterSpec filter = builtin_filter("g4");
    return filter;
}

void BM_GaussLegendreNodes(benchmark::State& state) {
    const Interval interval(-0.9, 0.9);
    const auto r = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto set = gauss_legendre_nodes(interval, r);
        benchmark::DoNotOptimize(set.points.data());
    }
}
BENCHMARK(BM_GaussLegendreNodes)->Arg(10)->Arg(40)->Arg(64);

void BM_ArnoldiFit(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    const auto samples = chebyshev_nodes(bench_filter().domain, r);
    const auto g = eval_filter(bench_filter(), samples);
    for (auto _ : state) {
        auto fit = arnoldi_fit(samples, g, r);
        benchmark::DoNotOptimize(fit.basis_coefficients.data());
    }
}
BENCHMARK(BM_ArnoldiFit)->Arg(10)->Arg(40);

void BM_VandermondeQr(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    const auto samples = chebyshev_nodes(bench_filter().domain, r);
    const auto g = eval_filter(bench_filter(), samples);
    const auto v = build_vandermonde(samples, r - 1);
    for (auto _ : state) {
        auto fit = solve_vandermonde_qr(v, g);
        benchmark::DoNotOptimize(fit.monomial_coefficients->data());
    }
}
BENCHMARK(BM_VandermondeQr)->Arg(10)->Arg(40);

void BM_EvaluateApproximant(benchmark::State& state) {
    const auto samples = chebyshev_nodes(bench_filter().domain, 40);
    const auto fit = arnoldi_fit(samples, eval_filter(bench_filter(), samples), 40);
    std::vector<double> grid(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 1e-5 + (2.0 - 1e-5) * static_cast<double>(i) / static_cast<double>(grid.size());
    for (auto _ : state) {
        auto values = evaluate_approximant(fit, grid);
        benchmark::DoNotOptimize(values.data());
    }
}
BENCHMARK(BM_EvaluateApproximant)->Arg(1000);

void BM_Spmm(benchmark::State& state) {
    const auto data = sbm_generate({200, 200, 200}, 0.05, 0.005, 1, 1.0, 3);
    const auto op = propagation_operator(data.graph, OperatorKind::NormalizedAdjacency);
    DenseMatrix dense(op.node_count, static_cast<std::size_t>(state.range(0)), 1.0);
    for (auto _ : state) {
        auto out = spmm(op, dense);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_Spmm)->Arg(16)->Arg(64);

void BM_PropagateRecurrence(benchmark::State& state) {
    const auto data = sbm_generate({200, 200, 200}, 0.05, 0.005, 1, 1.0, 3);
    const auto samples = chebyshev_nodes(bench_filter().domain, 40);
    auto fit = arnoldi_fit(samples, eval_filter(bench_filter(), samples),
                           static_cast<std::size_t>(state.range(0)));
    const auto& filter = bench_filter();
    auto plan = make_plan(propagation_operator(data.graph, OperatorKind::Laplacian),
                          PropagationMode::BasisRecurrence, fit, &filter);
    DenseMatrix h0(data.graph.node_count, 3, 1.0);
    const auto gamma = initial_gamma(plan);
    for (auto _ : state) {
        auto z = propagate(plan, h0, gamma);
        benchmark::DoNotOptimize(z.values.data());
    }
}
BENCHMARK(BM_PropagateRecurrence)->Arg(10)->Arg(30);

void BM_TrainEpoch(benchmark::State& state) {
    const auto data = sbm_generate({150, 150, 150}, 0.05, 0.005, 16, 0.5, 1);
    const auto& filter = bench_filter();
    const auto samples = chebyshev_nodes(filter.domain, 10);
    auto fit = arnoldi_fit(samples, eval_filter(filter, samples), 10);
    auto plan = make_plan(propagation_operator(data.graph, OperatorKind::Laplacian),
                          PropagationMode::BasisRecurrence, fit, &filter);
    SplitSpec split_spec;
    const auto split = make_split(data.graph.node_count, split_spec);
    TrainConfig config;
    config.epochs = 1;
    config.patience = 1;
    for (auto _ : state) {
        auto result = train(data.features, data.labels, plan, config, split);
        benchmark::DoNotOptimize(result.params.gamma.data());
    }
}
BENCHMARK(BM_TrainEpoch);

}  // namespace

BENCHMARK_MAIN();
