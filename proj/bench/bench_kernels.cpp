#include <benchmark/benchmark.h>

#include <random>

#include "rectifier/random.hpp"
#include "rectifier/rectify.hpp"

using namespace rectifier;

namespace {

std::vector<var_id> first_vars(std::size_t n) {
    std::vector<var_id> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(make_var(static_cast<std::uint32_t>(i)));
    return v;
}

template <truth_table (*kernel)(const circuit&, std::span<const var_id>, const limits&)>
void bm_truth_table(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    auto vs = first_vars(n);
    auto c = random_circuit(vs, 200, rng);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(c, vs, limits{}));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

template <random_forest (*kernel)(const random_forest&, const decision_tree&, const classification_problem&, const limits&)>
void bm_forest(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const std::size_t n = 10;
    classification_problem p(first_vars(n), {make_var(n)});
    random_forest forest;
    for (int i = 0; i < state.range(0); ++i) forest.trees.push_back(random_classification_tree(p, {.max_depth = 10, .leaf_probability = 0.05}, rng));
    auto t = random_tree(p.all_vars(), {.max_depth = 8, .leaf_probability = 0.1}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(forest, t, p, limits{}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_rectify(benchmark::State& state) {
    std::mt19937_64 rng(3);
    classification_problem p(first_vars(16), {make_var(16)});
    const auto gates = static_cast<std::size_t>(state.range(0));
    auto clf = classifier::from_projection(p, random_circuit(p.features(), gates, rng));
    auto t = random_circuit(p.all_vars(), gates, rng);
    for (auto _ : state) benchmark::DoNotOptimize(rectify(clf, t));
    state.SetComplexityN(static_cast<std::int64_t>(clf.sigma().size() + t.size()));
}

}  // namespace

BENCHMARK(bm_truth_table<truth_table_reference>)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_truth_table<truth_table_serial>)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_truth_table<truth_table_parallel>)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_forest<rf_rectify_serial>)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_forest<rf_rectify>)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_rectify)->RangeMultiplier(10)->Range(100, 100000)->Complexity(benchmark::oN);

BENCHMARK_MAIN();
