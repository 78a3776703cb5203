#include <benchmark/benchmark.h>

#include "dshlab/pipeline.hpp"
#include "dshlab/random_fixtures.hpp"
#include "dshlab/unitary_paths.hpp"

namespace dshlab {
namespace {

void BM_Vn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const ThetaVector theta = random_triangulation_theta(rng, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(v_n(theta, 3));
}
BENCHMARK(BM_Vn)->Arg(16)->Arg(64)->Arg(144);

void BM_Condense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  const CondensePath path(n, random_positions(rng, n, 8));
  for (auto _ : state) benchmark::DoNotOptimize(path(0.6));
}
BENCHMARK(BM_Condense)->Arg(24)->Arg(96);

void BM_SingularValues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  const ComplexMatrix a = random_matrix(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(a));
}
BENCHMARK(BM_SingularValues)->Arg(24)->Arg(89)->Arg(144);

void BM_ReturnWords(benchmark::State& state) {
  const auto s = Substitution::fibonacci();
  for (auto _ : state) benchmark::DoNotOptimize(return_words(s, "0100101", static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ReturnWords)->Arg(10000)->Arg(100000);

void BM_Pipeline(benchmark::State& state) {
  const auto s = Substitution::fibonacci();
  TowerOptions options;
  const CylinderChain chain = build_cylinder_chain(s, deepening_bases(s, "0", 12), options);
  const ModelPtr& model = chain.model(0);
  const Element a = planted_singular_element(model, model->free_points(model->level_count()).front(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(approximate_by_invertible(chain, 0, a, 0.25));
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
}  // namespace dshlab

BENCHMARK_MAIN();
