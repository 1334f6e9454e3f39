#include <benchmark/benchmark.h>

#include "csl/dynsys/integrate.h"
#include "csl/learnlab/families.h"
#include "csl/matcalc/lyapunov.h"
#include "csl/random.h"
#include "csl/sgdlab/sgd.h"

namespace {

csl::Matrix StableMatrix(Eigen::Index dim) {
  csl::Rng rng = csl::MakeRng(1, static_cast<std::uint64_t>(dim));
  const csl::Matrix a = csl::StandardNormalMatrix(rng, dim, dim);
  const csl::Matrix s = csl::StandardNormalMatrix(rng, dim, dim);
  return -(a.transpose() * a / static_cast<double>(dim) +
           0.5 * csl::Matrix::Identity(dim, dim)) + 0.5 * (s - s.transpose());
}

void BM_SolveLyapunov(benchmark::State& state) {
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  const csl::Matrix j = StableMatrix(dim);
  const csl::Matrix q = csl::Matrix::Identity(dim, dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(csl::matcalc::SolveLyapunovEquation(j, q));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveLyapunov)->RangeMultiplier(2)->Range(4, 64)->Complexity(benchmark::oNCubed);

void BM_Rk4LinearFlow(benchmark::State& state) {
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  const auto field = csl::dynsys::LinearField(StableMatrix(dim));
  const csl::Vector x0 = csl::Vector::Ones(dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(csl::dynsys::Integrate(field, x0, 1.0, 1e-3));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Rk4LinearFlow)->Arg(2)->Arg(8)->Arg(32);

void BM_PairedSgd(benchmark::State& state) {
  const auto family = csl::learnlab::MakeFamily("quadratic");
  csl::Rng rng = csl::MakeRng(2, 0);
  const auto s = csl::learnlab::SampleTrainingSet(family, 200, rng);
  const auto z_new = family.sample(rng, 200);
  const auto map = csl::sgdlab::GradientStepMap(family.loss, 0.1);
  const csl::sgdlab::BatchRealization realization{3, state.range(0), 200,
                                                  csl::sgdlab::Sampler::kWithoutReplacement};
  const auto metric = csl::matcalc::Metric::Identity(family.theta0.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        csl::sgdlab::RunPaired(map, s, 0, z_new, family.theta0, 300, realization, metric));
  }
  state.SetItemsProcessed(state.iterations() * 300);
}
BENCHMARK(BM_PairedSgd)->Arg(1)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
