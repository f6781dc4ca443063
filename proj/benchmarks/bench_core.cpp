#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <memory>

#include "hartree/evolution.hpp"
#include "hartree/functionals.hpp"
#include "hartree/ground_state.hpp"
#include "hartree/profiles.hpp"

namespace {

using hartree::ComplexRadialField;
using hartree::RadialModel;

const RadialModel& model(int n) {
  static std::map<int, std::unique_ptr<RadialModel>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RadialModel>(RadialModel::build(hartree::make_params(3, -0.1), n, 20.0, 3.0));
  return *slot;
}

ComplexRadialField sample_field(const RadialModel& m) {
  return hartree::profiles::gaussian(m.grid_ptr(), 1.5, 0.8, m.params().rho);
}

void BM_ModelBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RadialModel::build(hartree::make_params(3, -0.1), n, 20.0, 3.0));
  }
}
BENCHMARK(BM_ModelBuild)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_TransformRoundTrip(benchmark::State& state) {
  const RadialModel& m = model(static_cast<int>(state.range(0)));
  const auto u = sample_field(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.plan().inverse(m.plan().forward(u)));
  }
}
BENCHMARK(BM_TransformRoundTrip)->Arg(256)->Arg(512)->Arg(1024);

void BM_HartreePotential(benchmark::State& state) {
  const RadialModel& m = model(static_cast<int>(state.range(0)));
  const auto u = sample_field(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.kernel().potential(u));
  }
}
BENCHMARK(BM_HartreePotential)->Arg(256)->Arg(512)->Arg(1024);

void BM_Functionals(benchmark::State& state) {
  const RadialModel& m = model(static_cast<int>(state.range(0)));
  const auto u = sample_field(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hartree::functionals(m, u));
  }
}
BENCHMARK(BM_Functionals)->Arg(256)->Arg(512);

void BM_StrangStep(benchmark::State& state) {
  const RadialModel& m = model(static_cast<int>(state.range(0)));
  auto u = sample_field(m);
  for (auto _ : state) {
    u = hartree::step(m, u, 1e-4);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_StrangStep)->Arg(256)->Arg(512)->Arg(1024);

void BM_GroundState(benchmark::State& state) {
  const RadialModel& m = model(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hartree::solve_ground_state(m));
  }
}
BENCHMARK(BM_GroundState)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
