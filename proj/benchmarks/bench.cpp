#include <benchmark/benchmark.h>

#include "funtf/construct.hpp"
#include "funtf/erasure.hpp"
#include "funtf/frame.hpp"
#include "funtf/pi2.hpp"
#include "funtf/space.hpp"

using namespace funtf;

namespace {

FrameSystem sample_frame(const SpaceSpec& sp, int big_n) {
  return funtf_of_length(sp, big_n);
}

void BM_Pi2Identity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpaceSpec sp = SpaceSpec::lp(n, 1.0);
  const CMat id = CMat::Identity(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi2(id, sp, sp, 1e-4));
  }
}
BENCHMARK(BM_Pi2Identity)->Arg(2)->Arg(3)->Arg(4);

void BM_FrameOperator(benchmark::State& state) {
  const int big_n = static_cast<int>(state.range(0));
  const SpaceSpec sp = SpaceSpec::lp(4, 2.0, Field::Complex);
  const FrameSystem fr = sample_frame(sp, big_n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frame_operator(fr));
  }
}
BENCHMARK(BM_FrameOperator)->Arg(8)->Arg(32)->Arg(128);

void BM_DftConstruction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpaceSpec sp = SpaceSpec::lp(n, 1.0, Field::Complex);
  const RVec lam = RVec::Ones(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dft_funtf({sp, lam}));
  }
}
BENCHMARK(BM_DftConstruction)->Arg(4)->Arg(16)->Arg(64);

void BM_ErasureSubsets(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const SpaceSpec sp = SpaceSpec::lp(3, 2.0, Field::Complex);
  const FrameSystem fr = sample_frame(sp, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(erasure_error(fr, m));
  }
}
BENCHMARK(BM_ErasureSubsets)->Arg(1)->Arg(2)->Arg(3);

void BM_Classify(benchmark::State& state) {
  const int big_n = static_cast<int>(state.range(0));
  const SpaceSpec sp = SpaceSpec::lp(3, 1.0, Field::Complex);
  const FrameSystem fr = sample_frame(sp, big_n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(fr));
  }
}
BENCHMARK(BM_Classify)->Arg(6)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
