#include <benchmark/benchmark.h>

#include "satmimo/numeric.hpp"
#include "satmimo/precoder_lmo.hpp"
#include "satmimo/precoder_mm.hpp"
#include "satmimo/precoder_wmmse.hpp"
#include "satmimo/rate_eval.hpp"
#include "satmimo/scenario.hpp"

using namespace satmimo;

namespace {

std::vector<UtChannelStats> desk_stats(int num_uts) {
  ScenarioConfig cfg;
  cfg.num_uts = num_uts;
  return build_instance(cfg, 1);
}

void BM_UpaResponse(benchmark::State& state) {
  const UpaGeometry geom{16, 16, 1.0, 1.0};
  const SpaceAnglePair p{0.21, -0.33};
  for (auto _ : state) {
    benchmark::DoNotOptimize(upa_response(geom, p));
  }
}
BENCHMARK(BM_UpaResponse);

void BM_SampleChannel(benchmark::State& state) {
  const auto stats = desk_stats(16);
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_channel(stats, samples, RngStream(7)));
  }
  state.SetItemsProcessed(state.iterations() * samples * 16);
}
BENCHMARK(BM_SampleChannel)->Arg(256)->Arg(1024);

void BM_MmConstants(benchmark::State& state) {
  const auto stats = desk_stats(16);
  const ChannelBatch batch = sample_channel(stats, static_cast<int>(state.range(0)), RngStream(3));
  const PrecoderMatrix w = mrt_precoder(stack_responses(stats), dbw_to_watts(20.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mm_constants(w, batch, stats));
  }
}
BENCHMARK(BM_MmConstants)->Arg(512)->Arg(2048);

void BM_RegularizedUpdate(benchmark::State& state) {
  const auto stats = desk_stats(16);
  const CMat g_all = stack_responses(stats);
  const double power = dbw_to_watts(20.0);
  const ChannelBatch batch = sample_channel(stats, 512, RngStream(4));
  const MmConstants consts = mm_constants(mrt_precoder(g_all, power), batch, stats);
  for (auto _ : state) {
    benchmark::DoNotOptimize(regularized_update(consts.a, consts.b, g_all, power));
  }
}
BENCHMARK(BM_RegularizedUpdate);

void BM_LmoIteration(benchmark::State& state) {
  const auto stats = desk_stats(16);
  const double power = dbw_to_watts(20.0);
  const Multipliers lam = uniform_multipliers(16, power);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lmo_update(lmo_constants(lam, stats), stats, power));
  }
}
BENCHMARK(BM_LmoIteration);

void BM_RecoverPrecoders(benchmark::State& state) {
  const auto stats = desk_stats(16);
  const Multipliers lam = uniform_multipliers(16, dbw_to_watts(20.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(recover_precoders(lam, stats));
  }
}
BENCHMARK(BM_RecoverPrecoders);

void BM_ErgodicSumRate(benchmark::State& state) {
  const auto stats = desk_stats(16);
  const ChannelBatch batch = sample_channel(stats, static_cast<int>(state.range(0)), RngStream(5));
  const PrecoderMatrix w = mrt_precoder(stack_responses(stats), dbw_to_watts(20.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ergodic_sum_rate(w, stats, batch));
  }
}
BENCHMARK(BM_ErgodicSumRate)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
