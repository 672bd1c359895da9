#include <benchmark/benchmark.h>

#include "pdwb/attacks.hpp"

using namespace pdwb;

namespace {

void BM_KpNorouzi(benchmark::State& state) {
  LocalOracle o(key_schedule(Seed{1, CipherId::Norouzi}, 64, 64), AttackModel::KnownPlaintext, 2);
  std::vector<PlainCipherPair> pairs;
  for (int i = 0; i < state.range(0); ++i) pairs.push_back(o.sample());
  for (auto _ : state) benchmark::DoNotOptimize(kp_attack_norouzi(pairs));
}
BENCHMARK(BM_KpNorouzi)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CpNorouzi16(benchmark::State& state) {
  const auto km = key_schedule(Seed{1, CipherId::Norouzi}, 16, 16);
  for (auto _ : state) {
    LocalOracle o(km, AttackModel::ChosenPlaintext);
    benchmark::DoNotOptimize(cp_attack_norouzi(o));
  }
}
BENCHMARK(BM_CpNorouzi16)->Unit(benchmark::kMillisecond);

void BM_CpYang16(benchmark::State& state) {
  const auto km = key_schedule(Seed{1, CipherId::Yang}, 16, 16);
  for (auto _ : state) {
    LocalOracle o(km, AttackModel::ChosenPlaintext);
    benchmark::DoNotOptimize(cp_attack_yang_full(o));
  }
}
BENCHMARK(BM_CpYang16)->Unit(benchmark::kMillisecond);

void BM_CpParvin32(benchmark::State& state) {
  const auto km = key_schedule(Seed{1, CipherId::Parvin}, 32, 32);
  for (auto _ : state) {
    LocalOracle o(km, AttackModel::ChosenPlaintext);
    benchmark::DoNotOptimize(cp_attack_parvin_full(o));
  }
}
BENCHMARK(BM_CpParvin32)->Unit(benchmark::kMillisecond);

}  // namespace
