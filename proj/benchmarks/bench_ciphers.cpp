#include <benchmark/benchmark.h>

#include "pdwb/ciphers.hpp"
#include "pdwb/synth.hpp"

using namespace pdwb;

namespace {

void encrypt_bench(benchmark::State& state, CipherId id) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto km = key_schedule(Seed{1, id}, n, n);
  const auto P = synth_uniform(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(encrypt(P, km));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * n * n));
}

void BM_ParvinEncrypt(benchmark::State& s) { encrypt_bench(s, CipherId::Parvin); }
void BM_NorouziEncrypt(benchmark::State& s) { encrypt_bench(s, CipherId::Norouzi); }
void BM_YangEncrypt(benchmark::State& s) { encrypt_bench(s, CipherId::Yang); }
BENCHMARK(BM_ParvinEncrypt)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_NorouziEncrypt)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_YangEncrypt)->Arg(64)->Arg(256)->Arg(512);

void BM_YangDecrypt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto km = key_schedule(Seed{1, CipherId::Yang}, n, n);
  const auto C = encrypt(synth_uniform(n, n, 2), km);
  for (auto _ : state) benchmark::DoNotOptimize(decrypt(C, km));
}
BENCHMARK(BM_YangDecrypt)->Arg(256);

void BM_KeySchedule(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(key_schedule(Seed{1, CipherId::Yang}, n, n));
}
BENCHMARK(BM_KeySchedule)->Arg(256);

}  // namespace
