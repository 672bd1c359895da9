#include <benchmark/benchmark.h>

#include "pdwb/prng.hpp"
#include "pdwb/solvers.hpp"

using namespace pdwb;

namespace {

TripleSet random_triples(unsigned n, std::size_t g, std::uint64_t seed) {
  SplitMixStream rng(seed);
  const auto k = static_cast<std::uint32_t>(rng.next_word() & width_mask(n - 1));
  TripleSet G(n);
  for (std::size_t i = 0; i < g; ++i) {
    const auto a = static_cast<std::uint32_t>(rng.next_word() & width_mask(n));
    const auto b = static_cast<std::uint32_t>(rng.next_word() & width_mask(n));
    G.add(a, b, raw::dea(a, b, k, n));
  }
  return G;
}

void BM_BitPlaneSolve(benchmark::State& state) {
  const auto G = random_triples(static_cast<unsigned>(state.range(0)), 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bit_plane_solve(G));
}
BENCHMARK(BM_BitPlaneSolve)->Arg(8)->Arg(16)->Arg(32);

void BM_BruteForceSolve(benchmark::State& state) {
  const auto G = random_triples(static_cast<unsigned>(state.range(0)), 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_solve(G));
}
BENCHMARK(BM_BruteForceSolve)->Arg(8)->Arg(12)->Arg(16);

void BM_MultSolve(benchmark::State& state) {
  SplitMixStream rng(3);
  std::vector<MulTriple> G;
  const auto k = rng.next_byte();
  for (int i = 0; i < state.range(0); ++i) {
    const auto a = rng.next_byte();
    const std::uint64_t S = rng.next_word() >> 40;
    G.push_back({a, S, static_cast<std::uint8_t>(static_cast<std::uint8_t>(a + k) ^ g_mul(S, k))});
  }
  for (auto _ : state) benchmark::DoNotOptimize(mult_solve(G));
}
BENCHMARK(BM_MultSolve)->Arg(1)->Arg(3);

}  // namespace
