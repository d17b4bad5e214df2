#include <benchmark/benchmark.h>

#include <random>

#include "newmod/hecke.hpp"
#include "newmod/newman.hpp"
#include "newmod/partitions.hpp"
#include "newmod/qseries.hpp"

using namespace newmod;

namespace {

qs::QSeries random_series(std::size_t len, std::uint32_t mod, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<qs::Residue> v(len);
  for (auto& x : v) x = static_cast<qs::Residue>(rng() % mod);
  v[0] = 1;
  return qs::QSeries::from_residues(mod, v);
}

void BM_PartitionMod(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(part::partition_mod(x, 5).data());
}
BENCHMARK(BM_PartitionMod)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_MulSchoolbook(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  const auto f = random_series(len, 1000003, 1), g = random_series(len, 1000003, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qs::mul(f, g, qs::MulAlgorithm::kSchoolbook));
}
BENCHMARK(BM_MulSchoolbook)->RangeMultiplier(4)->Range(64, 16384);

void BM_MulKaratsuba(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  const auto f = random_series(len, 1000003, 1), g = random_series(len, 1000003, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qs::mul(f, g, qs::MulAlgorithm::kKaratsuba));
}
BENCHMARK(BM_MulKaratsuba)->RangeMultiplier(4)->Range(64, 16384);

void BM_Census(benchmark::State& state) {
  const part::SequenceSpec spec{part::PartitionSeq{}, 31};
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(newman::census(spec, x));
}
BENCHMARK(BM_Census)->RangeMultiplier(10)->Range(10000, 1000000)->Unit(benchmark::kMillisecond);

void BM_HeckeHalf(benchmark::State& state) {
  const auto theta = qs::eta_expand(qs::EtaQuotient::parse("1:-2,2:5,4:-2"), 20000, 1000003);
  const auto f = qs::pow(theta, 3);
  const hecke::HeckeContext ctx{3, 4, 1};
  for (auto _ : state) benchmark::DoNotOptimize(hecke::hecke_half(f, ctx, 13));
}
BENCHMARK(BM_HeckeHalf)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
