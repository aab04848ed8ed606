#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "nqs/frontend.hpp"
#include "nqs/realizability.hpp"
#include "opo.hpp"

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(NQS_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_NormalOrderedProduct(benchmark::State& state) {
  nqs::testing::Opo opo;
  auto p = opo.drift1() + opo.drift2();
  auto q = opo.hamiltonian();
  for (auto _ : state) benchmark::DoNotOptimize(opo.mul(p, q));
}
BENCHMARK(BM_NormalOrderedProduct);

void BM_AnalyzeOpo(benchmark::State& state) {
  auto s = nqs::testing::Opo{}.system();
  for (auto _ : state) benchmark::DoNotOptimize(nqs::analyze(s));
}
BENCHMARK(BM_AnalyzeOpo)->Unit(benchmark::kMillisecond);

void BM_ParseOpo(benchmark::State& state) {
  auto text = slurp("opo.qs");
  for (auto _ : state) benchmark::DoNotOptimize(nqs::parse_description(text));
}
BENCHMARK(BM_ParseOpo);

}  // namespace

BENCHMARK_MAIN();
