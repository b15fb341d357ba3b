// Serial reference vs OpenMP kernels, plus end-to-end restructuring and simulation.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "hgr/graph.hpp"
#include "hgr/kernels.hpp"
#include "hgr/locality.hpp"
#include "hgr/pipeline.hpp"
#include "hgr/recouple.hpp"

using namespace hgr;
namespace k = hgr::kernels;

namespace {

const SemanticGraph& bench_graph(std::int64_t edges) {
  static std::map<std::int64_t, SemanticGraph> cache;
  auto it = cache.find(edges);
  if (it == cache.end()) {
    GeneratorParams p;
    p.kind = GeneratorKind::kPowerLaw;
    p.num_src = static_cast<std::size_t>(edges / 5);
    p.num_dst = static_cast<std::size_t>(edges / 50);
    p.num_edges = static_cast<std::size_t>(edges);
    p.seed = 1;
    it = cache.emplace(edges, gen_synthetic(p)).first;
  }
  return it->second;
}

std::vector<std::uint8_t> random_mask(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> m(n);
  for (auto& x : m) x = rng() % 3 == 0;
  return m;
}

template <class Fn>
void run_classify(benchmark::State& state, Fn fn) {
  const auto& g = bench_graph(state.range(0));
  const auto src_in = random_mask(g.num_src(), 1), dst_in = random_mask(g.num_dst(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fn(g, src_in, dst_in));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

template <class Fn>
void run_degree(benchmark::State& state, Fn fn) {
  const auto& g = bench_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fn(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_vertices()));
}

template <class Fn>
void run_buckets(benchmark::State& state, Fn fn) {
  std::mt19937_64 rng(3);
  std::vector<std::uint64_t> fetches(static_cast<std::size_t>(state.range(0)));
  for (auto& f : fetches) f = rng() % 40;
  for (auto _ : state) benchmark::DoNotOptimize(fn(fetches, kDefaultBucketEdges));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ClassifySerial(benchmark::State& s) { run_classify(s, k::serial::classify_edges); }
void BM_ClassifyOmp(benchmark::State& s) { run_classify(s, k::omp::classify_edges); }
void BM_UncoveredSerial(benchmark::State& s) { run_classify(s, k::serial::count_uncovered); }
void BM_UncoveredOmp(benchmark::State& s) { run_classify(s, k::omp::count_uncovered); }
void BM_DegreeSerial(benchmark::State& s) { run_degree(s, k::serial::degree_stats); }
void BM_DegreeOmp(benchmark::State& s) { run_degree(s, k::omp::degree_stats); }
void BM_BucketSerial(benchmark::State& s) { run_buckets(s, k::serial::bucket_of); }
void BM_BucketOmp(benchmark::State& s) { run_buckets(s, k::omp::bucket_of); }

void BM_Restructure(benchmark::State& state) {
  const auto& g = bench_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(restructure_recursive(g, {}, 256));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_SimulateBaseline(benchmark::State& state) {
  const auto& g = bench_graph(state.range(0));
  const auto trace = na_trace_baseline(g);
  BufferConfig c;
  c.capacity_vectors = 256;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_buffer(trace, c, 256));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trace.accesses.size()));
}

}  // namespace

BENCHMARK(BM_ClassifySerial)->Arg(50000)->Arg(1000000);
BENCHMARK(BM_ClassifyOmp)->Arg(50000)->Arg(1000000);
BENCHMARK(BM_UncoveredSerial)->Arg(50000)->Arg(1000000);
BENCHMARK(BM_UncoveredOmp)->Arg(50000)->Arg(1000000);
BENCHMARK(BM_DegreeSerial)->Arg(50000)->Arg(1000000);
BENCHMARK(BM_DegreeOmp)->Arg(50000)->Arg(1000000);
BENCHMARK(BM_BucketSerial)->Arg(100000)->Arg(4000000);
BENCHMARK(BM_BucketOmp)->Arg(100000)->Arg(4000000);
BENCHMARK(BM_Restructure)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateBaseline)->Arg(50000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
