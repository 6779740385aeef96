#include <benchmark/benchmark.h>

#include <random>

#include "hirepath/errors.hpp"
#include "hirepath/idr.hpp"
#include "hirepath/ranking.hpp"
#include "hirepath/similarity.hpp"
#include "hirepath/synth.hpp"

namespace {

hirepath::Cohort small_cohort() {
  hirepath::SynthConfig cfg;
  cfg.n_persons = 2000;
  cfg.n_incumbents = 200;
  cfg.seed = 7;
  return hirepath::synth_cohort(cfg);
}

void BM_PaperIdr(benchmark::State& state) {
  auto cohort = small_cohort();
  hirepath::SimilarityMatrix S = hirepath::similarity_matrix(cohort, 2012);
  std::mt19937_64 rng(1);
  std::vector<const hirepath::Paper*> eligible;
  for (const auto& p : cohort.papers)
    if (p.total_refs() >= 5) eligible.push_back(&p);
  for (auto _ : state) {
    const auto* p = eligible[rng() % eligible.size()];
    benchmark::DoNotOptimize(hirepath::paper_idr(*p, S).value);
  }
}
BENCHMARK(BM_PaperIdr);

void BM_SimilarityMatrix(benchmark::State& state) {
  auto cohort = small_cohort();
  for (auto _ : state)
    benchmark::DoNotOptimize(hirepath::similarity_matrix(cohort, 2012).entries.sum());
}
BENCHMARK(BM_SimilarityMatrix);

void BM_SpringRank(benchmark::State& state) {
  auto cohort = small_cohort();
  auto graph = hirepath::placement_graph(cohort, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hirepath::springrank(graph, 0.01));
}
BENCHMARK(BM_SpringRank);

void BM_PersonIdrMedian(benchmark::State& state) {
  auto cohort = small_cohort();
  hirepath::SimilarityCache cache(cohort);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    const auto& person = cohort.persons[rng() % cohort.persons.size()];
    if (person.incumbent) continue;
    try {
      benchmark::DoNotOptimize(hirepath::phd_idr_median(cohort, person, cache).value);
    } catch (const hirepath::Error&) {
    }
  }
}
BENCHMARK(BM_PersonIdrMedian);

}  // namespace

BENCHMARK_MAIN();
