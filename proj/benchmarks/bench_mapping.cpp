#include <benchmark/benchmark.h>

#include "migmap/api_index.hpp"
#include "migmap/baselines.hpp"
#include "migmap/evaluation.hpp"
#include "migmap/similarity.hpp"
#include "migmap/substitution.hpp"

namespace {

const std::filesystem::path kData = MIGMAP_DATA_DIR;

struct Inputs {
  migmap::GroundTruth pool = migmap::load_ground_truth(kData / "truth/synthetic_truth.csv");
  migmap::ApiIndex source = migmap::build_api_index(kData / "truth/synthetic_source.catalog",
                                                    {"s", "s", "", {}}, migmap::Side::Source);
  migmap::ApiIndex target = migmap::build_api_index(kData / "truth/synthetic_target.catalog",
                                                    {"t", "t", "", {}}, migmap::Side::Target);
};

const Inputs& inputs() {
  static const Inputs in;
  return in;
}

migmap::FragmentSet fragments(migmap::Setting setting, std::size_t size, std::size_t count) {
  return migmap::dedup_fragments(
      migmap::synthesize_fragments(inputs().pool, setting, size, count, 42));
}

void BM_Substitution(benchmark::State& state) {
  const auto set = fragments(migmap::Setting::B, static_cast<std::size_t>(state.range(1)),
                             static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(migmap::substitution(set, nullptr));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Substitution)->ArgsProduct({{21, 201, 1401}, {5, 20}});

void BM_SubstitutionWithDocs(benchmark::State& state) {
  const auto set = fragments(migmap::Setting::C, 20, static_cast<std::size_t>(state.range(0)));
  const migmap::CatalogSimilarity sim(inputs().source, inputs().target);
  for (auto _ : state) benchmark::DoNotOptimize(migmap::substitution(set, &sim));
}
BENCHMARK(BM_SubstitutionWithDocs)->Arg(21)->Arg(201)->Arg(1401);

void BM_Csld(benchmark::State& state) {
  const auto& src = inputs().source;
  const auto& tgt = inputs().target;
  std::vector<std::string> docs;
  for (const auto& [_, d] : src.entries()) docs.push_back(d);
  for (const auto& [_, d] : tgt.entries()) docs.push_back(d);
  const auto space = migmap::VectorSpace::build(docs);
  const std::vector<std::string> left{src.entries().begin()->second};
  const std::vector<std::string> right{tgt.entries().begin()->second};
  for (auto _ : state) benchmark::DoNotOptimize(migmap::csld(left, right, space));
}
BENCHMARK(BM_Csld);

void BM_Baselines(benchmark::State& state) {
  const auto set = fragments(migmap::Setting::B, 10, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(migmap::fc_mappings(set));
    benchmark::DoNotOptimize(migmap::mc_mappings(set));
  }
}
BENCHMARK(BM_Baselines)->Arg(201)->Arg(1401);

}  // namespace

BENCHMARK_MAIN();
