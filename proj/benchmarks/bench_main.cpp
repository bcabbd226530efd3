#include <benchmark/benchmark.h>

#include "aisclass/decision_tree.hpp"
#include "aisclass/features.hpp"
#include "aisclass/imm.hpp"
#include "aisclass/rebalance.hpp"
#include "aisclass/svm.hpp"
#include "fixtures.hpp"

using namespace aisclass;

namespace {

LabeledDataset make_data(std::size_t n, std::size_t d, double fishing_share) {
  return fixtures::random_dataset(n, d, 42, [&](const auto& row, Rng& rng) {
    return row[0] + 0.5 * rng.normal() > 1.0 - 2.0 * fishing_share ? Label::fishing : Label::non_fishing;
  });
}

void BM_ImmStep(benchmark::State& state) {
  const ImmConfig cfg;
  ImmState s = initial_state(Meas(0, 0), cfg);
  double x = 0;
  for (auto _ : state) {
    x += 50.0;
    s = imm_step(s, Meas(x, 0.5 * x), 10.0, cfg);
    benchmark::DoNotOptimize(s.x_combined);
  }
}
BENCHMARK(BM_ImmStep);

void BM_SmoothTrack(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Track t = fixtures::make_track(fixtures::straight(219000001, n, 10, 5.0));
  for (auto _ : state) benchmark::DoNotOptimize(smooth_track(t, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SmoothTrack)->Arg(50)->Arg(400);

void BM_Extract(benchmark::State& state) {
  const auto seg = fixtures::make_segment(fixtures::line_points(50, 10, 3, 4));
  for (auto _ : state) benchmark::DoNotOptimize(extract(seg, FeatureMode::full_44));
}
BENCHMARK(BM_Extract);

void BM_TreeTrain(benchmark::State& state) {
  const auto ds = make_data(static_cast<std::size_t>(state.range(0)), 44, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(DecisionTree::train(ds));
}
BENCHMARK(BM_TreeTrain)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_SvmTrain(benchmark::State& state) {
  const auto ds = make_data(static_cast<std::size_t>(state.range(0)), 44, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(SvmModel::train(ds));
}
BENCHMARK(BM_SvmTrain)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_Smote(benchmark::State& state) {
  const auto ds = make_data(static_cast<std::size_t>(state.range(0)), 44, 0.2);
  BalanceConfig cfg;
  cfg.method = BalanceMethod::smote;
  for (auto _ : state) benchmark::DoNotOptimize(smote(ds, cfg));
}
BENCHMARK(BM_Smote)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
