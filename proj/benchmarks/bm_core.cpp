// Copyright 2026 The ota_fedsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <array>
#include <vector>

#include "ota/analysis.hpp"
#include "ota/channel.hpp"
#include "ota/data.hpp"
#include "ota/geometry.hpp"
#include "ota/losses.hpp"
#include "ota/protocols.hpp"

namespace {

using namespace ota;

std::vector<LossSpec> paper_losses(std::size_t n_agents) {
  const auto ds = generate_gaussian_blobs(
      3, n_agents * 50, std::array<ParamVec, 2>{ParamVec{-0.5, -0.5}, ParamVec{0.5, 0.5}}, 1.0, 1);
  const auto part = partition_iid(ds, n_agents, 1);
  std::vector<LossSpec> losses;
  for (const auto& shard : part.agent_shards) losses.push_back(LossSpec::logistic(1e-4, shard));
  return losses;
}

void BM_LogisticGradient(benchmark::State& state) {
  const auto losses = paper_losses(1);
  const ParamVec theta{0.3, -0.2, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(loss_gradient(losses[0], theta));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_LogisticGradient);

void BM_FedCotaRound(benchmark::State& state) {
  const auto losses = paper_losses(static_cast<std::size_t>(state.range(0)));
  const auto sched = StepSchedule::diminishing_sqrt(1.0);
  const auto set = ConstraintSet::ball(15.0);
  const ChannelModel channel(UniformPositive{0.5, 1.5}, 3);
  FedState s{0, ParamVec{1.0, 1.0, 1.0}, 0};
  for (auto _ : state) s = fedcota_round(s, losses, sched, set, channel).state;
}
BENCHMARK(BM_FedCotaRound)->Arg(10)->Arg(100);

void BM_FedAvgRound(benchmark::State& state) {
  const auto losses = paper_losses(static_cast<std::size_t>(state.range(0)));
  const auto sched = StepSchedule::diminishing_sqrt(1.0);
  const auto set = ConstraintSet::ball(15.0);
  FedState s{0, ParamVec{1.0, 1.0, 1.0}, 0};
  for (auto _ : state) s = fedavg_round(s, losses, sched, set).state;
}
BENCHMARK(BM_FedAvgRound)->Arg(10)->Arg(100);

void BM_Projection(benchmark::State& state) {
  const auto set = ConstraintSet::ball(1.0);
  const ParamVec x(std::vector<double>(static_cast<std::size_t>(state.range(0)), 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(project(set, x));
}
BENCHMARK(BM_Projection)->Arg(3)->Arg(1000);

void BM_ErrorEnvelope(benchmark::State& state) {
  const BoundParams p{1.0, 0.5, 2.0, 10.0};
  for (auto _ : state) benchmark::DoNotOptimize(error_envelope(p, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_ErrorEnvelope)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
