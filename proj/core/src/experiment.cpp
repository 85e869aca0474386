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

#include "ota/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ota/analysis.hpp"
#include "ota/csv.hpp"
#include "ota/errors.hpp"
#include "ota/random.hpp"

namespace ota {

LabeledDataset generate_dataset(const ExperimentConfig& config) {
  if (config.dim < 2) throw ConfigError("m: logistic experiments need m >= 2");
  const std::size_t total = config.n_agents * config.samples_per_agent;
  if (total % 2 != 0) {
    throw ConfigError("N * samples_per_agent must be even to give two equal classes");
  }
  std::array<ParamVec, 2> centers = config.blob_centers.value_or(std::array<ParamVec, 2>{
      ParamVec(std::vector<double>(config.dim - 1, -0.5)),
      ParamVec(std::vector<double>(config.dim - 1, 0.5))});
  return generate_gaussian_blobs(config.dim, total / 2, centers, config.blob_sigma,
                                 config.seeds.data);
}

Problem build_problem(const ExperimentConfig& config) {
  Problem p;
  if (config.loss == LossKind::kQuadratic) {
    std::vector<ParamVec> targets;
    if (config.quadratic_targets) {
      targets = *config.quadratic_targets;
    } else {
      if (!(config.target_spread >= 0.0)) throw ConfigError("quadratic.spread: must be >= 0");
      Rng rng(derive_seed(config.seeds.data, stream::kTargets));
      for (std::size_t i = 0; i < config.n_agents; ++i) {
        std::vector<double> b(config.dim);
        for (double& x : b) x = config.target_spread * standard_normal(rng);
        targets.emplace_back(std::move(b));
      }
    }
    for (ParamVec& b : targets) p.losses.push_back(LossSpec::quadratic(std::move(b)));
    return p;
  }

  LabeledDataset ds = config.data_path ? load_csv(*config.data_path) : generate_dataset(config);
  if (ds.dim() != config.dim) {
    throw ConfigError("dataset dimension " + std::to_string(ds.dim()) + " does not match m = " +
                      std::to_string(config.dim));
  }
  if (ds.size() != config.n_agents * config.samples_per_agent) {
    throw ConfigError("dataset has " + std::to_string(ds.size()) + " samples, expected N * " +
                      "samples_per_agent = " +
                      std::to_string(config.n_agents * config.samples_per_agent));
  }
  Partition part = partition_iid(ds, config.n_agents, config.seeds.data);
  for (auto& shard : part.agent_shards) {
    p.losses.push_back(LossSpec::logistic(config.lambda, std::move(shard)));
  }
  p.dataset = std::move(ds);
  return p;
}

PreparedExperiment prepare_experiment(const ExperimentConfig& config) {
  if (auto d = config.constraint.dim(); d && *d != config.dim) {
    throw ConfigError("constraint dimension does not match m");
  }
  Problem problem = build_problem(config);

  std::vector<CurvatureConstants> per_agent;
  per_agent.reserve(problem.losses.size());
  try {
    for (const LossSpec& l : problem.losses) {
      per_agent.push_back(estimate_constants(l, config.constraint));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const CurvatureConstants constants = aggregate_constants(per_agent);

  std::vector<std::string> warnings;
  const double eta_c = config.eta_c.value_or(std::min(1.0, 1.0 / constants.lip));
  if (eta_c > 1.0 / constants.lip) {
    std::ostringstream msg;
    msg << "eta_c = " << eta_c << " exceeds 1/L = " << 1.0 / constants.lip
        << " (Assumption 3 violated); running anyway";
    warnings.push_back(msg.str());
  }
  StepSchedule schedule = config.schedule_kind == StepSchedule::Kind::kConstant
                              ? StepSchedule::constant(eta_c)
                              : StepSchedule::diminishing_sqrt(eta_c);

  FitResult fit = centralized_fit(problem.losses, StepSchedule::constant(1.0 / constants.lip),
                                  config.constraint, config.centralized);
  if (!fit.converged) {
    std::ostringstream msg;
    msg << "centralized fit stopped after " << fit.iterations
        << " iterations with stationarity " << fit.stationarity << " >= grad_tol "
        << config.centralized.grad_tol;
    warnings.push_back(msg.str());
  }

  ParamVec theta0 = ParamVec::zeros(config.dim);
  if (config.theta0) {
    if (!contains(config.constraint, *config.theta0, 1e-12)) {
      throw ConfigError("init.theta0: must lie in the constraint set");
    }
    theta0 = *config.theta0;
  } else {
    Rng rng(derive_seed(config.seeds.init, stream::kInit));
    theta0 = sample_uniform(config.constraint, config.dim, rng);
  }

  return PreparedExperiment{config,   std::move(problem), constants, schedule,
                            std::move(fit), std::move(theta0), std::move(warnings)};
}

std::vector<RoundTrace> run_protocol(const PreparedExperiment& prepared, Protocol protocol,
                                     std::uint64_t rounds, std::uint64_t channel_seed,
                                     unsigned threads) {
  const ExperimentConfig& cfg = prepared.config;
  const std::vector<LossSpec>& losses = prepared.problem.losses;
  if (prepared.theta0 == prepared.fit.theta) {
    throw ConfigError("theta(0) coincides with theta_d; epsilon is undefined");
  }
  const EpsilonReference reference{prepared.theta0, prepared.fit.theta};
  const RoundOptions opts{&reference, threads};
  const ChannelModel channel(cfg.channel, channel_seed);

  std::vector<RoundTrace> traces;
  traces.reserve(rounds + 1);
  FedState state{0, prepared.theta0, 0};
  traces.push_back(RoundTrace{0, state.theta, 0.0, global_loss(losses, state.theta), 0, {}});
  for (std::uint64_t r = 0; r < rounds; ++r) {
    RoundResult res = protocol == Protocol::kFedCota
                          ? fedcota_round(state, losses, prepared.schedule, cfg.constraint,
                                          channel, opts)
                          : fedavg_round(state, losses, prepared.schedule, cfg.constraint, opts);
    state = std::move(res.state);
    traces.push_back(std::move(res.trace));
  }
  return traces;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads) {
  PreparedExperiment prepared = prepare_experiment(config);
  std::vector<RoundTrace> traces =
      run_protocol(prepared, config.protocol, config.rounds, config.seeds.channel, threads);
  return ExperimentResult{std::move(prepared), std::move(traces)};
}

std::uint64_t rounds_within_budget(const std::vector<RoundTrace>& traces, std::uint64_t budget) {
  std::uint64_t best = 0;
  for (const RoundTrace& t : traces) {
    if (t.slots_used <= budget) best = std::max(best, t.k);
  }
  return best;
}

}  // namespace ota
