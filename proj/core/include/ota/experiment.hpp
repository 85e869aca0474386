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

#ifndef OTA_EXPERIMENT_HPP_
#define OTA_EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ota/channel.hpp"
#include "ota/data.hpp"
#include "ota/geometry.hpp"
#include "ota/losses.hpp"
#include "ota/protocols.hpp"

namespace ota {

enum class Protocol { kFedCota, kFedAvg };
enum class LossKind { kLogistic, kQuadratic };

std::string protocol_name(Protocol p);
Protocol parse_protocol(std::string_view name);  // throws ConfigError

struct SeedSet {
  std::uint64_t data = 0;
  std::uint64_t init = 0;
  std::uint64_t channel = 0;
};

struct VerifyOptions {
  std::size_t seeds = 500;
  std::uint64_t k_max = 200;
  double slack = 0.05;
};

/// Everything needed to reproduce one experiment. Loaded from a JSON file
/// whose schema is closed: unknown keys are rejected.
struct ExperimentConfig {
  Protocol protocol = Protocol::kFedCota;
  std::size_t n_agents = 10;
  std::size_t dim = 3;
  std::size_t samples_per_agent = 100;
  LossKind loss = LossKind::kLogistic;
  double lambda = 1e-4;
  ConstraintSet constraint = ConstraintSet::ball(15.0);
  StepSchedule::Kind schedule_kind = StepSchedule::Kind::kDiminishingSqrt;
  std::optional<double> eta_c;  // default min(1, 1/L)
  CoefficientDistribution channel = UniformPositive{0.5, 1.5};
  std::uint64_t rounds = 500;
  SeedSet seeds;
  std::filesystem::path output = "trace.csv";

  // Logistic data: loaded from data_path when set, otherwise generated.
  std::optional<std::filesystem::path> data_path;
  std::optional<std::array<ParamVec, 2>> blob_centers;  // default -0.5 / +0.5 in every feature
  double blob_sigma = 1.0;

  // Quadratic targets b_i: explicit, or drawn N(0, spread^2 I) from the data seed.
  std::optional<std::vector<ParamVec>> quadratic_targets;
  double target_spread = 1.0;

  std::optional<ParamVec> theta0;  // default: uniform draw from the set
  StopCriteria centralized;
  VerifyOptions verify;
};

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Local losses plus the dataset they came from (logistic only).
struct Problem {
  std::vector<LossSpec> losses;
  std::optional<LabeledDataset> dataset;
};

/// Blob dataset described by the config (ignores data_path).
LabeledDataset generate_dataset(const ExperimentConfig& config);

Problem build_problem(const ExperimentConfig& config);

/// Shared setup of run / compare / verify: losses, constants, step
/// schedule, the centralized reference theta_d and theta(0).
struct PreparedExperiment {
  ExperimentConfig config;
  Problem problem;
  CurvatureConstants constants;  // aggregated over agents
  StepSchedule schedule;
  FitResult fit;                 // fit.theta is theta_d
  ParamVec theta0;
  std::vector<std::string> warnings;
};

PreparedExperiment prepare_experiment(const ExperimentConfig& config);

/// K rounds of one protocol from the prepared state. Returns K + 1 traces;
/// row 0 is the initial point with epsilon 0 and no slots used.
std::vector<RoundTrace> run_protocol(const PreparedExperiment& prepared, Protocol protocol,
                                     std::uint64_t rounds, std::uint64_t channel_seed,
                                     unsigned threads = 1);

struct ExperimentResult {
  PreparedExperiment prepared;
  std::vector<RoundTrace> traces;
};

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads = 1);

/// k,epsilon,global_loss,theta_0..theta_{m-1},slots_used
void write_trace_csv(const std::filesystem::path& path, const std::vector<RoundTrace>& traces);
std::string trace_csv(const std::vector<RoundTrace>& traces);

/// protocol,k,slots_used,epsilon,global_loss,theta_0..theta_{m-1}; FedCOTA
/// rows first, then FedAVG rows.
void write_compare_csv(const std::filesystem::path& path, const std::vector<RoundTrace>& fedcota,
                       const std::vector<RoundTrace>& fedavg);

/// Number of completed rounds whose cumulative slot count fits in budget.
std::uint64_t rounds_within_budget(const std::vector<RoundTrace>& traces, std::uint64_t budget);

}  // namespace ota

#endif  // OTA_EXPERIMENT_HPP_
