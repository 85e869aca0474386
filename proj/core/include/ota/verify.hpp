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

#ifndef OTA_VERIFY_HPP_
#define OTA_VERIFY_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "ota/analysis.hpp"
#include "ota/channel.hpp"
#include "ota/experiment.hpp"
#include "ota/losses.hpp"

namespace ota {

struct EnvelopeCheckOptions {
  std::size_t seeds = 500;
  std::uint64_t k_max = 200;
  double slack = 0.05;           // relative slack on envelope dominance
  double stderr_multiple = 5.0;  // Monte-Carlo slack in the one-step check
  std::uint64_t channel_seed = 0;
  unsigned threads = 1;
};

/// Empirical mean squared distance to theta* across independent channel
/// realisations, against the closed-form envelope.
struct EnvelopeReport {
  BoundParams params;
  CurvatureConstants constants;
  ParamVec theta_star;
  std::vector<double> empirical_mse{};  // k = 0..k_max
  std::vector<double> mse_stderr{};
  BoundSeries envelope{};

  bool dominance_ok = true;
  std::optional<std::uint64_t> first_dominance_violation{};
  double worst_ratio = 0.0;  // max_k mse / envelope

  bool recursion_ok = true;
  std::optional<std::uint64_t> first_recursion_violation{};

  // Informational: envelope nonincreasing from its peak to k_max.
  bool tail_decreasing = false;

  bool passed() const noexcept { return dominance_ok && recursion_ok; }
};

/// Runs `seeds` FedCOTA trajectories of k_max rounds from theta0, each with
/// an independent channel stream, under eta(k) = eta_c / sqrt(k+1).
///
/// Throws ConfigError("Assumption 3 violated ...") when eta_c > 1/L. theta*
/// is recomputed by centralized_fit with grad_tol 1e-10.
EnvelopeReport verify_envelope(std::span<const LossSpec> losses, const ConstraintSet& set,
                               double eta_c, const CoefficientDistribution& channel,
                               const ParamVec& theta0, const EnvelopeCheckOptions& opts);

/// Convenience wrapper taking its inputs from a prepared experiment.
EnvelopeReport verify_envelope(const PreparedExperiment& prepared, unsigned threads);

/// k,empirical_mse,envelope,product_term,series_term
void write_bound_report_csv(const std::filesystem::path& path, const EnvelopeReport& report);

}  // namespace ota

#endif  // OTA_VERIFY_HPP_
