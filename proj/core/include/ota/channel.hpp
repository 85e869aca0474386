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

#ifndef OTA_CHANNEL_HPP_
#define OTA_CHANNEL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ota/geometry.hpp"

namespace ota {

struct UniformPositive {
  double lo;
  double hi;
};

struct Rayleigh {
  double scale;
};

struct LogNormal {
  double mu_log;
  double sigma_log;
};

using CoefficientDistribution = std::variant<UniformPositive, Rayleigh, LogNormal>;

std::string distribution_name(const CoefficientDistribution& dist);

/// Fading coefficients alpha_i(k) for one round. All entries are positive.
class FadingRound {
 public:
  // Throws InvariantViolation if alphas is empty or has a nonpositive or
  // non-finite entry.
  FadingRound(std::vector<double> alphas, std::uint64_t k);

  std::span<const double> alphas() const noexcept { return alphas_; }
  std::size_t size() const noexcept { return alphas_.size(); }
  std::uint64_t round() const noexcept { return k_; }

 private:
  std::vector<double> alphas_;
  std::uint64_t k_;
};

/// Wireless multiple-access channel with i.i.d. positive fading.
///
/// Each round draws from its own substream seeded by (seed, k), so
/// sample_round is a pure function of (seed, k, N): rounds can be replayed
/// individually and no engine state is shared between rounds.
class ChannelModel {
 public:
  // Throws ConfigError on parameters that cannot yield positive, finite
  // coefficients.
  ChannelModel(CoefficientDistribution dist, std::uint64_t seed);

  const CoefficientDistribution& distribution() const noexcept { return dist_; }
  std::uint64_t seed() const noexcept { return seed_; }

  FadingRound sample_round(std::size_t n_agents, std::uint64_t k) const;

  // Mean of the coefficient distribution.
  double mean() const;

 private:
  CoefficientDistribution dist_;
  std::uint64_t seed_;
};

/// Analog superposition sum_i alpha_i s_i, accumulated in agent-index order.
ParamVec superpose(std::span<const ParamVec> signals, const FadingRound& round);
double superpose_scalar(std::span<const double> values, const FadingRound& round);

/// h_i = alpha_i / sum_j alpha_j.
std::vector<double> normalized_weights(const FadingRound& round);

}  // namespace ota

#endif  // OTA_CHANNEL_HPP_
