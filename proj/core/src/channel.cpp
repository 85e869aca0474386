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

#include "ota/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ota/errors.hpp"
#include "ota/random.hpp"

namespace ota {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void validate(const CoefficientDistribution& dist) {
  std::visit(Overloaded{
                 [](const UniformPositive& u) {
                   if (!(u.lo > 0.0) || !(u.hi >= u.lo) || !std::isfinite(u.hi)) {
                     throw ConfigError("channel uniform: require 0 < lo <= hi < inf");
                   }
                 },
                 [](const Rayleigh& r) {
                   if (!(r.scale > 0.0) || !std::isfinite(r.scale)) {
                     throw ConfigError("channel rayleigh: scale must be positive and finite");
                   }
                 },
                 [](const LogNormal& l) {
                   if (!std::isfinite(l.mu_log) || !(l.sigma_log > 0.0) ||
                       !std::isfinite(l.sigma_log)) {
                     throw ConfigError(
                         "channel lognormal: mu_log must be finite and sigma_log positive");
                   }
                 },
             },
             dist);
}

}  // namespace

std::string distribution_name(const CoefficientDistribution& dist) {
  return std::visit(Overloaded{
                        [](const UniformPositive&) { return std::string("uniform"); },
                        [](const Rayleigh&) { return std::string("rayleigh"); },
                        [](const LogNormal&) { return std::string("lognormal"); },
                    },
                    dist);
}

FadingRound::FadingRound(std::vector<double> alphas, std::uint64_t k)
    : alphas_(std::move(alphas)), k_(k) {
  if (alphas_.empty()) throw InvariantViolation("FadingRound: no coefficients");
  for (double a : alphas_) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw InvariantViolation("FadingRound: coefficients must be positive and finite");
    }
  }
}

ChannelModel::ChannelModel(CoefficientDistribution dist, std::uint64_t seed)
    : dist_(dist), seed_(seed) {
  validate(dist_);
}

FadingRound ChannelModel::sample_round(std::size_t n_agents, std::uint64_t k) const {
  if (n_agents == 0) throw std::invalid_argument("sample_round: N must be >= 1");
  Rng rng(derive_seed(seed_, stream::kChannelRound, k));
  std::vector<double> alphas(n_agents);
  for (double& a : alphas) {
    a = std::visit(Overloaded{
                       [&](const UniformPositive& u) {
                         return u.lo + (u.hi - u.lo) * uniform_open01(rng);
                       },
                       [&](const Rayleigh& r) {
                         // Inverse CDF; u in (0,1) keeps the draw strictly positive.
                         return r.scale * std::sqrt(-2.0 * std::log(uniform_open01(rng)));
                       },
                       [&](const LogNormal& l) {
                         return std::exp(l.mu_log + l.sigma_log * standard_normal(rng));
                       },
                   },
                   dist_);
  }
  return FadingRound(std::move(alphas), k);
}

double ChannelModel::mean() const {
  return std::visit(Overloaded{
                        [](const UniformPositive& u) { return 0.5 * (u.lo + u.hi); },
                        [](const Rayleigh& r) {
                          return r.scale * std::sqrt(std::numbers::pi / 2.0);
                        },
                        [](const LogNormal& l) {
                          return std::exp(l.mu_log + 0.5 * l.sigma_log * l.sigma_log);
                        },
                    },
                    dist_);
}

ParamVec superpose(std::span<const ParamVec> signals, const FadingRound& round) {
  if (signals.size() != round.size()) {
    throw std::invalid_argument("superpose: " + std::to_string(signals.size()) +
                                " signals for " + std::to_string(round.size()) +
                                " coefficients");
  }
  const auto alphas = round.alphas();
  ParamVec acc = ParamVec::zeros(signals.front().dim());
  for (std::size_t i = 0; i < signals.size(); ++i) acc.axpy(alphas[i], signals[i]);
  return acc;
}

double superpose_scalar(std::span<const double> values, const FadingRound& round) {
  if (values.size() != round.size()) {
    throw std::invalid_argument("superpose_scalar: length mismatch");
  }
  const auto alphas = round.alphas();
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += alphas[i] * values[i];
  return acc;
}

std::vector<double> normalized_weights(const FadingRound& round) {
  const auto alphas = round.alphas();
  double total = 0.0;
  for (double a : alphas) total += a;
  std::vector<double> h(alphas.begin(), alphas.end());
  for (double& x : h) x /= total;
  return h;
}

}  // namespace ota
