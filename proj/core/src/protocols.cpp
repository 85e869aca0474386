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

#include "ota/protocols.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "ota/analysis.hpp"
#include "ota/errors.hpp"
#include "ota/parallel.hpp"

namespace ota {
namespace {

constexpr double kFeasibilityTol = 1e-9;

void check_round_inputs(const FedState& state, std::span<const LossSpec> losses,
                        const ConstraintSet& set) {
  if (losses.empty()) throw std::invalid_argument("round: no agents");
  for (const LossSpec& l : losses) {
    if (l.dim() != state.theta.dim()) {
      throw std::invalid_argument("round: loss dimension does not match theta");
    }
  }
  if (!contains(set, state.theta, kFeasibilityTol)) {
    throw std::invalid_argument("round: theta(k) is outside the constraint set");
  }
}

RoundTrace make_trace(std::uint64_t k, const ParamVec& theta, std::uint64_t slots,
                      std::span<const LossSpec> losses, const RoundOptions& opts,
                      std::vector<double> alphas) {
  RoundTrace t{k, theta, std::numeric_limits<double>::quiet_NaN(),
               global_loss(losses, theta), slots, std::move(alphas)};
  if (opts.reference != nullptr) {
    t.epsilon = epsilon_metric(theta, opts.reference->theta0, opts.reference->theta_d);
  }
  return t;
}

}  // namespace

StepSchedule StepSchedule::diminishing_sqrt(double eta_c) {
  if (!(eta_c > 0.0) || !std::isfinite(eta_c)) {
    throw std::invalid_argument("StepSchedule: eta_c must be positive");
  }
  return StepSchedule(Kind::kDiminishingSqrt, eta_c);
}

StepSchedule StepSchedule::constant(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("StepSchedule: eta must be positive");
  }
  return StepSchedule(Kind::kConstant, eta);
}

double StepSchedule::at(std::uint64_t k) const {
  if (kind_ == Kind::kConstant) return scale_;
  return scale_ / std::sqrt(static_cast<double>(k) + 1.0);
}

ParamVec server_update(const ParamVec& theta_rec, double rho_rec, const ConstraintSet& set) {
  if (!(rho_rec > 0.0)) {
    throw InvariantViolation("server_update: received rho must be positive");
  }
  return project(set, (1.0 / rho_rec) * theta_rec);
}

std::vector<ParamVec> local_updates(const FedState& state, std::span<const LossSpec> losses,
                                    const StepSchedule& sched, unsigned threads) {
  const double eta = sched.at(state.k);
  std::vector<std::optional<ParamVec>> slots(losses.size());
  parallel_for(losses.size(), threads, [&](std::size_t i) {
    ParamVec local = state.theta;
    local.axpy(-eta, loss_gradient(losses[i], state.theta));
    slots[i] = std::move(local);
  });
  std::vector<ParamVec> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

RoundResult fedcota_round(const FedState& state, std::span<const LossSpec> losses,
                          const StepSchedule& sched, const ConstraintSet& set,
                          const ChannelModel& channel, const RoundOptions& opts) {
  check_round_inputs(state, losses, set);
  const std::vector<ParamVec> local = local_updates(state, losses, sched, opts.threads);
  const std::vector<double> ones(losses.size(), 1.0);

  const FadingRound fading = channel.sample_round(losses.size(), state.k);
  const ParamVec theta_rec = superpose(local, fading);
  const double rho_rec = superpose_scalar(ones, fading);

  FedState next{state.k + 1, server_update(theta_rec, rho_rec, set), state.slots_used + 2};
  std::vector<double> audit(fading.alphas().begin(), fading.alphas().end());
  RoundTrace trace = make_trace(next.k, next.theta, next.slots_used, losses, opts,
                                std::move(audit));
  return {std::move(next), std::move(trace)};
}

RoundResult fedavg_round(const FedState& state, std::span<const LossSpec> losses,
                         const StepSchedule& sched, const ConstraintSet& set,
                         const RoundOptions& opts) {
  check_round_inputs(state, losses, set);
  const std::vector<ParamVec> local = local_updates(state, losses, sched, opts.threads);

  ParamVec sum = ParamVec::zeros(state.theta.dim());
  for (const ParamVec& v : local) sum += v;
  sum *= 1.0 / static_cast<double>(local.size());

  FedState next{state.k + 1, project(set, sum), state.slots_used + losses.size()};
  RoundTrace trace = make_trace(next.k, next.theta, next.slots_used, losses, opts, {});
  return {std::move(next), std::move(trace)};
}

FitResult centralized_fit(std::span<const LossSpec> losses, const StepSchedule& sched,
                          const ConstraintSet& set, const StopCriteria& stop) {
  if (stop.max_iters < 1 || !(stop.grad_tol > 0.0)) {
    throw std::invalid_argument("centralized_fit: need max_iters >= 1 and grad_tol > 0");
  }
  if (losses.empty()) throw std::invalid_argument("centralized_fit: no losses");

  ParamVec theta = project(set, ParamVec::zeros(losses.front().dim()));
  FitResult best{theta, false, 0, std::numeric_limits<double>::infinity()};

  for (std::uint64_t it = 0; it < stop.max_iters; ++it) {
    const double eta = sched.at(it);
    ParamVec step = theta;
    step.axpy(-eta, global_gradient(losses, theta));
    ParamVec next = project(set, step);
    const double stationarity = distance(theta, next) / eta;
    if (stationarity < best.stationarity) {
      best.theta = theta;
      best.stationarity = stationarity;
      best.iterations = it;
    }
    if (stationarity < stop.grad_tol) {
      best.converged = true;
      return best;
    }
    theta = std::move(next);
  }
  best.iterations = stop.max_iters;
  return best;
}

}  // namespace ota
