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

#ifndef OTA_PROTOCOLS_HPP_
#define OTA_PROTOCOLS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ota/channel.hpp"
#include "ota/geometry.hpp"
#include "ota/losses.hpp"

namespace ota {

/// Server step sizes eta(k).
class StepSchedule {
 public:
  enum class Kind { kDiminishingSqrt, kConstant };

  // eta(k) = eta_c / sqrt(k + 1)
  static StepSchedule diminishing_sqrt(double eta_c);
  static StepSchedule constant(double eta);

  Kind kind() const noexcept { return kind_; }
  // eta_c for diminishing schedules, eta for constant ones.
  double scale() const noexcept { return scale_; }
  double at(std::uint64_t k) const;

 private:
  StepSchedule(Kind kind, double scale) : kind_(kind), scale_(scale) {}

  Kind kind_;
  double scale_;
};

struct FedState {
  std::uint64_t k = 0;
  ParamVec theta;
  std::uint64_t slots_used = 0;
};

struct RoundTrace {
  std::uint64_t k = 0;
  ParamVec theta_after;
  double epsilon = 0.0;
  double global_loss = 0.0;
  std::uint64_t slots_used = 0;
  // Audit only; the server update never sees these.
  std::vector<double> alphas;
};

/// Reference points for the epsilon metric.
struct EpsilonReference {
  ParamVec theta0;
  ParamVec theta_d;
};

struct RoundOptions {
  // When null, RoundTrace::epsilon is NaN.
  const EpsilonReference* reference = nullptr;
  unsigned threads = 1;
};

struct RoundResult {
  FedState state;
  RoundTrace trace;
};

/// Server side of FedCOTA: P(theta_rec / rho_rec). Takes only what the
/// receiver observes; individual coefficients and local iterates cannot
/// reach this function. Throws InvariantViolation when rho_rec <= 0.
ParamVec server_update(const ParamVec& theta_rec, double rho_rec, const ConstraintSet& set);

/// theta_i(k) = theta(k) - eta(k) grad f_i(theta(k)) for every agent, in
/// agent-index order. Gradients may be evaluated on several workers.
std::vector<ParamVec> local_updates(const FedState& state, std::span<const LossSpec> losses,
                                    const StepSchedule& sched, unsigned threads = 1);

/// One FedCOTA round: local updates, two superposed uplink transmissions
/// (parameters, then the constant 1) through one fading realisation, and the
/// projected ratio at the server. Costs 2 slots.
RoundResult fedcota_round(const FedState& state, std::span<const LossSpec> losses,
                          const StepSchedule& sched, const ConstraintSet& set,
                          const ChannelModel& channel, const RoundOptions& opts = {});

/// One TDMA FedAVG round: each agent uses its own slot, the server projects
/// the plain mean. Costs N slots.
RoundResult fedavg_round(const FedState& state, std::span<const LossSpec> losses,
                         const StepSchedule& sched, const ConstraintSet& set,
                         const RoundOptions& opts = {});

struct StopCriteria {
  std::uint64_t max_iters = 100000;
  double grad_tol = 1e-10;
};

struct FitResult {
  ParamVec theta;
  bool converged = false;
  std::uint64_t iterations = 0;
  // Norm of the projected-gradient mapping at theta; equals ||grad L|| at
  // interior points.
  double stationarity = 0.0;
};

/// Projected gradient descent on the global loss with full data access.
/// Stops once the projected-gradient mapping norm drops below grad_tol. On
/// hitting max_iters returns the best iterate seen with converged = false.
FitResult centralized_fit(std::span<const LossSpec> losses, const StepSchedule& sched,
                          const ConstraintSet& set, const StopCriteria& stop);

}  // namespace ota

#endif  // OTA_PROTOCOLS_HPP_
