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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "ota/errors.hpp"
#include "ota/protocols.hpp"
#include "test_util.hpp"

namespace ota {
namespace {

using testing::four_sample_fixture;
using testing::random_vec;

std::vector<LossSpec> quadratics(const std::vector<ParamVec>& targets) {
  std::vector<LossSpec> out;
  for (const auto& b : targets) out.push_back(LossSpec::quadratic(b));
  return out;
}

TEST(StepScheduleTest, DiminishingSqrt) {
  const auto s = StepSchedule::diminishing_sqrt(2.0);
  EXPECT_DOUBLE_EQ(s.at(0), 2.0);
  EXPECT_DOUBLE_EQ(s.at(3), 1.0);
  EXPECT_LT(s.at(100), s.at(99));
  EXPECT_DOUBLE_EQ(StepSchedule::constant(0.3).at(1000), 0.3);
  EXPECT_THROW(StepSchedule::diminishing_sqrt(0.0), std::invalid_argument);
  EXPECT_THROW(StepSchedule::constant(-1.0), std::invalid_argument);
}

TEST(FedCotaRoundTest, SingleAgentFixedPoint) {
  const ParamVec b{0.5, -1.0};
  const auto losses = quadratics({b});
  const ChannelModel channel(Rayleigh{1.0}, 3);
  const FedState s0{0, b, 0};
  const auto r = fedcota_round(s0, losses, StepSchedule::diminishing_sqrt(1.0),
                               ConstraintSet::ball(5.0), channel);
  EXPECT_LT(distance(r.state.theta, b), 1e-15);
  EXPECT_EQ(r.state.k, 1u);
  EXPECT_EQ(r.state.slots_used, 2u);
}

TEST(FedCotaRoundTest, DegenerateTwoAgentAverage) {
  const ParamVec b1{1.0, 2.0}, b2{3.0, -2.0};
  const auto losses = quadratics({b1, b2});
  const ChannelModel channel(UniformPositive{1.0, 1.0}, 0);
  const ParamVec theta0{-1.0, 0.5};
  const auto sched = StepSchedule::diminishing_sqrt(0.5);
  const auto set = ConstraintSet::ball(10.0);
  const auto r = fedcota_round(FedState{0, theta0, 0}, losses, sched, set, channel);
  const ParamVec expected = project(set, theta0 - sched.at(0) * (theta0 - 0.5 * (b1 + b2)));
  EXPECT_LT(distance(r.state.theta, expected), 1e-15);
}

// Step-by-step recomputation with the recorded coefficients.
TEST(FedCotaRoundTest, MatchesHandRolledRound) {
  Rng rng(21);
  const double radius = 2.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ParamVec> targets;
    for (int i = 0; i < 3; ++i) targets.push_back(random_vec(rng, 3, 2.0));
    const auto losses = quadratics(targets);
    const ChannelModel channel(LogNormal{0.0, 0.7}, static_cast<std::uint64_t>(trial));
    const auto sched = StepSchedule::diminishing_sqrt(0.9);
    const auto set = ConstraintSet::ball(radius);
    const std::uint64_t k = uniform_index(rng, 50);
    const ParamVec theta = project(set, random_vec(rng, 3, 1.5));
    const auto r = fedcota_round(FedState{k, theta, 2 * k}, losses, sched, set, channel);

    const double eta = 0.9 / std::sqrt(static_cast<double>(k) + 1.0);
    double num[3] = {0.0, 0.0, 0.0};
    double den = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double a = r.trace.alphas[static_cast<std::size_t>(i)];
      for (int j = 0; j < 3; ++j) {
        const double local = theta[j] - eta * (theta[j] - targets[static_cast<std::size_t>(i)][j]);
        num[j] += a * local;
      }
      den += a;
    }
    double q[3], qn = 0.0;
    for (int j = 0; j < 3; ++j) {
      q[j] = num[j] / den;
      qn += q[j] * q[j];
    }
    qn = std::sqrt(qn);
    const double scale = qn > radius ? radius / qn : 1.0;
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(r.state.theta[j], q[j] * scale, 1e-13);
    const FadingRound expected = channel.sample_round(3, k);
    EXPECT_TRUE(std::equal(expected.alphas().begin(), expected.alphas().end(),
                           r.trace.alphas.begin()));
  }
}

TEST(FedCotaRoundTest, RejectsInfeasibleState) {
  const auto losses = quadratics({ParamVec{0.0, 0.0}});
  const ChannelModel channel(UniformPositive{1.0, 1.0}, 0);
  EXPECT_THROW(fedcota_round(FedState{0, ParamVec{3.0, 0.0}, 0}, losses,
                             StepSchedule::constant(0.1), ConstraintSet::ball(1.0), channel),
               std::invalid_argument);
  EXPECT_THROW(fedcota_round(FedState{0, ParamVec{0.0, 0.0, 0.0}, 0}, losses,
                             StepSchedule::constant(0.1), ConstraintSet::ball(1.0), channel),
               std::invalid_argument);
}

TEST(ServerUpdateTest, RatioThenProjection) {
  const auto set = ConstraintSet::ball(1.0);
  EXPECT_EQ(server_update(ParamVec{0.5, 0.0}, 2.0, set), (ParamVec{0.25, 0.0}));
  EXPECT_EQ(server_update(ParamVec{8.0, 0.0}, 2.0, set), (ParamVec{1.0, 0.0}));
  EXPECT_THROW(server_update(ParamVec{1.0}, 0.0, set), InvariantViolation);
  EXPECT_THROW(server_update(ParamVec{1.0}, -1.0, set), InvariantViolation);
}

TEST(ServerUpdateTest, RatioLiesInHullBoundingBox) {
  Rng rng(8);
  const ChannelModel channel(Rayleigh{1.0}, 44);
  const auto big = ConstraintSet::ball(1e6);
  for (std::uint64_t k = 0; k < 500; ++k) {
    std::vector<ParamVec> locals;
    for (int i = 0; i < 6; ++i) locals.push_back(random_vec(rng, 4, 3.0));
    const FadingRound round = channel.sample_round(6, k);
    const std::vector<double> ones(6, 1.0);
    const ParamVec q = server_update(superpose(locals, round), superpose_scalar(ones, round), big);
    for (std::size_t j = 0; j < 4; ++j) {
      double lo = INFINITY, hi = -INFINITY;
      for (const auto& v : locals) {
        lo = std::min(lo, v[j]);
        hi = std::max(hi, v[j]);
      }
      ASSERT_GE(q[j], lo - 1e-12);
      ASSERT_LE(q[j], hi + 1e-12);
    }
  }
}

TEST(FedAvgRoundTest, IdenticalLossesMatchProjectedGradientDescent) {
  const auto spec = LossSpec::logistic(1e-3, four_sample_fixture());
  const std::vector<LossSpec> losses(4, spec);
  const auto sched = StepSchedule::diminishing_sqrt(1.0);
  const auto set = ConstraintSet::ball(0.5);
  FedState state{0, ParamVec{0.3, -0.2, 0.1}, 0};
  ParamVec single = state.theta;
  for (std::uint64_t k = 0; k < 50; ++k) {
    state = fedavg_round(state, losses, sched, set).state;
    single = project(set, single - sched.at(k) * loss_gradient(spec, single));
    ASSERT_LT(distance(state.theta, single), 1e-14);
  }
  EXPECT_EQ(state.slots_used, 200u);
}

TEST(FedAvgRoundTest, DegenerateChannelEquivalence) {
  Rng rng(3);
  std::vector<ParamVec> targets;
  for (int i = 0; i < 7; ++i) targets.push_back(random_vec(rng, 2, 4.0));
  const auto losses = quadratics(targets);
  const auto sched = StepSchedule::diminishing_sqrt(0.8);
  const auto set = ConstraintSet::box(ParamVec{-1.0, -2.0}, ParamVec{1.0, 0.5});
  const ChannelModel channel(UniformPositive{2.5, 2.5}, 0);
  FedState a{0, ParamVec{0.9, -1.9}, 0};
  FedState b = a;
  for (int k = 0; k < 200; ++k) {
    a = fedcota_round(a, losses, sched, set, channel).state;
    b = fedavg_round(b, losses, sched, set).state;
    ASSERT_LT(distance(a.theta, b.theta), 1e-10) << "round " << k;
  }
}

TEST(SlotAccountingTest, TwoVersusN) {
  std::vector<ParamVec> targets(10, ParamVec{0.1, 0.2});
  const auto losses = quadratics(targets);
  const auto sched = StepSchedule::diminishing_sqrt(1.0);
  const auto set = ConstraintSet::ball(1.0);
  const ChannelModel channel(UniformPositive{0.5, 1.5}, 1);
  FedState a{0, ParamVec{0.0, 0.0}, 0};
  FedState b = a;
  for (int k = 0; k < 100; ++k) {
    a = fedcota_round(a, losses, sched, set, channel).state;
    b = fedavg_round(b, losses, sched, set).state;
    ASSERT_EQ(a.slots_used, 2u * a.k);
    ASSERT_EQ(b.slots_used, 10u * b.k);
  }
  EXPECT_EQ(a.slots_used, 200u);
  EXPECT_EQ(b.slots_used, 1000u);
}

TEST(FeasibilityTest, IteratesStayInTheSet) {
  Rng rng(17);
  std::vector<ParamVec> targets;
  for (int i = 0; i < 5; ++i) targets.push_back(random_vec(rng, 3, 10.0));
  const auto losses = quadratics(targets);
  const auto sched = StepSchedule::diminishing_sqrt(1.0);
  const ChannelModel channel(LogNormal{0.0, 1.5}, 6);
  for (const auto& set : {ConstraintSet::ball(1.0),
                          ConstraintSet::box(ParamVec{0.0, 0.0, 0.0}, ParamVec{1.0, 2.0, 0.5})}) {
    FedState a{0, project(set, ParamVec{0.2, 0.2, 0.2}), 0};
    FedState b = a;
    for (int k = 0; k < 100; ++k) {
      a = fedcota_round(a, losses, sched, set, channel).state;
      b = fedavg_round(b, losses, sched, set).state;
      ASSERT_TRUE(contains(set, a.theta, 1e-12));
      ASSERT_TRUE(contains(set, b.theta, 1e-12));
    }
  }
}

TEST(TraceTest, EpsilonNeedsReference) {
  const auto losses = quadratics({ParamVec{1.0}, ParamVec{3.0}});
  const auto sched = StepSchedule::constant(0.5);
  const auto set = ConstraintSet::ball(10.0);
  const auto r = fedavg_round(FedState{0, ParamVec{0.0}, 0}, losses, sched, set);
  EXPECT_TRUE(std::isnan(r.trace.epsilon));
  EXPECT_DOUBLE_EQ(r.trace.global_loss, global_loss(losses, r.state.theta));
  const EpsilonReference ref{ParamVec{0.0}, ParamVec{2.0}};
  RoundOptions opts;
  opts.reference = &ref;
  const auto r2 = fedavg_round(FedState{0, ParamVec{0.0}, 0}, losses, sched, set, opts);
  // theta(1) = 1, so the distance to theta_d halves.
  EXPECT_NEAR(r2.trace.epsilon, std::log10(0.5), 1e-15);
}

TEST(CentralizedFitTest, InteriorQuadraticOptimumIsMean) {
  const auto losses = quadratics({ParamVec{1.0, 2.0}, ParamVec{3.0, 0.0}, ParamVec{-1.0, 1.0}});
  const auto fit = centralized_fit(losses, StepSchedule::constant(1.0), ConstraintSet::ball(10.0),
                                   StopCriteria{1000, 1e-12});
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.theta[0], 1.0, 1e-12);
  EXPECT_NEAR(fit.theta[1], 1.0, 1e-12);
}

TEST(CentralizedFitTest, ExteriorMeanProjectsToSurface) {
  const auto losses = quadratics({ParamVec{6.0, 8.0}, ParamVec{6.0, 8.0}});
  const auto fit = centralized_fit(losses, StepSchedule::constant(0.5), ConstraintSet::ball(5.0),
                                   StopCriteria{10000, 1e-12});
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.theta[0], 3.0, 1e-10);
  EXPECT_NEAR(fit.theta[1], 4.0, 1e-10);
}

TEST(CentralizedFitTest, LogisticStationarityCertifiedPostHoc) {
  Rng rng(70);
  std::vector<LossSpec> losses;
  for (int i = 0; i < 3; ++i) {
    losses.push_back(LossSpec::logistic(1e-2, testing::random_dataset(rng, 30, 3, 1.0)));
  }
  std::vector<CurvatureConstants> cs;
  for (const auto& l : losses) cs.push_back(estimate_constants(l, ConstraintSet::ball(15.0)));
  const double lip = aggregate_constants(cs).lip;
  const double tol = 1e-9;
  const auto fit = centralized_fit(losses, StepSchedule::constant(1.0 / lip),
                                   ConstraintSet::ball(15.0), StopCriteria{200000, tol});
  ASSERT_TRUE(fit.converged);
  EXPECT_LT(norm(global_gradient(losses, fit.theta)), tol);
}

TEST(CentralizedFitTest, NonConvergenceReturnsFlag) {
  const auto losses = quadratics({ParamVec{1.0, 2.0}});
  const auto fit = centralized_fit(losses, StepSchedule::constant(0.01), ConstraintSet::ball(10.0),
                                   StopCriteria{3, 1e-12});
  EXPECT_FALSE(fit.converged);
  EXPECT_EQ(fit.iterations, 3u);
  EXPECT_THROW(centralized_fit(losses, StepSchedule::constant(0.1), ConstraintSet::ball(1.0),
                               StopCriteria{0, 1e-3}),
               std::invalid_argument);
}

}  // namespace
}  // namespace ota
