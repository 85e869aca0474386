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
#include <numeric>
#include <stdexcept>

#include "ota/channel.hpp"
#include "ota/errors.hpp"

namespace ota {
namespace {

std::vector<CoefficientDistribution> all_distributions() {
  return {UniformPositive{0.5, 1.5}, Rayleigh{1.0}, LogNormal{0.0, 0.5}};
}

TEST(SampleRoundTest, DegenerateUniformGivesOnes) {
  const ChannelModel model(UniformPositive{1.0, 1.0}, 7);
  const FadingRound r = model.sample_round(4, 0);
  ASSERT_EQ(r.size(), 4u);
  for (double a : r.alphas()) EXPECT_EQ(a, 1.0);
}

TEST(SampleRoundTest, DeterministicPerRound) {
  for (const auto& dist : all_distributions()) {
    const ChannelModel model(dist, 42);
    const FadingRound a = model.sample_round(10, 17);
    const FadingRound b = model.sample_round(10, 17);
    const FadingRound c = model.sample_round(10, 18);
    EXPECT_TRUE(std::equal(a.alphas().begin(), a.alphas().end(), b.alphas().begin()));
    EXPECT_FALSE(std::equal(a.alphas().begin(), a.alphas().end(), c.alphas().begin()));
    EXPECT_EQ(a.round(), 17u);
  }
}

TEST(SampleRoundTest, SeedsGiveDifferentStreams) {
  const ChannelModel a(UniformPositive{0.5, 1.5}, 1);
  const ChannelModel b(UniformPositive{0.5, 1.5}, 2);
  EXPECT_NE(a.sample_round(3, 0).alphas()[0], b.sample_round(3, 0).alphas()[0]);
}

TEST(SampleRoundTest, UniformMeanWithinThreeSigma) {
  const ChannelModel model(UniformPositive{0.5, 1.5}, 2025);
  double sum = 0.0;
  const int rounds = 10000;
  for (int k = 0; k < rounds; ++k) {
    const FadingRound r = model.sample_round(10, static_cast<std::uint64_t>(k));
    for (double a : r.alphas()) sum += a;
  }
  const double mean = sum / (rounds * 10.0);
  const double sigma = (1.0 / std::sqrt(12.0)) / std::sqrt(1e5);
  EXPECT_LT(std::abs(mean - 1.0), 3.0 * sigma);
}

TEST(SampleRoundTest, MeansMatchClosedForms) {
  EXPECT_DOUBLE_EQ(ChannelModel(UniformPositive{0.5, 1.5}, 0).mean(), 1.0);
  EXPECT_NEAR(ChannelModel(Rayleigh{2.0}, 0).mean(), 2.0 * std::sqrt(M_PI / 2.0), 1e-14);
  EXPECT_NEAR(ChannelModel(LogNormal{0.1, 0.4}, 0).mean(), std::exp(0.1 + 0.08), 1e-14);
  for (const auto& dist : all_distributions()) {
    const ChannelModel model(dist, 3);
    double sum = 0.0;
    for (std::uint64_t k = 0; k < 20000; ++k) sum += model.sample_round(5, k).alphas()[2];
    EXPECT_NEAR(sum / 20000.0, model.mean(), 0.03 * model.mean()) << distribution_name(dist);
  }
}

TEST(SampleRoundTest, CoefficientsPositiveAndFinite) {
  for (const auto& dist : all_distributions()) {
    const ChannelModel model(dist, 9);
    for (std::uint64_t k = 0; k < 2000; ++k) {
      const FadingRound r = model.sample_round(10, k);
      for (double a : r.alphas()) {
        ASSERT_GT(a, 0.0);
        ASSERT_TRUE(std::isfinite(a));
      }
    }
  }
}

TEST(SampleRoundTest, InvalidParametersAreConfigErrors) {
  EXPECT_THROW(ChannelModel(UniformPositive{0.0, 1.0}, 0), ConfigError);
  EXPECT_THROW(ChannelModel(UniformPositive{1.5, 0.5}, 0), ConfigError);
  EXPECT_THROW(ChannelModel(Rayleigh{0.0}, 0), ConfigError);
  EXPECT_THROW(ChannelModel(Rayleigh{-1.0}, 0), ConfigError);
  EXPECT_THROW(ChannelModel(LogNormal{0.0, 0.0}, 0), ConfigError);
  EXPECT_THROW(ChannelModel(LogNormal{NAN, 1.0}, 0), ConfigError);
  EXPECT_THROW(ChannelModel(UniformPositive{1.0, 1.0}, 0).sample_round(0, 0), std::invalid_argument);
}

TEST(FadingRoundTest, RejectsNonpositiveCoefficients) {
  EXPECT_THROW(FadingRound({}, 0), InvariantViolation);
  EXPECT_THROW(FadingRound({1.0, 0.0}, 0), InvariantViolation);
  EXPECT_THROW(FadingRound({1.0, -2.0}, 0), InvariantViolation);
  EXPECT_THROW(FadingRound({INFINITY}, 0), InvariantViolation);
}

TEST(SuperposeTest, Examples) {
  const std::vector<ParamVec> basis = {ParamVec{1.0, 0.0}, ParamVec{0.0, 1.0}};
  EXPECT_EQ(superpose(basis, FadingRound({1.0, 1.0}, 0)), (ParamVec{1.0, 1.0}));
  EXPECT_EQ(superpose(basis, FadingRound({2.0, 3.0}, 0)), (ParamVec{2.0, 3.0}));
  const std::vector<ParamVec> single = {ParamVec{1.5, -2.0, 4.0}};
  EXPECT_EQ(superpose(single, FadingRound({0.25}, 0)), (ParamVec{0.375, -0.5, 1.0}));
}

TEST(SuperposeTest, ScalarExamples) {
  const std::vector<double> ones2(2, 1.0);
  EXPECT_DOUBLE_EQ(superpose_scalar(ones2, FadingRound({0.5, 1.5}, 0)), 2.0);
  const std::vector<double> one(1, 1.0);
  EXPECT_DOUBLE_EQ(superpose_scalar(one, FadingRound({0.7}, 0)), 0.7);
  const ChannelModel model(Rayleigh{1.0}, 5);
  const FadingRound r = model.sample_round(6, 3);
  const std::vector<double> ones6(6, 1.0);
  EXPECT_DOUBLE_EQ(superpose_scalar(ones6, r),
                   std::accumulate(r.alphas().begin(), r.alphas().end(), 0.0));
}

TEST(SuperposeTest, MismatchedShapesThrow) {
  const std::vector<ParamVec> two = {ParamVec{1.0}, ParamVec{2.0}};
  EXPECT_THROW(superpose(two, FadingRound({1.0}, 0)), std::invalid_argument);
  const std::vector<ParamVec> ragged = {ParamVec{1.0}, ParamVec{2.0, 3.0}};
  EXPECT_THROW(superpose(ragged, FadingRound({1.0, 1.0}, 0)), std::invalid_argument);
  const std::vector<double> vals(3, 1.0);
  EXPECT_THROW(superpose_scalar(vals, FadingRound({1.0}, 0)), std::invalid_argument);
}

TEST(NormalizedWeightsTest, Examples) {
  const auto eq = normalized_weights(FadingRound({1.0, 1.0, 1.0, 1.0}, 0));
  for (double h : eq) EXPECT_EQ(h, 0.25);
  const auto w = normalized_weights(FadingRound({2.0, 1.0, 1.0}, 0));
  EXPECT_EQ(w, (std::vector<double>{0.5, 0.25, 0.25}));
}

TEST(NormalizedWeightsTest, SumToOneAndUnbiased) {
  const std::size_t n = 10;
  const std::uint64_t rounds = 100000;
  for (const auto& dist : all_distributions()) {
    const ChannelModel model(dist, 77);
    std::vector<double> sums(n, 0.0);
    std::vector<double> sq(n, 0.0);
    for (std::uint64_t k = 0; k < rounds; ++k) {
      const auto h = normalized_weights(model.sample_round(n, k));
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        ASSERT_GT(h[i], 0.0);
        total += h[i];
        sums[i] += h[i];
        sq[i] += h[i] * h[i];
      }
      ASSERT_NEAR(total, 1.0, 1e-12);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double mean = sums[i] / rounds;
      const double var = sq[i] / rounds - mean * mean;
      const double se = std::sqrt(var / rounds);
      EXPECT_LT(std::abs(mean - 0.1), 5.0 * se) << distribution_name(dist) << " i=" << i;
      EXPECT_LT(std::abs(mean - 0.1), 0.005);
    }
  }
}

TEST(NormalizedWeightsTest, ScaleInvariant) {
  const ChannelModel model(LogNormal{0.0, 1.0}, 8);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const FadingRound r = model.sample_round(7, k);
    const auto h = normalized_weights(r);
    for (double c : {1e-3, 0.5, 3.0, 1e4}) {
      std::vector<double> scaled(r.alphas().begin(), r.alphas().end());
      for (double& a : scaled) a *= c;
      const auto hs = normalized_weights(FadingRound(scaled, k));
      for (std::size_t i = 0; i < h.size(); ++i) ASSERT_NEAR(hs[i], h[i], 1e-12);
    }
  }
}

TEST(NormalizedWeightsTest, RatioOfSuperpositionsIsWeightedMean) {
  const ChannelModel model(Rayleigh{0.8}, 12);
  Rng rng(4);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const FadingRound r = model.sample_round(5, k);
    std::vector<ParamVec> s;
    for (int i = 0; i < 5; ++i) s.push_back(ParamVec{standard_normal(rng), standard_normal(rng)});
    const std::vector<double> ones(5, 1.0);
    ParamVec ratio = superpose(s, r);
    ratio *= 1.0 / superpose_scalar(ones, r);
    const auto h = normalized_weights(r);
    ParamVec expected = ParamVec::zeros(2);
    for (int i = 0; i < 5; ++i) expected.axpy(h[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i)]);
    ASSERT_LT(distance(ratio, expected), 1e-12);
  }
}

}  // namespace
}  // namespace ota
