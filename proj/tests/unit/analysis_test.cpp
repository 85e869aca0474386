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

#include "ota/analysis.hpp"
#include "test_util.hpp"

namespace ota {
namespace {

using testing::rel_err;

BoundParams params(double eta_c, double mu, double m = 1.0, double e0 = 1.0) {
  return BoundParams{eta_c, mu, m, e0};
}

TEST(EpsilonMetricTest, Examples) {
  const ParamVec d{1.0, 1.0};
  const ParamVec t0{1.0, 3.0};
  EXPECT_EQ(epsilon_metric(t0, t0, d), 0.0);
  EXPECT_NEAR(epsilon_metric(ParamVec{1.0, 1.2}, t0, d), -1.0, 1e-14);
  EXPECT_NEAR(epsilon_metric(ParamVec{21.0, 1.0}, t0, d), 1.0, 1e-14);
  EXPECT_EQ(epsilon_metric(d, t0, d), kEpsilonFloor);
  EXPECT_THROW(epsilon_metric(t0, d, d), std::invalid_argument);
}

TEST(EpsilonMetricTest, StrictlyIncreasingInDistance) {
  const ParamVec d{0.0, 0.0};
  const ParamVec t0{1.0, 0.0};
  double prev = -INFINITY;
  for (double r = 1e-6; r < 1e3; r *= 1.7) {
    const double e = epsilon_metric(ParamVec{0.0, r}, t0, d);
    ASSERT_GT(e, prev);
    prev = e;
  }
}

TEST(ContractionTest, Examples) {
  EXPECT_DOUBLE_EQ(contraction(0, params(1.0, 0.5)), 0.5);
  EXPECT_DOUBLE_EQ(contraction(3, params(1.0, 0.5)), 0.75);
  EXPECT_EQ(contraction(0, params(2.0, 0.5)), 0.0);
  EXPECT_GT(contraction(1, params(2.0, 0.5)), 0.0);
}

TEST(BoundParamsTest, Validation) {
  EXPECT_NO_THROW(params(1.0, 1.0).validate());
  EXPECT_THROW(params(1.0, 1.5).validate(), std::invalid_argument);
  EXPECT_THROW(params(0.0, 0.5).validate(), std::invalid_argument);
  EXPECT_THROW(params(1.0, 0.0).validate(), std::invalid_argument);
  EXPECT_THROW(params(1.0, 0.5, -1.0).validate(), std::invalid_argument);
  EXPECT_THROW(params(1.0, 0.5, 1.0, -1.0).validate(), std::invalid_argument);
}

TEST(PowerDecayTest, EmptyPowerAtZero) {
  const auto c = check_lemma4(params(1.0, 1.0), 5);
  EXPECT_EQ(c.rows.front().value, 1.0);
  EXPECT_EQ(c.rows.front().bound, 1.0);
  EXPECT_TRUE(c.holds);
}

TEST(PowerDecayTest, LargeRoundInLogSpace) {
  const auto c = check_lemma4(params(1.0, 0.5), 10000);
  ASSERT_TRUE(c.holds);
  const auto& row = c.rows.back();
  EXPECT_EQ(row.k, 10000u);
  const double expected_log_bound = -0.5 * 1e4 / std::sqrt(1e4 + 1.0);
  EXPECT_NEAR(row.log_bound, expected_log_bound, 1e-12);
  EXPECT_LT(row.bound, 1e-21);
  EXPECT_LE(row.log_value, row.log_bound);
  // Independent evaluation: k * log1p(-Q / sqrt(k+1)).
  EXPECT_NEAR(row.log_value, 1e4 * std::log1p(-0.5 / std::sqrt(1e4 + 1.0)), 1e-9);
}

TEST(PowerDecayTest, LogAndDirectAgreeForSmallK) {
  for (double q : {0.1, 0.5, 1.0}) {
    const auto c = check_lemma4(params(q, 1.0), 50);
    EXPECT_TRUE(c.direct_consistent);
    for (const auto& row : c.rows) {
      double direct = 1.0;
      for (std::uint64_t i = 0; i < row.k; ++i) direct *= 1.0 - q / std::sqrt(row.k + 1.0);
      if (direct > 0.0) {
        EXPECT_LT(rel_err(row.value, direct), 1e-12) << "Q=" << q << " k=" << row.k;
      }
    }
  }
}

TEST(ProductDecayTest, ZeroFirstFactorCollapses) {
  const auto c = check_lemma5(params(2.0, 0.5), 1e-9, 100);
  ASSERT_TRUE(c.first_below.has_value());
  EXPECT_EQ(*c.first_below, 0u);
  EXPECT_TRUE(c.bound_holds);
  EXPECT_TRUE(c.nonincreasing);
}

TEST(ProductDecayTest, MatchesBruteForceProduct) {
  double prod = 1.0;
  std::uint64_t first = 0;
  for (std::uint64_t k = 0;; ++k) {
    prod *= 1.0 - 0.5 / std::sqrt(static_cast<double>(k) + 1.0);
    if (prod < 1e-3) {
      first = k;
      break;
    }
  }
  const auto c = check_lemma5(params(1.0, 0.5), 1e-3, 10000);
  ASSERT_TRUE(c.first_below.has_value());
  EXPECT_EQ(*c.first_below, first);
  EXPECT_TRUE(c.bound_holds);
  EXPECT_TRUE(c.nonincreasing);
  EXPECT_NEAR(std::exp(c.log_products[first]), prod, 1e-12 * prod);
}

TEST(ProductDecayTest, NotReachedWithinHorizon) {
  const auto c = check_lemma5(params(0.01, 0.1), 1e-3, 10);
  EXPECT_FALSE(c.first_below.has_value());
  EXPECT_THROW(check_lemma5(params(1.0, 0.5), 1.5, 10), std::invalid_argument);
}

TEST(AppendixSeriesTest, TwoTermExpansion) {
  const auto p = params(1.0, 0.5);
  const double eta0 = 1.0, eta1 = 1.0 / std::sqrt(2.0);
  const double c1 = 1.0 - 0.5 * eta1;
  const auto s = appendix_series(p, 2);
  EXPECT_NEAR(s.exact, c1 * eta0 * eta0 + eta1 * eta1, 1e-15);
  EXPECT_LE(s.exact, s.loose_bound);
}

TEST(AppendixSeriesTest, NestedProductMatchesRecursion) {
  for (const auto& p : {params(1.0, 0.5), params(0.3, 2.0), params(1.0, 1.0)}) {
    for (std::uint64_t k : {1u, 2u, 3u, 10u, 137u, 500u, 1000u}) {
      const auto s = appendix_series(p, k);
      EXPECT_LT(rel_err(s.exact, appendix_series_recursive(p, k)), 1e-10) << "k=" << k;
      EXPECT_LE(s.exact, s.loose_bound * (1.0 + 1e-12));
    }
  }
}

// Direct O(k^2) evaluation for moderate k.
TEST(AppendixSeriesTest, MatchesDirectDoubleSum) {
  const auto p = params(0.8, 0.7);
  const std::uint64_t k = 60;
  double sum = 0.0;
  for (std::uint64_t t = 0; t + 1 < k; ++t) {
    double prod = 1.0;
    for (std::uint64_t l = t + 1; l < k; ++l) prod *= 1.0 - 0.7 * 0.8 / std::sqrt(l + 1.0);
    sum += prod * 0.64 / (t + 1.0);
  }
  sum += 0.64 / static_cast<double>(k);
  EXPECT_LT(rel_err(appendix_series(p, k).exact, sum), 1e-12);
}

TEST(AppendixSeriesTest, DoublingDecreases) {
  const auto p = params(1.0, 0.5);
  EXPECT_LT(appendix_series(p, 2000).exact, appendix_series(p, 1000).exact);
}

TEST(AppendixSeriesTest, TailBoundAtLargeK) {
  const auto p = params(1.0, 0.5);
  const double series = appendix_series(p, 10000).exact;
  const double bound = appendix_tail_bound(p, 10000, 1000);
  EXPECT_LT(series, bound);
  // The first term is eta(k0) / mu.
  EXPECT_GE(bound, (1.0 / std::sqrt(1001.0)) / 0.5);
}

TEST(ErrorEnvelopeTest, OneStep) {
  const auto p = params(1.0, 0.5, 2.0, 3.0);
  const auto b = error_envelope(p, 1);
  EXPECT_DOUBLE_EQ(b.envelope[0], 3.0);
  EXPECT_NEAR(b.envelope[1], 0.5 * 3.0 + 4.0 * 1.0, 1e-14);
}

TEST(ErrorEnvelopeTest, ZeroGradientBoundIsPureProduct) {
  const auto p = params(1.0, 0.5, 0.0, 2.0);
  const auto b = error_envelope(p, 3000);
  for (std::uint64_t k = 0; k <= 3000; ++k) {
    ASSERT_NEAR(b.envelope[k], 2.0 * b.product_terms[k], 1e-300);
  }
  EXPECT_LT(b.envelope.back(), 1e-20);
}

TEST(ErrorEnvelopeTest, ClosedFormMatchesRecursion) {
  for (const auto& p : {params(1.0, 0.5, 3.0, 7.0), params(1.0, 1.0, 20.0, 400.0),
                        params(0.2, 0.9, 0.5, 1.0)}) {
    const auto b = error_envelope(p, 1000);
    const auto r = envelope_recursive(p, 1000);
    ASSERT_EQ(b.envelope.size(), 1001u);
    for (std::uint64_t k = 0; k <= 1000; ++k) {
      ASSERT_LT(rel_err(b.envelope[k], r[k]), 1e-10) << "k=" << k;
      ASSERT_GE(b.series_terms[k], 0.0);
      if (k > 0) ASSERT_LE(b.product_terms[k], b.product_terms[k - 1]);
    }
  }
}

}  // namespace
}  // namespace ota
