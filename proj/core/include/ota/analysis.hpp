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

#ifndef OTA_ANALYSIS_HPP_
#define OTA_ANALYSIS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ota/geometry.hpp"

namespace ota {

/// Value reported for epsilon when theta(k) hits theta_d exactly.
inline constexpr double kEpsilonFloor = -300.0;

/// log10(||theta_k - theta_d|| / ||theta_0 - theta_d||).
/// Throws std::invalid_argument when theta_0 == theta_d.
double epsilon_metric(const ParamVec& theta_k, const ParamVec& theta_0, const ParamVec& theta_d);

/// Constants entering the expected-error bound under eta(k) = eta_c/sqrt(k+1).
struct BoundParams {
  double eta_c;
  double mu;
  double grad_bound;  // M
  double e0;          // ||theta(0) - theta*||^2

  // Throws std::invalid_argument unless eta_c > 0, mu > 0, M >= 0, e0 >= 0
  // and eta_c * mu <= 1.
  void validate() const;
  double eta(std::uint64_t k) const;
};

/// C_k = 1 - eta(k) mu.
double contraction(std::uint64_t k, const BoundParams& p);

/// log C_k, -inf when C_k == 0.
double log_contraction(std::uint64_t k, const BoundParams& p);

struct Lemma4Row {
  std::uint64_t k;
  double log_value;  // k log C_k
  double value;      // (C_k)^k from log_value
  double direct;     // std::pow(C_k, k) for k <= 50, NaN otherwise
  double log_bound;  // -Q k / sqrt(k+1)
  double bound;
};

struct Lemma4Check {
  std::vector<Lemma4Row> rows;  // k = 0..k_max
  bool holds = true;            // 0 <= (C_k)^k <= bound at every k
  bool direct_consistent = true;  // log-space vs direct within 1e-12 rel
};

Lemma4Check check_lemma4(const BoundParams& p, std::uint64_t k_max);

struct Lemma5Check {
  std::optional<std::uint64_t> first_below;  // smallest k with prod_{t<=k} C_t < threshold
  bool bound_holds = true;   // prod <= exp(-mu sum eta) at every k
  bool nonincreasing = true;
  std::vector<double> log_products;  // k = 0..k_max
};

Lemma5Check check_lemma5(const BoundParams& p, double threshold, std::uint64_t k_max);

struct AppendixSeries {
  double exact;        // sum_{t<k-1} (prod_{l=t+1}^{k-1} C_l) eta^2(t) + eta^2(k-1)
  double loose_bound;  // sum_{t<k} (C_{k-1})^{k-t-1} eta^2(t)
};

/// Nested-product form evaluated with log-space suffix products. k >= 1
/// (k = 1 reduces to eta^2(0)). Throws std::logic_error if exact exceeds the
/// loose bound.
AppendixSeries appendix_series(const BoundParams& p, std::uint64_t k);

/// Same series from S_1 = eta^2(0), S_{j+1} = C_j S_j + eta^2(j).
double appendix_series_recursive(const BoundParams& p, std::uint64_t k);

/// eps/mu + eta^2(0) (k0 + 1) (C_{k-1})^{k-1-k0} with eps = eta(k0): the two
/// pieces that bound the loose series for k > k0 + 1.
double appendix_tail_bound(const BoundParams& p, std::uint64_t k, std::uint64_t k0);

struct BoundSeries {
  std::uint64_t k_max = 0;
  std::vector<double> product_terms;  // prod_{t<k} C_t, index k
  std::vector<double> series_terms;   // appendix series, 0 at k = 0
  std::vector<double> envelope;       // product * E0 + M^2 * series
};

/// Closed-form envelope for k = 0..k_max.
BoundSeries error_envelope(const BoundParams& p, std::uint64_t k_max);

/// Envelope by iterating e_{k+1} = C_k e_k + eta^2(k) M^2 from e_0 = E0.
std::vector<double> envelope_recursive(const BoundParams& p, std::uint64_t k_max);

}  // namespace ota

#endif  // OTA_ANALYSIS_HPP_
