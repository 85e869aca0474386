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

#include "ota/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ota {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-12;

// a <= b allowing for rounding in log-space quantities.
bool log_leq(double a, double b) {
  if (a == kNegInf) return true;
  return a <= b + kRelTol * std::max(1.0, std::abs(b));
}

}  // namespace

double epsilon_metric(const ParamVec& theta_k, const ParamVec& theta_0,
                      const ParamVec& theta_d) {
  const double denom = distance(theta_0, theta_d);
  if (denom == 0.0) {
    throw std::invalid_argument("epsilon_metric: theta(0) equals theta_d");
  }
  const double num = distance(theta_k, theta_d);
  if (num == 0.0) return kEpsilonFloor;
  return std::max(kEpsilonFloor, std::log10(num / denom));
}

void BoundParams::validate() const {
  if (!(eta_c > 0.0) || !(mu > 0.0) || !(grad_bound >= 0.0) || !(e0 >= 0.0)) {
    throw std::invalid_argument("BoundParams: need eta_c > 0, mu > 0, M >= 0, E0 >= 0");
  }
  if (eta_c * mu > 1.0) {
    throw std::invalid_argument("BoundParams: eta_c * mu > 1 (Assumption 3 violated)");
  }
}

double BoundParams::eta(std::uint64_t k) const {
  return eta_c / std::sqrt(static_cast<double>(k) + 1.0);
}

double contraction(std::uint64_t k, const BoundParams& p) { return 1.0 - p.eta(k) * p.mu; }

double log_contraction(std::uint64_t k, const BoundParams& p) {
  const double q = p.eta(k) * p.mu;
  if (q >= 1.0) return kNegInf;
  return std::log1p(-q);
}

Lemma4Check check_lemma4(const BoundParams& p, std::uint64_t k_max) {
  p.validate();
  const double q = p.eta_c * p.mu;
  Lemma4Check out;
  out.rows.reserve(k_max + 1);
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);
    Lemma4Row row{};
    row.k = k;
    if (k == 0) {
      row.log_value = 0.0;  // empty power, even when C_0 == 0
    } else {
      const double lc = log_contraction(k, p);
      row.log_value = lc == kNegInf ? kNegInf : kd * lc;
    }
    row.value = std::exp(row.log_value);
    row.direct = k <= 50 ? std::pow(contraction(k, p), kd)
                         : std::numeric_limits<double>::quiet_NaN();
    row.log_bound = -q * kd / std::sqrt(kd + 1.0);
    row.bound = std::exp(row.log_bound);

    if (!(row.value >= 0.0) || !log_leq(row.log_value, row.log_bound)) out.holds = false;
    if (k <= 50 && std::abs(row.direct - row.value) >
                       kRelTol * std::max(std::abs(row.direct), std::abs(row.value))) {
      out.direct_consistent = false;
    }
    out.rows.push_back(row);
  }
  return out;
}

Lemma5Check check_lemma5(const BoundParams& p, double threshold, std::uint64_t k_max) {
  p.validate();
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("check_lemma5: threshold must lie in (0, 1)");
  }
  const double log_threshold = std::log(threshold);
  Lemma5Check out;
  out.log_products.reserve(k_max + 1);
  double log_prod = 0.0;
  double eta_sum = 0.0;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const double prev = log_prod;
    const double lc = log_contraction(k, p);
    log_prod = (lc == kNegInf || log_prod == kNegInf) ? kNegInf : log_prod + lc;
    eta_sum += p.eta(k);
    if (!log_leq(log_prod, -p.mu * eta_sum)) out.bound_holds = false;
    if (k > 0 && log_prod > prev) out.nonincreasing = false;
    if (!out.first_below && log_prod < log_threshold) out.first_below = k;
    out.log_products.push_back(log_prod);
  }
  return out;
}

AppendixSeries appendix_series(const BoundParams& p, std::uint64_t k) {
  p.validate();
  if (k < 1) throw std::invalid_argument("appendix_series: k must be >= 1");

  const double eta_last = p.eta(k - 1);
  double exact = eta_last * eta_last;
  // t runs k-2 .. 0; suffix holds sum_{l=t+1}^{k-1} log C_l.
  double suffix = 0.0;
  for (std::uint64_t t = k - 1; t-- > 0;) {
    suffix += log_contraction(t + 1, p);
    const double e = p.eta(t);
    exact += std::exp(suffix) * e * e;
  }

  const double log_base = log_contraction(k - 1, p);
  double loose = 0.0;
  for (std::uint64_t t = 0; t < k; ++t) {
    const double e = p.eta(t);
    const double power = static_cast<double>(k - t - 1);
    double factor;
    if (power == 0.0) {
      factor = 1.0;
    } else if (log_base == kNegInf) {
      factor = 0.0;
    } else {
      factor = std::exp(power * log_base);
    }
    loose += factor * e * e;
  }

  if (exact > loose * (1.0 + kRelTol)) {
    throw std::logic_error("appendix_series: nested series exceeds its single-base bound");
  }
  return {exact, loose};
}

double appendix_series_recursive(const BoundParams& p, std::uint64_t k) {
  p.validate();
  if (k < 1) throw std::invalid_argument("appendix_series_recursive: k must be >= 1");
  const double e0 = p.eta(0);
  double s = e0 * e0;
  for (std::uint64_t j = 1; j < k; ++j) {
    const double e = p.eta(j);
    s = contraction(j, p) * s + e * e;
  }
  return s;
}

double appendix_tail_bound(const BoundParams& p, std::uint64_t k, std::uint64_t k0) {
  p.validate();
  if (k <= k0 + 1) throw std::invalid_argument("appendix_tail_bound: need k > k0 + 1");
  const double eps = p.eta(k0);
  const double e0 = p.eta(0);
  const double log_base = log_contraction(k - 1, p);
  const double power = static_cast<double>(k - 1 - k0);
  const double head =
      log_base == kNegInf ? 0.0
                          : e0 * e0 * static_cast<double>(k0 + 1) * std::exp(power * log_base);
  return eps / p.mu + head;
}

BoundSeries error_envelope(const BoundParams& p, std::uint64_t k_max) {
  p.validate();
  BoundSeries out;
  out.k_max = k_max;
  out.product_terms.reserve(k_max + 1);
  out.series_terms.reserve(k_max + 1);
  out.envelope.reserve(k_max + 1);

  double log_prod = 0.0;  // sum_{t<k} log C_t
  const double m2 = p.grad_bound * p.grad_bound;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    if (k > 0) {
      const double lc = log_contraction(k - 1, p);
      log_prod = (lc == kNegInf || log_prod == kNegInf) ? kNegInf : log_prod + lc;
    }
    const double prod = std::exp(log_prod);
    const double series = k == 0 ? 0.0 : appendix_series(p, k).exact;
    out.product_terms.push_back(prod);
    out.series_terms.push_back(series);
    out.envelope.push_back(prod * p.e0 + m2 * series);
  }
  return out;
}

std::vector<double> envelope_recursive(const BoundParams& p, std::uint64_t k_max) {
  p.validate();
  std::vector<double> out;
  out.reserve(k_max + 1);
  double e = p.e0;
  const double m2 = p.grad_bound * p.grad_bound;
  out.push_back(e);
  for (std::uint64_t k = 0; k < k_max; ++k) {
    const double eta = p.eta(k);
    e = contraction(k, p) * e + eta * eta * m2;
    out.push_back(e);
  }
  return out;
}

}  // namespace ota
