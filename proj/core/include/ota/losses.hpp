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

#ifndef OTA_LOSSES_HPP_
#define OTA_LOSSES_HPP_

#include <span>
#include <variant>
#include <vector>

#include "ota/geometry.hpp"

namespace ota {

/// One labelled example. The last input coordinate carries the bias and is
/// expected to be 1 when the sample comes from a LabeledDataset.
struct Sample {
  ParamVec input;
  int label;  // 0 or 1
};

struct RegularizedLogistic {
  double lambda;
  std::vector<Sample> dataset;
};

struct Quadratic {
  ParamVec target;
};

/// A strongly convex local cost f_i.
///
///   RegularizedLogistic: lambda ||theta||^2 + mean cross-entropy of
///                        sigmoid(theta^T u) against z (bias included in
///                        the penalty).
///   Quadratic:           0.5 ||theta - b||^2.
class LossSpec {
 public:
  // lambda in [0, 1]; dataset nonempty with a common input dimension and
  // labels in {0, 1}.
  static LossSpec logistic(double lambda, std::vector<Sample> dataset);
  static LossSpec quadratic(ParamVec target);

  std::size_t dim() const noexcept;
  const std::variant<RegularizedLogistic, Quadratic>& kind() const noexcept {
    return kind_;
  }

 private:
  explicit LossSpec(std::variant<RegularizedLogistic, Quadratic> kind)
      : kind_(std::move(kind)) {}

  std::variant<RegularizedLogistic, Quadratic> kind_;
};

/// Curvature and boundedness constants of a loss over a constraint set.
struct CurvatureConstants {
  double mu;         // strong convexity modulus
  double lip;        // gradient Lipschitz constant
  double grad_bound; // M: sup ||grad f|| over the set
  double diam;       // D: sup ||theta - theta*|| over the set
};

double loss_value(const LossSpec& spec, const ParamVec& theta);
ParamVec loss_gradient(const LossSpec& spec, const ParamVec& theta);

double global_loss(std::span<const LossSpec> specs, const ParamVec& theta);
ParamVec global_gradient(std::span<const LossSpec> specs, const ParamVec& theta);

/// Quadratic losses get exact constants. Logistic losses get mu = 2 lambda
/// and a certified upper bound on L from the top eigenvalue of sum u u^T
/// (power iteration) and the sigmoid curvature bound 1/4. Throws
/// std::invalid_argument("... not strongly convex") when lambda == 0.
CurvatureConstants estimate_constants(const LossSpec& spec, const ConstraintSet& set);

/// Averaged constants for the global cost: mu and L are the means of the
/// per-agent values, M and D the maxima.
CurvatureConstants aggregate_constants(std::span<const CurvatureConstants> per_agent);

/// Largest eigenvalue of the Gram matrix sum_n u_n u_n^T by power iteration,
/// stopped when the eigen-residual drops below rel_tol times the estimate.
double gram_top_eigenvalue(std::span<const Sample> samples, double rel_tol = 1e-8);

// Overflow-safe pieces of the cross-entropy.
double sigmoid(double x);
double log1p_exp(double x);  // log(1 + e^x)

}  // namespace ota

#endif  // OTA_LOSSES_HPP_
