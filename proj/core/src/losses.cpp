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

#include "ota/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ota {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void require_dim(const LossSpec& spec, const ParamVec& theta) {
  if (spec.dim() != theta.dim()) {
    throw std::invalid_argument("loss: parameter dimension " +
                                std::to_string(theta.dim()) + " does not match loss dimension " +
                                std::to_string(spec.dim()));
  }
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log1p_exp(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

LossSpec LossSpec::logistic(double lambda, std::vector<Sample> dataset) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("RegularizedLogistic: lambda must lie in [0, 1]");
  }
  if (dataset.empty()) {
    throw std::invalid_argument("RegularizedLogistic: dataset must be nonempty");
  }
  const std::size_t m = dataset.front().input.dim();
  for (const Sample& s : dataset) {
    if (s.input.dim() != m) {
      throw std::invalid_argument("RegularizedLogistic: samples disagree on input dimension");
    }
    if (s.label != 0 && s.label != 1) {
      throw std::invalid_argument("RegularizedLogistic: label must be 0 or 1");
    }
  }
  return LossSpec(RegularizedLogistic{lambda, std::move(dataset)});
}

LossSpec LossSpec::quadratic(ParamVec target) {
  return LossSpec(Quadratic{std::move(target)});
}

std::size_t LossSpec::dim() const noexcept {
  return std::visit(Overloaded{
                        [](const RegularizedLogistic& l) { return l.dataset.front().input.dim(); },
                        [](const Quadratic& q) { return q.target.dim(); },
                    },
                    kind_);
}

double loss_value(const LossSpec& spec, const ParamVec& theta) {
  require_dim(spec, theta);
  return std::visit(
      Overloaded{
          [&](const RegularizedLogistic& l) {
            // -[z log S(x) + (1-z) log(1 - S(x))] = log(1 + e^x) - z x
            double acc = 0.0;
            for (const Sample& s : l.dataset) {
              const double x = dot(theta, s.input);
              acc += log1p_exp(x) - static_cast<double>(s.label) * x;
            }
            return l.lambda * squared_norm(theta) + acc / static_cast<double>(l.dataset.size());
          },
          [&](const Quadratic& q) {
            double acc = 0.0;
            for (std::size_t i = 0; i < theta.dim(); ++i) {
              const double d = theta[i] - q.target[i];
              acc += d * d;
            }
            return 0.5 * acc;
          },
      },
      spec.kind());
}

ParamVec loss_gradient(const LossSpec& spec, const ParamVec& theta) {
  require_dim(spec, theta);
  return std::visit(
      Overloaded{
          [&](const RegularizedLogistic& l) {
            ParamVec data_term = ParamVec::zeros(theta.dim());
            for (const Sample& s : l.dataset) {
              const double r = sigmoid(dot(theta, s.input)) - static_cast<double>(s.label);
              data_term.axpy(r, s.input);
            }
            data_term *= 1.0 / static_cast<double>(l.dataset.size());
            data_term.axpy(2.0 * l.lambda, theta);
            return data_term;
          },
          [&](const Quadratic& q) { return theta - q.target; },
      },
      spec.kind());
}

double global_loss(std::span<const LossSpec> specs, const ParamVec& theta) {
  if (specs.empty()) throw std::invalid_argument("global_loss: no local losses");
  double acc = 0.0;
  for (const LossSpec& s : specs) acc += loss_value(s, theta);
  return acc / static_cast<double>(specs.size());
}

ParamVec global_gradient(std::span<const LossSpec> specs, const ParamVec& theta) {
  if (specs.empty()) throw std::invalid_argument("global_gradient: no local losses");
  ParamVec acc = ParamVec::zeros(theta.dim());
  for (const LossSpec& s : specs) acc += loss_gradient(s, theta);
  acc *= 1.0 / static_cast<double>(specs.size());
  return acc;
}

double gram_top_eigenvalue(std::span<const Sample> samples, double rel_tol) {
  if (samples.empty()) throw std::invalid_argument("gram_top_eigenvalue: no samples");
  const std::size_t m = samples.front().input.dim();
  std::vector<double> gram(m * m, 0.0);
  for (const Sample& s : samples) {
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) gram[r * m + c] += s.input[r] * s.input[c];
    }
  }

  auto multiply = [&](const std::vector<double>& v) {
    std::vector<double> out(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) out[r] += gram[r * m + c] * v[c];
    }
    return out;
  };
  auto normalize = [](std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (n > 0.0) {
      for (double& x : v) x /= n;
    }
    return n;
  };

  // A start vector with distinct entries avoids landing exactly orthogonal
  // to the top eigenvector for symmetric data.
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = 1.0 + 1.0 / static_cast<double>(i + 2);
  normalize(v);

  double rho = 0.0;
  constexpr int kMaxIters = 100000;
  for (int it = 0; it < kMaxIters; ++it) {
    std::vector<double> w = multiply(v);
    rho = 0.0;
    for (std::size_t i = 0; i < m; ++i) rho += v[i] * w[i];
    if (rho <= 0.0) return 0.0;
    double resid = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = w[i] - rho * v[i];
      resid += d * d;
    }
    if (std::sqrt(resid) <= rel_tol * rho) break;
    normalize(w);
    v = std::move(w);
  }
  return rho;
}

CurvatureConstants estimate_constants(const LossSpec& spec, const ConstraintSet& set) {
  const std::size_t m = spec.dim();
  if (auto box_dim = set.dim(); box_dim && *box_dim != m) {
    throw std::invalid_argument("estimate_constants: constraint set dimension mismatch");
  }
  const double diam = diameter(set, m);
  return std::visit(
      Overloaded{
          [&](const RegularizedLogistic& l) {
            if (l.lambda == 0.0) {
              throw std::invalid_argument(
                  "estimate_constants: lambda = 0, logistic loss is not strongly convex");
            }
            const double n = static_cast<double>(l.dataset.size());
            const double mu = 2.0 * l.lambda;
            const double lip = mu + gram_top_eigenvalue(l.dataset) / (4.0 * n);
            double max_input = 0.0;
            for (const Sample& s : l.dataset) max_input = std::max(max_input, norm(s.input));
            const double grad_bound = mu * max_norm(set, m) + max_input;
            return CurvatureConstants{mu, lip, grad_bound, diam};
          },
          [&](const Quadratic& q) {
            return CurvatureConstants{1.0, 1.0, max_distance_from(set, q.target), diam};
          },
      },
      spec.kind());
}

CurvatureConstants aggregate_constants(std::span<const CurvatureConstants> per_agent) {
  if (per_agent.empty()) throw std::invalid_argument("aggregate_constants: empty input");
  CurvatureConstants out{0.0, 0.0, 0.0, 0.0};
  for (const CurvatureConstants& c : per_agent) {
    out.mu += c.mu;
    out.lip += c.lip;
    out.grad_bound = std::max(out.grad_bound, c.grad_bound);
    out.diam = std::max(out.diam, c.diam);
  }
  out.mu /= static_cast<double>(per_agent.size());
  out.lip /= static_cast<double>(per_agent.size());
  return out;
}

}  // namespace ota
