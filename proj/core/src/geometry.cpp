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

#include "ota/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ota {
namespace {

void require_same_dim(const ParamVec& a, const ParamVec& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
}

void require_valid_coords(const std::vector<double>& coords) {
  if (coords.empty()) {
    throw std::invalid_argument("ParamVec: dimension must be at least 1");
  }
  for (double c : coords) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("ParamVec: coordinates must be finite");
    }
  }
}

}  // namespace

ParamVec::ParamVec(std::vector<double> coords) : coords_(std::move(coords)) {
  require_valid_coords(coords_);
}

ParamVec::ParamVec(std::initializer_list<double> coords) : coords_(coords) {
  require_valid_coords(coords_);
}

ParamVec ParamVec::zeros(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("ParamVec: dimension must be at least 1");
  return ParamVec(Unchecked{}, std::vector<double>(dim, 0.0));
}

ParamVec& ParamVec::operator+=(const ParamVec& other) {
  require_same_dim(*this, other, "ParamVec::operator+=");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

ParamVec& ParamVec::operator-=(const ParamVec& other) {
  require_same_dim(*this, other, "ParamVec::operator-=");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

ParamVec& ParamVec::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

void ParamVec::axpy(double s, const ParamVec& x) {
  require_same_dim(*this, x, "ParamVec::axpy");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += s * x.coords_[i];
}

bool ParamVec::all_finite() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double c) { return std::isfinite(c); });
}

ParamVec operator+(ParamVec a, const ParamVec& b) { return a += b; }
ParamVec operator-(ParamVec a, const ParamVec& b) { return a -= b; }
ParamVec operator*(double s, ParamVec a) { return a *= s; }

double dot(const ParamVec& a, const ParamVec& b) {
  require_same_dim(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

double squared_norm(const ParamVec& x) {
  double acc = 0.0;
  for (double c : x) acc += c * c;
  return acc;
}

double norm(const ParamVec& x) {
  // hypot-style scaling is unnecessary at the magnitudes a compact feasible
  // set admits; plain sum of squares keeps this bit-stable.
  return std::sqrt(squared_norm(x));
}

double distance(const ParamVec& a, const ParamVec& b) {
  require_same_dim(a, b, "distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

ConstraintSet ConstraintSet::ball(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("L2Ball: radius must be positive and finite");
  }
  return ConstraintSet(L2Ball{radius});
}

ConstraintSet ConstraintSet::box(ParamVec lower, ParamVec upper) {
  require_same_dim(lower, upper, "Box");
  for (std::size_t i = 0; i < lower.dim(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw std::invalid_argument("Box: lower must be <= upper componentwise");
    }
  }
  return ConstraintSet(Box{std::move(lower), std::move(upper)});
}

std::optional<std::size_t> ConstraintSet::dim() const noexcept {
  if (const auto* b = std::get_if<Box>(&kind_)) return b->lower.dim();
  return std::nullopt;
}

ParamVec project(const ConstraintSet& set, const ParamVec& x) {
  return std::visit(
      [&x](const auto& k) -> ParamVec {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, L2Ball>) {
          const double n = norm(x);
          if (n <= k.radius) return x;
          return (k.radius / n) * x;
        } else {
          require_same_dim(k.lower, x, "project");
          ParamVec out = x;
          for (std::size_t i = 0; i < x.dim(); ++i) {
            out[i] = std::clamp(x[i], k.lower[i], k.upper[i]);
          }
          return out;
        }
      },
      set.kind());
}

bool contains(const ConstraintSet& set, const ParamVec& x, double tol) {
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, L2Ball>) {
          return norm(x) <= k.radius + tol;
        } else {
          require_same_dim(k.lower, x, "contains");
          for (std::size_t i = 0; i < x.dim(); ++i) {
            if (x[i] < k.lower[i] - tol || x[i] > k.upper[i] + tol) return false;
          }
          return true;
        }
      },
      set.kind());
}

double diameter(const ConstraintSet& set, std::size_t dim) {
  return std::visit(
      [dim](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, L2Ball>) {
          return 2.0 * k.radius;
        } else {
          if (k.lower.dim() != dim) {
            throw std::invalid_argument("diameter: dimension mismatch");
          }
          return distance(k.lower, k.upper);
        }
      },
      set.kind());
}

double max_distance_from(const ConstraintSet& set, const ParamVec& point) {
  return std::visit(
      [&point](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, L2Ball>) {
          return k.radius + norm(point);
        } else {
          require_same_dim(k.lower, point, "max_distance_from");
          double acc = 0.0;
          for (std::size_t i = 0; i < point.dim(); ++i) {
            const double d = std::max(std::abs(point[i] - k.lower[i]),
                                      std::abs(point[i] - k.upper[i]));
            acc += d * d;
          }
          return std::sqrt(acc);
        }
      },
      set.kind());
}

double max_norm(const ConstraintSet& set, std::size_t dim) {
  return max_distance_from(set, ParamVec::zeros(dim));
}

ParamVec sample_uniform(const ConstraintSet& set, std::size_t dim, Rng& rng) {
  return std::visit(
      [&](const auto& k) -> ParamVec {
        using K = std::decay_t<decltype(k)>;
        std::vector<double> coords(dim);
        if constexpr (std::is_same_v<K, L2Ball>) {
          if (dim == 0) throw std::invalid_argument("sample_uniform: dim must be >= 1");
          double n2 = 0.0;
          for (double& c : coords) {
            c = standard_normal(rng);
            n2 += c * c;
          }
          const double r =
              k.radius * std::pow(uniform_open01(rng), 1.0 / static_cast<double>(dim));
          const double scale = r / std::sqrt(n2);
          for (double& c : coords) c *= scale;
        } else {
          if (k.lower.dim() != dim) {
            throw std::invalid_argument("sample_uniform: dimension mismatch");
          }
          for (std::size_t i = 0; i < dim; ++i) {
            coords[i] = k.lower[i] + (k.upper[i] - k.lower[i]) * uniform_open01(rng);
          }
        }
        return ParamVec(std::move(coords));
      },
      set.kind());
}

}  // namespace ota
