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

#ifndef OTA_GEOMETRY_HPP_
#define OTA_GEOMETRY_HPP_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ota/random.hpp"

namespace ota {

/// A model parameter vector in R^m, m >= 1, with finite coordinates.
///
/// Constructors validate; the arithmetic helpers below do not re-check
/// finiteness on every intermediate.
class ParamVec {
 public:
  explicit ParamVec(std::vector<double> coords);
  ParamVec(std::initializer_list<double> coords);

  static ParamVec zeros(std::size_t dim);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  ParamVec& operator+=(const ParamVec& other);
  ParamVec& operator-=(const ParamVec& other);
  ParamVec& operator*=(double s);

  // this += s * x
  void axpy(double s, const ParamVec& x);

  bool all_finite() const noexcept;

  friend bool operator==(const ParamVec&, const ParamVec&) = default;

 private:
  struct Unchecked {};
  ParamVec(Unchecked, std::vector<double> coords) : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

ParamVec operator+(ParamVec a, const ParamVec& b);
ParamVec operator-(ParamVec a, const ParamVec& b);
ParamVec operator*(double s, ParamVec a);

double dot(const ParamVec& a, const ParamVec& b);
double norm(const ParamVec& x);
double squared_norm(const ParamVec& x);
double distance(const ParamVec& a, const ParamVec& b);

/// Closed Euclidean ball of the given radius centred at the origin. Has no
/// intrinsic dimension; it projects vectors of any dimension.
struct L2Ball {
  double radius;
};

/// Axis-aligned box lower <= x <= upper.
struct Box {
  ParamVec lower;
  ParamVec upper;
};

/// Nonempty, convex, compact feasible set with an exact projection.
class ConstraintSet {
 public:
  static ConstraintSet ball(double radius);
  static ConstraintSet box(ParamVec lower, ParamVec upper);

  const std::variant<L2Ball, Box>& kind() const noexcept { return kind_; }
  bool is_ball() const noexcept { return std::holds_alternative<L2Ball>(kind_); }

  // Fixed dimension for boxes; nullopt for balls.
  std::optional<std::size_t> dim() const noexcept;

 private:
  explicit ConstraintSet(std::variant<L2Ball, Box> kind) : kind_(std::move(kind)) {}

  std::variant<L2Ball, Box> kind_;
};

/// Euclidean projection argmin_{s in set} ||s - x||. Points already in the
/// set (including the ball boundary) are returned unchanged.
ParamVec project(const ConstraintSet& set, const ParamVec& x);

/// Membership up to an absolute tolerance on each defining inequality.
bool contains(const ConstraintSet& set, const ParamVec& x, double tol = 0.0);

/// sup over the set of ||s - s'||. dim is required for balls only so the
/// signature matches; it is checked against boxes.
double diameter(const ConstraintSet& set, std::size_t dim);

/// sup over s in the set of ||s - point||.
double max_distance_from(const ConstraintSet& set, const ParamVec& point);

/// sup over s in the set of ||s||.
double max_norm(const ConstraintSet& set, std::size_t dim);

/// A point drawn uniformly from the set (volume measure).
ParamVec sample_uniform(const ConstraintSet& set, std::size_t dim, Rng& rng);

}  // namespace ota

#endif  // OTA_GEOMETRY_HPP_
