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

#ifndef OTA_DATA_HPP_
#define OTA_DATA_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "ota/geometry.hpp"
#include "ota/losses.hpp"

namespace ota {

/// Binary-labelled samples sharing one input dimension, bias coordinate
/// (the last one) equal to 1, both classes present.
class LabeledDataset {
 public:
  // Throws std::invalid_argument when an invariant does not hold.
  explicit LabeledDataset(std::vector<Sample> samples);

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::size_t dim() const noexcept { return samples_.front().input.dim(); }
  std::size_t count(int label) const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&);

 private:
  std::vector<Sample> samples_;
};

bool operator==(const Sample& a, const Sample& b);

/// Equal-size disjoint shards covering a dataset.
struct Partition {
  std::vector<std::vector<Sample>> agent_shards;
};

/// Two isotropic Gaussian clouds in R^{m-1} (centers[c] is the mean of class
/// c), each point followed by a constant bias coordinate 1. Throws
/// ConfigError on m < 2, sigma <= 0, centers of the wrong dimension, or
/// identical centers.
LabeledDataset generate_gaussian_blobs(std::size_t m, std::size_t n_per_class,
                                       const std::array<ParamVec, 2>& centers, double sigma,
                                       std::uint64_t seed);

/// Shuffle, then cut into N equal shards. Reshuffles (up to 100 times) until
/// every shard holds both labels. Throws ConfigError if |ds| is not a
/// multiple of N or no balanced shuffle is found.
Partition partition_iid(const LabeledDataset& ds, std::size_t n_agents, std::uint64_t seed);

/// Header u_0..u_{m-1},z; 17 significant digits.
void save_csv(const LabeledDataset& ds, const std::filesystem::path& path);

/// Throws ParseError (with line numbers where applicable).
LabeledDataset load_csv(const std::filesystem::path& path);

}  // namespace ota

#endif  // OTA_DATA_HPP_
