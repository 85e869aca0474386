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

#ifndef OTA_RANDOM_HPP_
#define OTA_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace ota {

// The engine is fully specified by the standard, so streams are reproducible
// across toolchains. The std:: distributions are not, which is why the
// variate helpers below are written out.
using Rng = std::mt19937_64;

// Mixes a master seed with stream/index tags into an independent seed
// (splitmix64 finalizer chain).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index = 0);

// Stream tags for derive_seed.
namespace stream {
inline constexpr std::uint64_t kChannelRound = 0x43484e4c;  // "CHNL"
inline constexpr std::uint64_t kBlobs = 0x424c4f42;         // "BLOB"
inline constexpr std::uint64_t kPartition = 0x50415254;     // "PART"
inline constexpr std::uint64_t kTargets = 0x54475453;       // "TGTS"
inline constexpr std::uint64_t kInit = 0x494e4954;          // "INIT"
inline constexpr std::uint64_t kMonteCarlo = 0x4d435253;    // "MCRS"
}  // namespace stream

// Uniform on the open interval (0, 1); never returns 0 or 1.
double uniform_open01(Rng& rng);

// Standard normal via Box-Muller (one variate per call).
double standard_normal(Rng& rng);

// Uniform integer in [0, bound) without modulo bias. bound must be > 0.
std::uint64_t uniform_index(Rng& rng, std::uint64_t bound);

// Fisher-Yates shuffle of a permutation of 0..n-1.
std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

}  // namespace ota

#endif  // OTA_RANDOM_HPP_
