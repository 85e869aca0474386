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

#include "ota/data.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ota/csv.hpp"
#include "ota/errors.hpp"
#include "ota/random.hpp"

namespace ota {

bool operator==(const Sample& a, const Sample& b) {
  return a.label == b.label && a.input == b.input;
}

bool operator==(const LabeledDataset& a, const LabeledDataset& b) {
  return a.samples_ == b.samples_;
}

LabeledDataset::LabeledDataset(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("LabeledDataset: no samples");
  const std::size_t m = samples_.front().input.dim();
  bool seen[2] = {false, false};
  for (const Sample& s : samples_) {
    if (s.input.dim() != m) {
      throw std::invalid_argument("LabeledDataset: inputs disagree on dimension");
    }
    if (s.input[m - 1] != 1.0) {
      throw std::invalid_argument("LabeledDataset: bias coordinate must equal 1");
    }
    if (s.label != 0 && s.label != 1) {
      throw std::invalid_argument("LabeledDataset: label must be 0 or 1");
    }
    seen[s.label] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw std::invalid_argument("LabeledDataset: both classes must be present");
  }
}

std::size_t LabeledDataset::count(int label) const {
  std::size_t n = 0;
  for (const Sample& s : samples_) n += s.label == label ? 1 : 0;
  return n;
}

LabeledDataset generate_gaussian_blobs(std::size_t m, std::size_t n_per_class,
                                       const std::array<ParamVec, 2>& centers, double sigma,
                                       std::uint64_t seed) {
  if (m < 2) throw ConfigError("blobs: m must be >= 2 (one feature plus bias)");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("blobs: sigma must be positive");
  if (n_per_class == 0) throw ConfigError("blobs: n_per_class must be >= 1");
  for (const ParamVec& c : centers) {
    if (c.dim() != m - 1) {
      throw ConfigError("blobs: centers must have dimension m - 1 = " + std::to_string(m - 1));
    }
  }
  if (centers[0] == centers[1]) throw ConfigError("blobs: centers must be distinct");

  Rng rng(derive_seed(seed, stream::kBlobs));
  std::vector<Sample> samples;
  samples.reserve(2 * n_per_class);
  for (int label = 0; label < 2; ++label) {
    const ParamVec& c = centers[static_cast<std::size_t>(label)];
    for (std::size_t n = 0; n < n_per_class; ++n) {
      std::vector<double> u(m);
      for (std::size_t j = 0; j + 1 < m; ++j) u[j] = c[j] + sigma * standard_normal(rng);
      u[m - 1] = 1.0;
      samples.push_back(Sample{ParamVec(std::move(u)), label});
    }
  }
  return LabeledDataset(std::move(samples));
}

Partition partition_iid(const LabeledDataset& ds, std::size_t n_agents, std::uint64_t seed) {
  if (n_agents == 0) throw ConfigError("partition: N must be >= 1");
  if (ds.size() % n_agents != 0) {
    throw ConfigError("partition: " + std::to_string(ds.size()) +
                      " samples do not split evenly across " + std::to_string(n_agents) +
                      " agents");
  }
  const std::size_t shard = ds.size() / n_agents;
  Rng rng(derive_seed(seed, stream::kPartition));
  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::vector<std::size_t> perm = random_permutation(rng, ds.size());
    Partition p;
    p.agent_shards.resize(n_agents);
    bool balanced = true;
    for (std::size_t a = 0; a < n_agents && balanced; ++a) {
      auto& out = p.agent_shards[a];
      out.reserve(shard);
      bool seen[2] = {false, false};
      for (std::size_t j = 0; j < shard; ++j) {
        const Sample& s = ds.samples()[perm[a * shard + j]];
        seen[s.label] = true;
        out.push_back(s);
      }
      balanced = seen[0] && seen[1];
    }
    if (balanced) return p;
  }
  throw ConfigError("partition: could not find a shuffle giving every agent both classes");
}

void save_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_csv: cannot open " + path.string());
  const std::size_t m = ds.dim();
  for (std::size_t j = 0; j < m; ++j) out << "u_" << j << ',';
  out << "z\n";
  for (const Sample& s : ds.samples()) {
    for (double v : s.input) out << csv::format_double(v) << ',';
    out << s.label << '\n';
  }
  if (!out) throw std::runtime_error("save_csv: write failed for " + path.string());
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open dataset file " + path.string(), 0);

  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty dataset file " + path.string(), 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = csv::split(line);
  const std::size_t m = header.size() - 1;
  if (header.size() < 2 || header.back() != "z") {
    throw ParseError("header must be u_0,...,u_{m-1},z", 1);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (header[j] != "u_" + std::to_string(j)) {
      throw ParseError("header column " + std::to_string(j) + " must be u_" + std::to_string(j),
                       1);
    }
  }

  std::vector<Sample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != m + 1) {
      throw ParseError("expected " + std::to_string(m + 1) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    std::vector<double> u(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (!csv::parse_double(fields[j], u[j]) || !std::isfinite(u[j])) {
        throw ParseError("bad number in column " + std::to_string(j), line_no);
      }
    }
    double z = 0.0;
    if (!csv::parse_double(fields[m], z) || (z != 0.0 && z != 1.0)) {
      throw ParseError("label must be 0 or 1", line_no);
    }
    if (u[m - 1] != 1.0) throw ParseError("bias column must equal 1", line_no);
    samples.push_back(Sample{ParamVec(std::move(u)), static_cast<int>(z)});
  }
  if (samples.empty()) throw ParseError("dataset file has no rows", 0);
  try {
    return LabeledDataset(std::move(samples));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace ota
