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

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ota/analysis.hpp"
#include "ota/csv.hpp"
#include "ota/experiment.hpp"

namespace ota {
namespace {

std::string serialize_epsilon(double eps) {
  // -inf never reaches here (epsilon_metric caps it), NaN means "no reference".
  return csv::format_double(std::isnan(eps) ? eps : std::max(eps, kEpsilonFloor));
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::size_t trace_dim(const std::vector<RoundTrace>& traces) {
  if (traces.empty()) throw std::invalid_argument("trace: no rows");
  return traces.front().theta_after.dim();
}

}  // namespace

std::string trace_csv(const std::vector<RoundTrace>& traces) {
  const std::size_t m = trace_dim(traces);
  std::ostringstream out;
  out << "k,epsilon,global_loss";
  for (std::size_t j = 0; j < m; ++j) out << ",theta_" << j;
  out << ",slots_used\n";
  for (const RoundTrace& t : traces) {
    out << t.k << ',' << serialize_epsilon(t.epsilon) << ',' << csv::format_double(t.global_loss);
    for (double v : t.theta_after) out << ',' << csv::format_double(v);
    out << ',' << t.slots_used << '\n';
  }
  return out.str();
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<RoundTrace>& traces) {
  write_file(path, trace_csv(traces));
}

void write_compare_csv(const std::filesystem::path& path, const std::vector<RoundTrace>& fedcota,
                       const std::vector<RoundTrace>& fedavg) {
  const std::size_t m = trace_dim(fedcota);
  std::ostringstream out;
  out << "protocol,k,slots_used,epsilon,global_loss";
  for (std::size_t j = 0; j < m; ++j) out << ",theta_" << j;
  out << '\n';
  auto emit = [&](const char* name, const std::vector<RoundTrace>& rows) {
    for (const RoundTrace& t : rows) {
      out << name << ',' << t.k << ',' << t.slots_used << ',' << serialize_epsilon(t.epsilon)
          << ',' << csv::format_double(t.global_loss);
      for (double v : t.theta_after) out << ',' << csv::format_double(v);
      out << '\n';
    }
  };
  emit("fedcota", fedcota);
  emit("fedavg", fedavg);
  write_file(path, out.str());
}

}  // namespace ota
