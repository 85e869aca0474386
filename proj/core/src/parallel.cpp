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

#include "ota/parallel.hpp"

#include <tbb/blocked_range.h>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>

namespace ota {

void parallel_for(std::size_t n, unsigned max_workers,
                  const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  if (max_workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  // Lift the scheduler's default cap so the requested worker count is honoured
  // even on machines with fewer cores.
  tbb::global_control limit(tbb::global_control::max_allowed_parallelism, max_workers);
  tbb::task_arena arena(static_cast<int>(max_workers));
  arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n),
                      [&](const tbb::blocked_range<std::size_t>& r) {
                        for (std::size_t i = r.begin(); i != r.end(); ++i) body(i);
                      });
  });
}

unsigned threads_from_env() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* raw = std::getenv("OTA_FEDSIM_THREADS");
  if (raw == nullptr || *raw == '\0') return hw;
  unsigned value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value == 0) return hw;
  return value;
}

}  // namespace ota
