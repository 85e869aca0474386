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

#ifndef OTA_PARALLEL_HPP_
#define OTA_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace ota {

/// Runs body(i) for i in [0, n) on at most max_workers threads. Callers write
/// results into per-index slots and reduce afterwards in index order, so the
/// outcome does not depend on the worker count.
void parallel_for(std::size_t n, unsigned max_workers,
                  const std::function<void(std::size_t)>& body);

/// Worker cap from OTA_FEDSIM_THREADS; hardware concurrency when unset or
/// unparsable. Never returns 0.
unsigned threads_from_env();

}  // namespace ota

#endif  // OTA_PARALLEL_HPP_
