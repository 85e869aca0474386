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

#ifndef OTA_CSV_HPP_
#define OTA_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace ota::csv {

// Shortest round-trippable form is not what we want here: every value is
// written with exactly 17 significant digits so files diff cleanly.
std::string format_double(double v);

std::vector<std::string_view> split(std::string_view line, char sep = ',');

// Strict full-field parse; returns false on any trailing garbage.
bool parse_double(std::string_view field, double& out);

}  // namespace ota::csv

#endif  // OTA_CSV_HPP_
