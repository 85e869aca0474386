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

#ifndef OTA_TOOLS_CLI_COMMANDS_HPP_
#define OTA_TOOLS_CLI_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace ota::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kConfigError = 2,
};

/// Flags shared by every subcommand. Unset optionals keep the config value.
struct CommandArgs {
  std::filesystem::path config;
  std::optional<std::string> protocol;
  std::optional<std::uint64_t> rounds;
  std::optional<std::uint64_t> seed_channel;
  std::optional<std::filesystem::path> out;
  unsigned threads = 1;
};

int cmd_run(const CommandArgs& args, std::ostream& out, std::ostream& err);
int cmd_compare(const CommandArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify_bounds(const CommandArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen_data(const CommandArgs& args, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] is the program name). Worker count comes from
/// OTA_FEDSIM_THREADS.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ota::cli

#endif  // OTA_TOOLS_CLI_COMMANDS_HPP_
