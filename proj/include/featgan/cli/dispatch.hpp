// Copyright 2026 The featgan Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEATGAN_CLI_DISPATCH_HPP
#define FEATGAN_CLI_DISPATCH_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace featgan::cli {

/// Process exit statuses. Every failure also prints exactly one line
/// `featgan: error: <category>: <message>` on the error stream.
enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,  // tool failure, corrupt data, aborted training
  kExitUsage = 2,    // unknown flag, missing required flag, bad value
  kExitMissing = 3,  // an input file does not exist
  kExitConfig = 4,   // config violation or empty input
};

/// Input path that does not exist.
class MissingInput : public std::runtime_error {
 public:
  explicit MissingInput(const std::string& path)
      : std::runtime_error("no such file: " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Rejected combination of option values.
class ConfigViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace featgan::cli

#endif  // FEATGAN_CLI_DISPATCH_HPP
