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

#ifndef FEATGAN_FILTERING_PROCESS_HPP
#define FEATGAN_FILTERING_PROCESS_HPP

#include <map>
#include <stdexcept>
#include <string>

namespace featgan::filtering {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs `command` through /bin/sh -c and captures both output streams.
CommandResult run_command(const std::string& command);

/// Single-quotes a value for /bin/sh.
std::string shell_quote(const std::string& value);

/// Replaces {name} placeholders with shell-quoted values. Unknown
/// placeholders are an error so that typos in templates surface early.
std::string expand_template(const std::string& tmpl, const std::map<std::string, std::string>& values);

/// Final line of standard output (trailing newline ignored). Empty output
/// is malformed: a recognizer that heard nothing must still print a line.
std::string final_line(const std::string& out);

class ExternalToolError : public std::runtime_error {
 public:
  ExternalToolError(const std::string& message, std::string stderr_text)
      : std::runtime_error(message), stderr_text_(std::move(stderr_text)) {}
  const std::string& stderr_text() const { return stderr_text_; }

 private:
  std::string stderr_text_;
};

}  // namespace featgan::filtering

#endif  // FEATGAN_FILTERING_PROCESS_HPP
