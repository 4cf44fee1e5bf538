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

#ifndef FEATGAN_CLI_CONFIG_HPP
#define FEATGAN_CLI_CONFIG_HPP

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace featgan::cli {

/// JSON config files for CLI11. The file holds one object per subcommand,
/// keyed by the subcommand name, whose members are long option names:
///
///   { "train-cyclegan": { "epochs": 200, "lr": 1e-5 } }
///
/// Top-level `featgan_version` and `subcommand` entries are informational
/// so that an archived run.json can be fed straight back in.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

/// Resolved options of a parsed subcommand as a JSON object string:
/// command-line values first, config-file values next, defaults last.
std::string resolved_options_json(const CLI::App& sub);

/// Writes {featgan_version, subcommand, <subcommand>: {...}} to `path`.
void write_run_record(const CLI::App& sub, const std::filesystem::path& path);

}  // namespace featgan::cli

#endif  // FEATGAN_CLI_CONFIG_HPP
