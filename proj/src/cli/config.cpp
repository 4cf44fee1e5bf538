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

#include "featgan/cli/config.hpp"

#include <fstream>

#include "json.hpp"

namespace featgan::cli {
namespace {

using nlohmann::ordered_json;

constexpr const char* kReservedKeys[] = {"featgan_version", "subcommand"};

bool reserved(const std::string& key) {
  for (const char* k : kReservedKeys) {
    if (key == k) return true;
  }
  return false;
}

std::string scalar_text(const ordered_json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw CLI::ConfigError(where + ": expected a string, number or boolean");
}

ordered_json typed_value(const std::string& text) {
  ordered_json parsed = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!parsed.is_discarded() && (parsed.is_number() || parsed.is_boolean())) return parsed;
  return text;
}

std::string long_name(const CLI::Option& opt) {
  const auto& names = opt.get_lnames();
  return names.empty() ? std::string() : names.front();
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  ordered_json root;
  try {
    root = ordered_json::parse(input);
  } catch (const ordered_json::parse_error& e) {
    throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw CLI::ConfigError("config must be a JSON object");

  std::vector<CLI::ConfigItem> items;
  for (const auto& [section, body] : root.items()) {
    if (reserved(section)) continue;
    if (!body.is_object()) {
      // A stray top-level scalar is handed to CLI11 as a root option, which
      // rejects it as an extra.
      CLI::ConfigItem item;
      item.name = section;
      item.inputs = {scalar_text(body, section)};
      items.push_back(std::move(item));
      continue;
    }
    for (const auto& [key, value] : body.items()) {
      CLI::ConfigItem item;
      item.parents = {section};
      item.name = key;
      const std::string where = section + "." + key;
      if (value.is_null()) continue;  // unset in an archived run
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar_text(v, where));
      } else {
        item.inputs = {scalar_text(value, where)};
      }
      items.push_back(std::move(item));
    }
  }
  return items;
}

std::string JsonConfig::to_config(const CLI::App* app, bool, bool, std::string) const {
  ordered_json root = ordered_json::object();
  for (const CLI::App* sub : app->get_subcommands()) {
    root[sub->get_name()] = ordered_json::parse(resolved_options_json(*sub));
  }
  return root.dump(2) + "\n";
}

std::string resolved_options_json(const CLI::App& sub) {
  ordered_json obj = ordered_json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = long_name(*opt);
    if (name.empty() || name == "help" || name == "config") continue;
    if (opt->get_type_size_max() == 0) {
      obj[name] = opt->count() > 0 ? opt->as<bool>() : false;
    } else if (opt->get_items_expected_max() > 1) {
      ordered_json arr = ordered_json::array();
      for (const auto& r : opt->results()) arr.push_back(r);
      obj[name] = std::move(arr);
    } else if (opt->count() > 0) {
      obj[name] = typed_value(opt->results().back());
    } else if (!opt->get_default_str().empty()) {
      obj[name] = typed_value(opt->get_default_str());
    } else {
      obj[name] = nullptr;
    }
  }
  return obj.dump();
}

void write_run_record(const CLI::App& sub, const std::filesystem::path& path) {
  ordered_json root;
  root["featgan_version"] = FEATGAN_VERSION;
  root["subcommand"] = sub.get_name();
  root[sub.get_name()] = ordered_json::parse(resolved_options_json(sub));
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << root.dump(2) << "\n";
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace featgan::cli
