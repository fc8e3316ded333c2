// Copyright 2026 The latticeshuttle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "latticeshuttle/sweep.hpp"

namespace latticeshuttle {

/// Keys accepted in config files; flags use the same names with '-' for '_'
/// (`tol` is --tol, `out` is --out).
const std::vector<std::string>& config_keys();

/// Sets one field from its text form. Lists (sites, tau_over_th) are
/// comma-separated. Throws ConfigError for unknown keys or bad values.
void apply_config_value(SweepConfig& cfg, const std::string& key,
                        const std::string& value);

/// Parses "key=value" lines on top of `base`. Blank lines and text after
/// '#' are ignored. Errors cite "<origin>:<line>".
SweepConfig parse_config_text(const std::string& text, const std::string& origin,
                              SweepConfig base = {});

/// Reads and parses a config file.
SweepConfig parse_config(const std::string& path, SweepConfig base = {});

/// Every field as "key=value" lines; parse_config_text reads it back to an
/// equal config.
std::string format_config(const SweepConfig& cfg);

}  // namespace latticeshuttle
