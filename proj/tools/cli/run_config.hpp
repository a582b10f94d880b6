// Copyright 2026 The edrstream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "edr/params.hpp"

namespace edr::cli {

/// Parses a run configuration document:
///
///   {
///     "timescales": [{"tau_half": 1.0, "beta": 1, "nu_on": 0.05, "nu_off": 0.05},
///                    {"alpha": 0.166}],
///     "return_mode": "ratio" | "log",
///     "threshold_mode": "soft" | "hard",
///     "color_mode": "luma" | "per_channel",
///     "epsilon": 0.001
///   }
///
/// Each timescale gives exactly one of tau_half / alpha; beta, nu_on and
/// nu_off default to 1, 0.05, 0.05. Unknown keys and type mismatches raise
/// ParseError; out-of-domain values raise DomainError.
EdrConfig parse_run_config(std::string_view json_text);
EdrConfig load_run_config(const std::filesystem::path& path);

/// "fast-slow" (alpha 0.5 and 0.166) or "fast" (alpha 0.5).
EdrConfig preset_config(std::string_view name);

std::string run_config_to_json(const EdrConfig& config);

}  // namespace edr::cli
