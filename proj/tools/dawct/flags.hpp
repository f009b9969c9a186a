// Copyright 2026 The dawct Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dawct/dawct.hpp"

namespace dawct::cli {

// Flags shared by every subcommand that runs the fusion engine. Values
// are copied into a DawctConfig after parsing.
struct EngineFlags {
  double alpha = 1.0;
  std::vector<double> scales{1.0, 0.75, 0.5, 0.25};
  std::vector<double> scale_weights;
  double k_base = 10.0;
  double tau_override = 0.0;
  CLI::Option* tau_override_opt = nullptr;
  int pool_kernel = 5;
  bool eq6_literal = false;
  double far_fraction = 0.05;
  double bg_margin = 0.0;
  bool no_waterbody_mask = false;
  int gif_radius = 8;
  double gif_eps = 1e-3;
  bool no_guided_filter = false;
  int patch_radius = 0;

  DawctConfig to_config() const;
};

// Flags every subcommand accepts.
struct CommonFlags {
  std::string report;
  int threads = 0;  // 0: hardware concurrency
  long long seed = 0;
  std::string config;
};

void add_engine_flags(CLI::App& app, EngineFlags& f);
void add_depth_flags(CLI::App& app, EngineFlags& f);
void add_waterbody_flags(CLI::App& app, EngineFlags& f);
void add_common_flags(CLI::App& app, CommonFlags& f);

nlohmann::json config_json(const DawctConfig& cfg);
nlohmann::json depth_config_json(const DepthGuidanceConfig& cfg);

// Reads a key=value config file into command-line tokens ("--key=value").
// Blank lines and lines starting with '#' or ';' are skipped; a boolean
// flag is written as key=true or key=false. Keys already set on the
// parsed command line of `sub` are skipped.
std::vector<std::string> config_file_args(const std::string& path, const CLI::App& sub);

}  // namespace dawct::cli
