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

#include "flags.hpp"

#include <algorithm>
#include <fstream>

#include "dawct/error.hpp"

namespace dawct::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

DawctConfig EngineFlags::to_config() const {
  DawctConfig cfg;
  cfg.alpha = alpha;
  cfg.scales = scales;
  cfg.scale_weights = scale_weights;
  cfg.depth.k_base = k_base;
  cfg.depth.pool_kernel = pool_kernel;
  cfg.depth.farther_is_styled = !eq6_literal;
  if (tau_override_opt != nullptr && tau_override_opt->count() > 0) cfg.depth.tau_override = tau_override;
  cfg.use_waterbody_mask = !no_waterbody_mask;
  cfg.apply_guided_filter = !no_guided_filter;
  cfg.gif.radius = gif_radius;
  cfg.gif.epsilon = gif_eps;
  cfg.patch_radius = patch_radius;
  cfg.far_fraction = far_fraction;
  cfg.bg_margin = bg_margin;
  return cfg;
}

void add_depth_flags(CLI::App& app, EngineFlags& f) {
  app.add_option("--k-base", f.k_base, "Sigmoid sharpness numerator")->capture_default_str();
  f.tau_override_opt =
      app.add_option("--tau-override", f.tau_override, "Fixed depth threshold in [0,1] instead of Otsu");
  app.add_option("--pool-kernel", f.pool_kernel, "Odd box size for depth statistics")
      ->capture_default_str();
  app.add_flag("--eq6-literal", f.eq6_literal,
               "Use the printed sigmoid sign: nearer pixels receive the style");
}

void add_waterbody_flags(CLI::App& app, EngineFlags& f) {
  app.add_option("--far-fraction", f.far_fraction, "Fraction of deepest style pixels for B_s")
      ->capture_default_str();
  app.add_option("--bg-margin", f.bg_margin, "Bluish-green margin: B, G >= R + margin")
      ->capture_default_str();
}

void add_engine_flags(CLI::App& app, EngineFlags& f) {
  app.add_option("--alpha", f.alpha, "Style strength in [0,1]")->capture_default_str();
  app.add_option("--scales", f.scales, "Comma-separated scale factors")->delimiter(',')
      ->capture_default_str();
  app.add_option("--scale-weights", f.scale_weights, "Comma-separated weights (default uniform)")
      ->delimiter(',');
  add_depth_flags(app, f);
  add_waterbody_flags(app, f);
  app.add_flag("--no-waterbody-mask", f.no_waterbody_mask, "Use full-image style statistics");
  app.add_option("--gif-radius", f.gif_radius, "Guided filter radius")->capture_default_str();
  app.add_option("--gif-eps", f.gif_eps, "Guided filter epsilon")->capture_default_str();
  app.add_flag("--no-guided-filter", f.no_guided_filter, "Skip guided-filter smoothing");
  app.add_option("--patch-radius", f.patch_radius, "Pixel-feature neighbourhood radius")
      ->capture_default_str();
}

void add_common_flags(CLI::App& app, CommonFlags& f) {
  app.add_option("--report", f.report, "Write a JSON report to PATH");
  app.add_option("--threads", f.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--seed", f.seed, "Reserved; the pipeline is deterministic");
  app.add_option("--config", f.config, "key=value file; command-line flags take precedence");
}

nlohmann::json depth_config_json(const DepthGuidanceConfig& cfg) {
  nlohmann::json j;
  j["k_base"] = cfg.k_base;
  j["k_eps"] = cfg.k_eps;
  j["pool_kernel"] = cfg.pool_kernel;
  j["otsu_bins"] = cfg.otsu_bins;
  j["tau_override"] = cfg.tau_override ? nlohmann::json(*cfg.tau_override) : nlohmann::json(nullptr);
  j["eq6_literal"] = !cfg.farther_is_styled;
  return j;
}

nlohmann::json config_json(const DawctConfig& cfg) {
  nlohmann::json j;
  j["alpha"] = cfg.alpha;
  j["scales"] = cfg.scales;
  j["scale_weights"] = cfg.effective_scale_weights();
  j["depth"] = depth_config_json(cfg.depth);
  j["eps_relative"] = cfg.eps;
  j["use_waterbody_mask"] = cfg.use_waterbody_mask;
  j["far_fraction"] = cfg.far_fraction;
  j["bg_margin"] = cfg.bg_margin;
  j["apply_guided_filter"] = cfg.apply_guided_filter;
  j["gif_radius"] = cfg.gif.radius;
  j["gif_eps"] = cfg.gif.epsilon;
  j["patch_radius"] = cfg.patch_radius;
  return j;
}

std::vector<std::string> config_file_args(const std::string& path, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::vector<std::string> args;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string name = "--" + key;
    if (key == "config") continue;
    const CLI::Option* opt = nullptr;
    try {
      opt = sub.get_option(name);
    } catch (const CLI::OptionNotFound&) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;  // given on the command line
    // CLI11 takes --name=value for flags (true/false) and delimited lists alike.
    args.push_back(name + "=" + value);
  }
  return args;
}

}  // namespace dawct::cli
