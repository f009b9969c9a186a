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

#include "flags.hpp"

namespace dawct::cli {

struct StylizeArgs {
  std::string content, style, depth_content, depth_style, output;
  EngineFlags engine;
  CommonFlags common;
};

struct FuseArgs {
  std::string content_features, style_features, depth_content, output;
  std::string style_image, depth_style;
  EngineFlags engine;
  CommonFlags common;
};

struct WaterbodyArgs {
  std::string style, depth_style, mask_out;
  EngineFlags engine;
  CommonFlags common;
};

struct WeightsArgs {
  std::string depth, output;
  EngineFlags engine;
  CommonFlags common;
};

struct MetricsArgs {
  std::string a, b, list;
  bool normalize = false;
  CommonFlags common;
};

struct LossesArgs {
  std::string a, b;
  std::string emb_a, emb_b, feat_a, feat_b, percept_a, percept_b;
  int stage = 0;
  std::vector<double> weights;  // optional extra, unweighted sums are the default
  CommonFlags common;
};

struct StatsArgs {
  std::vector<std::string> images;
  std::string list, output;
  int components = 2;
  CommonFlags common;
};

// Each returns the process exit code on success and throws dawct::Error
// subclasses on failure.
int run_stylize(const StylizeArgs& args);
int run_fuse_features(const FuseArgs& args);
int run_waterbody(const WaterbodyArgs& args);
int run_weights(const WeightsArgs& args);
int run_metrics(const MetricsArgs& args);
int run_losses(const LossesArgs& args);
int run_stats(const StatsArgs& args);

}  // namespace dawct::cli
