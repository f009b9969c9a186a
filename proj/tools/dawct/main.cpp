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

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dawct/error.hpp"
#include "flags.hpp"

namespace {

// Stable exit codes.
constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kInput = 2;
constexpr int kConstraint = 3;

int report_error(const char* kind, const std::exception& e, int code) {
  std::cerr << "dawct: " << kind << ": " << e.what() << "\n";
  return code;
}

template <class Fn>
int guarded(Fn fn) {
  try {
    return fn();
  } catch (const dawct::NumericalFailure& e) {
    return report_error("numerical failure", e, kNumerical);
  } catch (const dawct::IoError& e) {
    return report_error("i/o error", e, kInput);
  } catch (const dawct::FormatError& e) {
    return report_error("format error", e, kInput);
  } catch (const dawct::MissingComponent& e) {
    return report_error("missing component", e, kConstraint);
  } catch (const dawct::InvalidArgument& e) {
    return report_error("invalid argument", e, kConstraint);
  } catch (const dawct::DegenerateStatistics& e) {
    return report_error("degenerate statistics", e, kConstraint);
  } catch (const std::exception& e) {
    return report_error("internal error", e, kNumerical);
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dawct::cli;

  CLI::App app{"Depth-aware whitening/coloring transfer of underwater waterbody style"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dawct 0.1.0");

  StylizeArgs st;
  auto* stylize = app.add_subcommand("stylize", "Transfer the waterbody style onto a content image");
  stylize->add_option("content", st.content, "Content PNG")->required();
  stylize->add_option("style", st.style, "Style PNG")->required();
  stylize->add_option("depth_content", st.depth_content, "Content depth (PNG or UST1)")->required();
  stylize->add_option("depth_style", st.depth_style, "Style depth (PNG or UST1)")->required();
  stylize->add_option("-o,--output", st.output, "Output PNG")->required();
  add_engine_flags(*stylize, st.engine);
  add_common_flags(*stylize, st.common);

  FuseArgs fu;
  auto* fuse = app.add_subcommand("fuse-features", "Fuse external encoder feature tensors");
  fuse->add_option("content_features", fu.content_features, "Content features (UST1, C x H x W)")
      ->required();
  fuse->add_option("style_features", fu.style_features, "Style features (UST1)")->required();
  fuse->add_option("depth_content", fu.depth_content, "Content depth (PNG or UST1)")->required();
  fuse->add_option("-o,--output", fu.output, "Fused tensor (UST1)")->required();
  fuse->add_option("--style-image", fu.style_image, "Style PNG for the waterbody mask");
  fuse->add_option("--depth-style", fu.depth_style, "Style depth for the waterbody mask");
  add_engine_flags(*fuse, fu.engine);
  add_common_flags(*fuse, fu.common);

  WaterbodyArgs wb;
  auto* water = app.add_subcommand("waterbody", "Estimate the background color B_s and waterbody mask");
  water->add_option("style", wb.style, "Style PNG")->required();
  water->add_option("depth_style", wb.depth_style, "Style depth (PNG or UST1)")->required();
  water->add_option("--mask-out", wb.mask_out, "Write the mask as an 8-bit PNG");
  add_waterbody_flags(*water, wb.engine);
  add_common_flags(*water, wb.common);

  WeightsArgs we;
  auto* weights = app.add_subcommand("weights", "Compute the depth weight map");
  weights->add_option("depth", we.depth, "Depth (PNG or UST1)")->required();
  weights->add_option("-o,--output", we.output, "16-bit grayscale PNG")->required();
  add_depth_flags(*weights, we.engine);
  add_common_flags(*weights, we.common);

  MetricsArgs me;
  auto* metrics = app.add_subcommand("metrics", "RMSE, PSNR, SSIM and GMSD as JSON lines");
  metrics->add_option("a", me.a, "Reference PNG");
  metrics->add_option("b", me.b, "Test PNG");
  metrics->add_option("--list", me.list, "File with one 'A B' pair per line");
  metrics->add_flag("--normalize-640x480", me.normalize, "Resample both images to 640x480 first");
  add_common_flags(*metrics, me.common);

  LossesArgs lo;
  auto* losses = app.add_subcommand("losses", "Loss components and stage aggregates");
  losses->add_option("a", lo.a, "First PNG")->required();
  losses->add_option("b", lo.b, "Second PNG")->required();
  losses->add_option("--emb-a", lo.emb_a, "Embedding of a (1-D UST1)");
  losses->add_option("--emb-b", lo.emb_b, "Embedding of b (1-D UST1)");
  losses->add_option("--feat-a", lo.feat_a, "Feature tensor of a");
  losses->add_option("--feat-b", lo.feat_b, "Feature tensor of b");
  losses->add_option("--percept-a", lo.percept_a, "Perceptual feature tensor of a");
  losses->add_option("--percept-b", lo.percept_b, "Perceptual feature tensor of b");
  losses->add_option("--stage", lo.stage, "Training stage 0..4")->capture_default_str();
  losses->add_option("--weights", lo.weights,
                     "Optional term weights r,ssim,color,fft,clip,feat,percept (not part of the method)")
      ->delimiter(',');
  add_common_flags(*losses, lo.common);

  StatsArgs sa;
  auto* stats = app.add_subcommand("stats", "Color signatures and their PCA projection as CSV");
  stats->add_option("images", sa.images, "PNG files");
  stats->add_option("--list", sa.list, "File with one image path per line");
  stats->add_option("-o,--output", sa.output, "CSV path (default stdout)");
  stats->add_option("--components", sa.components, "PCA projections per row")->capture_default_str();
  add_common_flags(*stats, sa.common);

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);  // CLI11 wants reverse order
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  // Config file values fill in whatever the command line left unset.
  for (CLI::App* sub : app.get_subcommands()) {
    const CLI::Option* cfg = sub->get_option("--config");
    if (cfg->count() == 0) continue;
    std::vector<std::string> extra;
    const int code = guarded([&] {
      extra = config_file_args(cfg->as<std::string>(), *sub);
      return kOk;
    });
    if (code != kOk) return code;
    if (extra.empty()) break;
    std::vector<std::string> merged;
    for (int i = 1; i < argc; ++i) merged.emplace_back(argv[i]);
    merged.insert(merged.end(), extra.begin(), extra.end());
    std::reverse(merged.begin(), merged.end());
    app.clear();
    try {
      app.parse(merged);
    } catch (const CLI::ParseError& e) {
      const int c = app.exit(e);
      return c == 0 ? kOk : kInput;
    }
    break;
  }

  if (stylize->parsed()) return guarded([&] { return run_stylize(st); });
  if (fuse->parsed()) return guarded([&] { return run_fuse_features(fu); });
  if (water->parsed()) return guarded([&] { return run_waterbody(wb); });
  if (weights->parsed()) return guarded([&] { return run_weights(we); });
  if (metrics->parsed()) return guarded([&] { return run_metrics(me); });
  if (losses->parsed()) return guarded([&] { return run_losses(lo); });
  if (stats->parsed()) return guarded([&] { return run_stats(sa); });
  return kInput;
}
