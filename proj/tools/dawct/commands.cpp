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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "dawct/color_stats.hpp"
#include "dawct/depth_guidance.hpp"
#include "dawct/error.hpp"
#include "dawct/io.hpp"
#include "dawct/losses.hpp"
#include "dawct/metrics.hpp"
#include "dawct/parallel.hpp"
#include "dawct/resample.hpp"
#include "dawct/waterbody.hpp"

namespace dawct::cli {
namespace {

using nlohmann::json;

constexpr int kNormHeight = 480;
constexpr int kNormWidth = 640;

void apply_threads(const CommonFlags& c) {
  if (c.threads < 0) throw InvalidArgument("--threads must be >= 0");
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  set_thread_count(c.threads == 0 ? static_cast<int>(hw) : c.threads);
}

json common_json(const CommonFlags& c) {
  return {{"threads", thread_count()}, {"seed", c.seed}};
}

void write_json(const std::string& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_text(const std::string& path, const std::string& text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

json rgb_json(const std::array<double, 3>& c) { return json::array({c[0], c[1], c[2]}); }

json depth_params_json(const DepthGuidanceParams& p) {
  return {{"tau", p.tau}, {"k", p.k}, {"mu_d", p.mu_d}, {"sigma_d", p.sigma_d},
          {"pool_kernel", p.pool_kernel}, {"eq6_literal", !p.farther_is_styled}};
}

json waterbody_json(const WaterbodyEstimate& wb) {
  return {{"B_s", rgb_json(wb.background_color)},
          {"mask_source", std::string(to_string(wb.source))},
          {"mask_pixels", wb.mask.count()},
          {"far_fraction", wb.far_fraction}};
}

json fusion_json(const FusionTrace& trace, json& report) {
  json scales = json::array();
  const ScaleTrace* finest = nullptr;
  for (const auto& s : trace.scales) {
    scales.push_back({{"scale", s.scale}, {"height", s.height}, {"width", s.width},
                      {"depth", depth_params_json(s.depth)}});
    if (finest == nullptr || s.scale > finest->scale) finest = &s;
  }
  if (finest != nullptr) {
    report["tau"] = finest->depth.tau;
    report["k"] = finest->depth.k;
    report["mu_d"] = finest->depth.mu_d;
    report["sigma_d"] = finest->depth.sigma_d;
  }
  return scales;
}

json metric_json(const MetricReport& m) {
  json j;
  j["rmse"] = m.rmse;
  // JSON has no infinity; identical images report the string "inf".
  if (std::isinf(m.psnr)) {
    j["psnr"] = "inf";
  } else {
    j["psnr"] = m.psnr;
  }
  j["ssim"] = m.ssim;
  j["gmsd"] = m.gmsd;
  return j;
}

std::vector<std::string> read_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open list file " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    lines.push_back(line.substr(b));
  }
  return lines;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Runs fn(i) for every item, keeping per-item results in input order. The
// first failure (by index) is rethrown after the successful prefix has
// been handed to emit.
template <class Fn, class Emit>
void ordered_batch(std::size_t n, Fn fn, Emit emit) {
  std::vector<std::string> out(n);
  std::vector<std::exception_ptr> errors(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    emit(out[i]);
  }
}

}  // namespace

int run_stylize(const StylizeArgs& args) {
  const DawctConfig cfg = args.engine.to_config();
  cfg.validate();
  apply_threads(args.common);

  const LoadedImage content = load_image(args.content);
  const LoadedImage style = load_image(args.style);
  const DepthMap d_c = load_depth(args.depth_content);
  const DepthMap d_s = load_depth(args.depth_style);

  StylizeTrace trace;
  const ImageBuffer out = stylize(content.image, style.image, d_c, d_s, cfg, &trace);
  save_image(args.output, out, content.bit_depth);

  if (!args.common.report.empty()) {
    json report;
    report["command"] = "stylize";
    report["inputs"] = {{"content", args.content}, {"style", args.style},
                        {"depth_content", args.depth_content}, {"depth_style", args.depth_style}};
    report["output"] = args.output;
    report["output_bit_depth"] = content.bit_depth;
    report["content_size"] = {content.image.height(), content.image.width()};
    report["style_size"] = {style.image.height(), style.image.width()};
    report["config"] = config_json(cfg);
    report["run"] = common_json(args.common);
    report["scales"] = fusion_json(trace.fusion, report);
    if (trace.waterbody) {
      report["B_s"] = rgb_json(trace.waterbody->background_color);
      report["waterbody"] = waterbody_json(*trace.waterbody);
    }
    report["mask_pixels"] = trace.mask_pixels;
    report["timings_ms"] = trace.timings_ms;
    write_json(args.common.report, report);
  }
  return 0;
}

int run_fuse_features(const FuseArgs& args) {
  const DawctConfig cfg = args.engine.to_config();
  cfg.validate();
  if (args.style_image.empty() != args.depth_style.empty()) {
    throw InvalidArgument("--style-image and --depth-style must be given together");
  }
  apply_threads(args.common);

  const RawTensor raw_c = read_tensor_file(args.content_features);
  const FeatureTensor f_c = to_feature_tensor(raw_c);
  const FeatureTensor f_s = to_feature_tensor(read_tensor_file(args.style_features));
  if (f_c.channels() != f_s.channels()) {
    throw FormatError("feature tensors have " + std::to_string(f_c.channels()) + " and " +
                      std::to_string(f_s.channels()) + " channels");
  }
  const DepthMap d_c = load_depth(args.depth_content);

  std::optional<WaterbodyEstimate> wb;
  if (!args.style_image.empty() && cfg.use_waterbody_mask) {
    const ImageBuffer style = load_image(args.style_image).image;
    const DepthMap d_s = resize_bilinear(load_depth(args.depth_style), style.height(), style.width());
    wb = estimate_waterbody(style, d_s, cfg.far_fraction, cfg.bg_margin);
  }

  FusionTrace trace;
  const FeatureTensor fused = dawct_multiscale(f_c, f_s, d_c, wb ? &*wb : nullptr, cfg, &trace);
  RawTensor raw_out = to_raw_tensor(fused);
  if (raw_c.dims.size() == 2) raw_out.dims = raw_c.dims;
  write_tensor_file(args.output, raw_out);

  if (!args.common.report.empty()) {
    json report;
    report["command"] = "fuse-features";
    report["inputs"] = {{"content_features", args.content_features},
                        {"style_features", args.style_features},
                        {"depth_content", args.depth_content}};
    report["output"] = args.output;
    report["dims"] = raw_out.dims;
    report["config"] = config_json(cfg);
    report["run"] = common_json(args.common);
    report["scales"] = fusion_json(trace, report);
    if (wb) {
      report["B_s"] = rgb_json(wb->background_color);
      report["waterbody"] = waterbody_json(*wb);
    }
    write_json(args.common.report, report);
  }
  return 0;
}

int run_waterbody(const WaterbodyArgs& args) {
  const DawctConfig cfg = args.engine.to_config();
  if (!(cfg.far_fraction > 0.0 && cfg.far_fraction <= 1.0)) {
    throw InvalidArgument("--far-fraction must be in (0, 1]");
  }
  apply_threads(args.common);

  const ImageBuffer style = load_image(args.style).image;
  const DepthMap d_s = resize_bilinear(load_depth(args.depth_style), style.height(), style.width());
  const WaterbodyEstimate wb = estimate_waterbody(style, d_s, cfg.far_fraction, cfg.bg_margin);

  if (!args.mask_out.empty()) {
    Plane m(wb.mask.height(), wb.mask.width());
    for (std::size_t i = 0; i < m.size(); ++i) m.values()[i] = wb.mask.selected(i) ? 1.0 : 0.0;
    write_file_atomic(args.mask_out, encode_png_gray(m, 8));
  }

  json report = waterbody_json(wb);
  report["command"] = "waterbody";
  report["inputs"] = {{"style", args.style}, {"depth_style", args.depth_style}};
  report["bg_margin"] = cfg.bg_margin;
  report["run"] = common_json(args.common);
  if (!args.common.report.empty()) write_json(args.common.report, report);
  std::cout << report.dump() << "\n";
  return 0;
}

int run_weights(const WeightsArgs& args) {
  const DawctConfig cfg = args.engine.to_config();
  cfg.depth.validate();
  apply_threads(args.common);

  const DepthMap d = load_depth(args.depth);
  const DepthGuidanceParams params = derive_depth_params(d, cfg.depth);
  const WeightMap w = depth_weight_map(d, params);
  write_file_atomic(args.output, encode_png_gray(w.plane(), 16));

  json report = depth_params_json(params);
  report["command"] = "weights";
  report["input"] = args.depth;
  report["output"] = args.output;
  report["config"] = depth_config_json(cfg.depth);
  report["run"] = common_json(args.common);
  if (!args.common.report.empty()) write_json(args.common.report, report);
  std::cout << report.dump() << "\n";
  return 0;
}

int run_metrics(const MetricsArgs& args) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!args.list.empty()) {
    if (!args.a.empty() || !args.b.empty()) throw InvalidArgument("give either A B or --list, not both");
  } else if (args.a.empty() || args.b.empty()) {
    throw InvalidArgument("metrics needs two images or --list FILE");
  }
  apply_threads(args.common);

  if (!args.list.empty()) {
    for (const auto& line : read_list(args.list)) {
      std::istringstream is(line);
      std::string a, b, extra;
      if (!(is >> a >> b) || (is >> extra)) throw FormatError("list line must hold two paths: " + line);
      pairs.emplace_back(a, b);
    }
  } else {
    pairs.emplace_back(args.a, args.b);
  }

  // Pairs already run in parallel; keep per-pair kernels sequential.
  const int workers = thread_count();
  if (pairs.size() > 1) set_thread_count(1);
  std::vector<std::string> lines;
  try {
    ordered_batch(
        pairs.size(),
        [&](std::size_t i) {
          ImageBuffer a = load_image(pairs[i].first).image;
          ImageBuffer b = load_image(pairs[i].second).image;
          if (args.normalize) {
            a = resize_bilinear(a, kNormHeight, kNormWidth);
            b = resize_bilinear(b, kNormHeight, kNormWidth);
          }
          json j = metric_json(evaluate(a, b));
          j["a"] = pairs[i].first;
          j["b"] = pairs[i].second;
          j["normalized_640x480"] = args.normalize;
          return j.dump();
        },
        [&](const std::string& line) {
          std::cout << line << "\n";
          lines.push_back(line);
        });
  } catch (...) {
    set_thread_count(workers);
    throw;
  }
  set_thread_count(workers);
  if (!args.common.report.empty()) {
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    write_text(args.common.report, text);
  }
  return 0;
}

int run_losses(const LossesArgs& args) {
  if (args.stage < 0 || args.stage > 4) throw InvalidArgument("--stage must be in 0..4");
  if (!args.weights.empty() && args.weights.size() != 7) {
    throw InvalidArgument("--weights needs 7 values: r,ssim,color,fft,clip,feat,percept");
  }
  auto paired = [](const std::string& x, const std::string& y, const char* what) {
    if (x.empty() != y.empty()) throw InvalidArgument(std::string(what) + " needs both files");
    return !x.empty();
  };
  const bool has_emb = paired(args.emb_a, args.emb_b, "--emb-a/--emb-b");
  const bool has_feat = paired(args.feat_a, args.feat_b, "--feat-a/--feat-b");
  const bool has_percept = paired(args.percept_a, args.percept_b, "--percept-a/--percept-b");
  apply_threads(args.common);

  const ImageBuffer a = load_image(args.a).image;
  const ImageBuffer b = load_image(args.b).image;
  LossReport r;
  r.l_r = mse_loss(a, b);
  r.l_ssim = ssim_loss(a, b);
  r.l_color = lab_color_loss(a, b);
  r.l_fft = fft_loss(a, b);
  if (has_emb) {
    r.l_clip = clip_loss(to_vector(read_tensor_file(args.emb_a)), to_vector(read_tensor_file(args.emb_b)));
  }
  if (has_feat) {
    r.l_feat = tensor_l2_loss(to_feature_tensor(read_tensor_file(args.feat_a)),
                              to_feature_tensor(read_tensor_file(args.feat_b)));
  }
  if (has_percept) {
    r.l_percept = tensor_l2_loss(to_feature_tensor(read_tensor_file(args.percept_a)),
                                 to_feature_tensor(read_tensor_file(args.percept_b)));
  }

  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json report;
  report["command"] = "losses";
  report["stage"] = args.stage;
  report["components"] = {{"l_r", opt(r.l_r)},         {"l_ssim", opt(r.l_ssim)},
                          {"l_color", opt(r.l_color)}, {"l_fft", opt(r.l_fft)},
                          {"l_clip", opt(r.l_clip)},   {"l_feat", opt(r.l_feat)},
                          {"l_percept", opt(r.l_percept)}};
  const AggregateLoss agg = aggregate_losses(r, args.stage);
  report["l0"] = agg.l0;
  report["lN"] = opt(agg.lN);
  if (!args.weights.empty()) {
    const auto& w = args.weights;
    const double l0 = w[0] * *r.l_r + w[1] * *r.l_ssim + w[2] * *r.l_color + w[3] * *r.l_fft +
                      w[4] * *r.l_clip;
    json weighted = {{"weights", w}, {"l0", l0}, {"lN", nullptr}};
    if (agg.lN) weighted["lN"] = l0 + w[5] * *r.l_feat + w[6] * *r.l_percept;
    report["weighted_extra"] = weighted;
  }
  report["run"] = common_json(args.common);
  if (!args.common.report.empty()) write_json(args.common.report, report);
  std::cout << report.dump() << "\n";
  return 0;
}

int run_stats(const StatsArgs& args) {
  if (args.components < 1 || args.components > static_cast<int>(ColorSignature::kSize)) {
    throw InvalidArgument("--components must be in 1..8");
  }
  apply_threads(args.common);
  std::vector<std::string> paths = args.images;
  if (!args.list.empty()) {
    for (const auto& p : read_list(args.list)) paths.push_back(p);
  }
  if (paths.size() < 2) throw InvalidArgument("stats needs at least 2 images");

  std::vector<ColorSignature> sigs(paths.size());
  const int workers = thread_count();
  set_thread_count(1);
  try {
    ordered_batch(
        paths.size(),
        [&](std::size_t i) {
          sigs[i] = color_signature(load_image(paths[i]).image);
          return std::string();
        },
        [](const std::string&) {});
  } catch (...) {
    set_thread_count(workers);
    throw;
  }
  set_thread_count(workers);

  const PcaResult p = pca(sigs, ColorSignature::kSize);
  std::ostringstream csv;
  csv.precision(17);
  csv << "path,mean_r,mean_g,mean_b,std_r,std_g,std_b,ratio_b_r,ratio_g_r";
  for (int k = 0; k < args.components; ++k) csv << ",pc" << (k + 1);
  csv << "\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    csv << csv_field(paths[i]);
    for (double v : sigs[i].values) csv << "," << v;
    for (int k = 0; k < args.components; ++k) csv << "," << p.projections(i, k);
    csv << "\n";
  }

  json summary;
  summary["command"] = "stats";
  summary["count"] = paths.size();
  summary["explained_variance_ratio"] = p.explained_variance_ratio;
  summary["mean"] = p.mean;
  summary["scale"] = p.scale;
  json comps = json::array();
  for (int k = 0; k < args.components; ++k) {
    std::vector<double> col(ColorSignature::kSize);
    for (std::size_t j = 0; j < ColorSignature::kSize; ++j) col[j] = p.components(j, k);
    comps.push_back(col);
  }
  summary["components"] = comps;
  summary["run"] = common_json(args.common);

  if (args.output.empty()) {
    std::cout << csv.str();
  } else {
    write_text(args.output, csv.str());
  }
  if (!args.common.report.empty()) {
    write_json(args.common.report, summary);
  } else if (!args.output.empty()) {
    std::cout << summary.dump() << "\n";
  } else {
    std::cerr << summary.dump() << "\n";
  }
  return 0;
}

}  // namespace dawct::cli
