#pragma once

// Built-in verification suite behind the `selftest` command.

#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "skeltex/config.hpp"
#include "skeltex/encode.hpp"
#include "skeltex/features.hpp"
#include "skeltex/fixtures.hpp"
#include "skeltex/fusion.hpp"
#include "skeltex/geometry.hpp"
#include "skeltex/image.hpp"
#include "skeltex/image_set.hpp"
#include "skeltex/preprocess.hpp"
#include "skeltex/selection.hpp"
#include "skeltex/synthetic.hpp"
#include "skeltex/testing/oracles.hpp"

namespace skeltex {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline void run_check(SelftestReport& report, std::string name, const std::function<std::string()>& body) {
  CheckResult r{std::move(name), false, {}};
  try {
    r.detail = body();
    r.passed = r.detail.empty() || r.detail.rfind("ok", 0) == 0;
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  report.checks.push_back(std::move(r));
}

inline SkeletonSequence transform_sequence(const SkeletonSequence& seq, const testing::RigidMotion& m,
                                           double scale = 1.0) {
  SkeletonSequence out = seq;
  for (auto& f : out.frames)
    for (auto& b : f.bodies)
      for (auto& p : b.joints) p = m.apply(p * scale);
  return out;
}

}  // namespace detail

inline SelftestReport run_selftest(const PipelineConfig& config, const std::filesystem::path& golden_dir) {
  SelftestReport report;
  const auto& tables = config.selection;

  struct Dim {
    Family family;
    Strategy strategy;
    std::size_t expected;  // feature dimension; 0 = report only
  };
  const Dim dim_checks[] = {
      {Family::kJJd, Strategy::kFull, 1225},   {Family::kJJv, Strategy::kFull, 3675},
      {Family::kJJo, Strategy::kFull, 3675},   {Family::kJLd, Strategy::kFull, 58800},
      {Family::kLLa, Strategy::kFull, 749700}, {Family::kJJd, Strategy::kJS1, 600},
      {Family::kJJd, Strategy::kJS2, 276},     {Family::kJJd, Strategy::kJS3, 231},
      {Family::kJLd, Strategy::kLS1, 897},     {Family::kLLa, Strategy::kLS1, 741},
      {Family::kJLd, Strategy::kLS2, 0},
  };
  for (const auto& d : dim_checks) {
    detail::run_check(report,
                      "dimension " + std::string(to_string(d.family)) + "-" + std::string(to_string(d.strategy)),
                      [&]() -> std::string {
                        const auto plan = build_selection_plan(d.family, d.strategy, tables);
                        if (d.expected == 0) return "ok: " + std::to_string(plan.dimension()) + " (reported)";
                        if (plan.dimension() != d.expected)
                          return "got " + std::to_string(plan.dimension()) + ", expected " +
                                 std::to_string(d.expected);
                        return "ok: " + std::to_string(plan.dimension());
                      });
  }

  detail::run_check(report, "geometry oracles", [] {
    testing::Rng rng(2024);
    double worst_jl = 0.0, worst_la = 0.0, worst_jj = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vec3 a = rng.point(), b = rng.point(), c = rng.point();
      worst_jj = std::max(worst_jj, std::abs(jj_distance(a, b) - testing::distance_oracle(a, b)));
      worst_jl = std::max(worst_jl, std::abs(jl_distance(a, b, c) - testing::line_distance_oracle(a, b, c)));
      const Vec3 u = rng.unit(), v = rng.unit();
      worst_la = std::max(worst_la, std::abs(ll_angle(u, v) - testing::angle_oracle(u, v)));
    }
    if (worst_jj > 1e-12 || worst_jl > 1e-9 || worst_la > 1e-9)
      return "max errors jj=" + std::to_string(worst_jj) + " jl=" + std::to_string(worst_jl) +
             " la=" + std::to_string(worst_la);
    return std::string("ok");
  });

  std::optional<ImageSetEncoder> built;
  detail::run_check(report, "image set configuration", [&] {
    built.emplace(tables, config.image_size);
    return std::string("ok");
  });
  if (!built) return report;
  const ImageSetEncoder& encoder = *built;

  detail::run_check(report, "rigid-motion invariance", [&] {
    testing::Rng rng(77);
    const std::vector<std::string> labels{"JJd-JS1-EM1", "JJd-JS3-EM1", "JLd-LS2-EM1", "JLd-LS1-EM3",
                                          "LLa-LS1-EM3", "Com-EM4"};
    for (int s = 0; s < 3; ++s) {
      const auto seq = synthesize_sequence(s, 100 + s, 20);
      const auto base = encoder.generate(preprocess(seq), labels);
      for (int k = 0; k < 2; ++k) {
        const auto moved = encoder.generate(preprocess(detail::transform_sequence(seq, testing::random_rigid_motion(rng))), labels);
        for (std::size_t i = 0; i < labels.size(); ++i)
          if (!(moved[i].image == base[i].image)) return labels[i] + " changed under rigid motion";
      }
    }
    return std::string("ok");
  });

  detail::run_check(report, "scale covariance", [&] {
    const auto seq = synthesize_sequence(1, 9, 12);
    std::vector<Pose> poses;
    for (const auto& f : seq.frames) poses.push_back(f.bodies.front().joints);
    std::vector<Pose> scaled = poses;
    for (auto& p : scaled)
      for (auto& j : p) j = j * 2.5;
    for (Family f : {Family::kJJd, Family::kJLd, Family::kJJo, Family::kLLa}) {
      const auto plan = build_selection_plan(f, f == Family::kJLd || f == Family::kLLa ? Strategy::kLS1 : Strategy::kJS1, tables);
      const auto m0 = extract_features(poses, poses, plan);
      const auto m1 = extract_features(scaled, scaled, plan);
      const double factor = (f == Family::kJJd || f == Family::kJLd) ? 2.5 : 1.0;
      for (std::size_t i = 0; i < m0.values.size(); ++i)
        if (std::abs(m1.values[i] - factor * m0.values[i]) > 1e-9)
          return std::string(to_string(f)) + " violates scale covariance";
    }
    return std::string("ok");
  });

  detail::run_check(report, "fusion", [] {
    testing::Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<ScoreVector> vs;
      std::vector<std::vector<double>> raw;
      for (int k = 0; k < 5; ++k) {
        ScoreVector v{"m" + std::to_string(k), {}};
        for (int c = 0; c < 6; ++c) v.scores.push_back(rng.uniform(0.0, 1.0));
        raw.push_back(v.scores);
        vs.push_back(v);
      }
      const auto fused = multiply_fuse(vs);
      const auto oracle = testing::product_fold(raw);
      for (std::size_t i = 0; i < fused.size(); ++i)
        if (std::abs(fused[i] - oracle[i]) > 1e-12) return std::string("fold mismatch");
      const std::size_t before = predict(fused);
      vs[trial % 5].scores = [&] {
        auto s = vs[trial % 5].scores;
        const double c = rng.uniform(0.01, 100.0);
        for (double& x : s) x *= c;
        return s;
      }();
      if (predict(multiply_fuse(vs)) != before) return std::string("argmax changed under positive rescaling");
    }
    return std::string("ok");
  });

  detail::run_check(report, "degenerate robustness", [&] {
    SkeletonSequence still;
    still.source_id = "still";
    still.frames.push_back(synthesize_sequence(0, 1, 2, {.amplitude_scale = 0.0, .noise = 0.0}).frames[0]);
    for (const auto& seq : {still, synthesize_sequence(3, 2, 6)}) {
      const auto images = encoder.generate(preprocess(seq));
      if (images.size() != kImageTypeCount) return std::string("expected 13 images");
      for (const auto& li : images)
        if (li.image.height != config.image_size.height || li.image.width != config.image_size.width)
          return li.label + " has the wrong size";
    }
    return std::string("ok");
  });

  // Golden images are defined for the default tables at 256x256.
  const ImageSetEncoder golden_encoder(SelectionTables::defaults(), ImageSize{});
  for (const auto& fixture : builtin_fixtures()) {
    const NormalizedSequence ns = preprocess(fixture);
    for (const auto& spec : kImageSpecs) {
      const std::string name = image_filename(fixture.source_id, spec.label);
      detail::run_check(report, "golden " + name, [&]() -> std::string {
        const auto path = golden_dir / name;
        if (!std::filesystem::exists(path)) return "missing golden file " + path.string();
        if (encode_png(golden_encoder.encode(ns, spec.label)) != read_file_bytes(path))
          return "image " + std::string(spec.label) + " differs from " + path.string();
        return "ok";
      });
    }
  }
  return report;
}

/// Regenerates the golden images of the built-in fixtures into `dir`.
inline std::vector<std::filesystem::path> write_golden_images(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const ImageSetEncoder encoder(SelectionTables::defaults(), ImageSize{});
  std::vector<std::filesystem::path> written;
  for (const auto& fixture : builtin_fixtures()) {
    const NormalizedSequence ns = preprocess(fixture);
    for (const auto& li : encoder.generate(ns)) {
      const auto path = dir / image_filename(fixture.source_id, li.label);
      write_png(path, li.image);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace skeltex
