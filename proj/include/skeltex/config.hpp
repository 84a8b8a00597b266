#pragma once

// Pipeline configuration, stored as JSON:
//
// {
//   "selection": {
//     "js2_joints": [12 joint indices],
//     "js3_joints": [11 joint indices],
//     "ls1_lines": [[a, b], ... 39 lines],
//     "skeleton_edges": [[a, b], ...]        // LS2 neighbourhood graph
//   },
//   "image_size": [height, width],
//   "labels": [image labels to generate],
//   "fusion_models": [image labels fused into the final score],
//   "synthetic": {"classes": 5, "per_class": 20, "frames": 48, "seed": 1, "noise": 0.002},
//   "output_dir": "out"
// }
//
// Joint indices are 0-based in the NTU order (see joints.hpp). Missing keys take
// their default values.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skeltex/encode.hpp"
#include "skeltex/error.hpp"
#include "skeltex/fusion.hpp"
#include "skeltex/image_set.hpp"
#include "skeltex/selection.hpp"

namespace skeltex {

struct SyntheticConfig {
  int classes = 5;
  int per_class = 20;
  std::size_t frames = 48;
  std::uint64_t seed = 1;
  double noise = 0.002;

  friend bool operator==(const SyntheticConfig&, const SyntheticConfig&) = default;
};

struct PipelineConfig {
  SelectionTables selection = SelectionTables::defaults();
  ImageSize image_size{};
  std::vector<std::string> labels = all_image_labels();
  std::vector<std::string> fusion_models = default_fusion_models();
  SyntheticConfig synthetic{};
  std::string output_dir = "out";

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

inline void validate(const PipelineConfig& c) {
  auto check_joint = [](int j, const char* where) {
    if (j < 0 || j >= static_cast<int>(kJointCount))
      throw ConfigError(std::string(where) + ": joint index " + std::to_string(j) + " outside 0..24");
  };
  for (int j : c.selection.js2_joints) check_joint(j, "selection.js2_joints");
  for (int j : c.selection.js3_joints) check_joint(j, "selection.js3_joints");
  for (const auto& [a, b] : c.selection.ls1_lines) {
    check_joint(a, "selection.ls1_lines");
    check_joint(b, "selection.ls1_lines");
  }
  for (const auto& [a, b] : c.selection.skeleton_edges) {
    check_joint(a, "selection.skeleton_edges");
    check_joint(b, "selection.skeleton_edges");
  }
  if (c.image_size.height < 2 || c.image_size.width < 2) throw ConfigError("image_size must be at least 2x2");
  std::set<std::string> seen;
  for (const auto& l : c.labels) {
    image_spec(l);
    if (!seen.insert(l).second) throw ConfigError("labels: '" + l + "' listed twice");
  }
  for (const auto& l : c.fusion_models) image_spec(l);
  if (c.synthetic.classes < 1 || c.synthetic.per_class < 1) throw ConfigError("synthetic: counts must be positive");
  if (c.synthetic.frames < 2) throw ConfigError("synthetic.frames must be at least 2");
}

inline nlohmann::json to_json(const PipelineConfig& c) {
  using nlohmann::json;
  json lines = json::array();
  for (const auto& [a, b] : c.selection.ls1_lines) lines.push_back({a, b});
  json edges = json::array();
  for (const auto& [a, b] : c.selection.skeleton_edges) edges.push_back({a, b});
  return json{
      {"selection",
       {{"js2_joints", c.selection.js2_joints},
        {"js3_joints", c.selection.js3_joints},
        {"ls1_lines", lines},
        {"skeleton_edges", edges}}},
      {"image_size", {c.image_size.height, c.image_size.width}},
      {"labels", c.labels},
      {"fusion_models", c.fusion_models},
      {"synthetic",
       {{"classes", c.synthetic.classes},
        {"per_class", c.synthetic.per_class},
        {"frames", c.synthetic.frames},
        {"seed", c.synthetic.seed},
        {"noise", c.synthetic.noise}}},
      {"output_dir", c.output_dir},
  };
}

inline PipelineConfig config_from_json(const nlohmann::json& j) {
  PipelineConfig c;
  try {
    if (j.contains("selection")) {
      const auto& s = j.at("selection");
      if (s.contains("js2_joints")) c.selection.js2_joints = s.at("js2_joints").get<std::vector<int>>();
      if (s.contains("js3_joints")) c.selection.js3_joints = s.at("js3_joints").get<std::vector<int>>();
      if (s.contains("ls1_lines"))
        c.selection.ls1_lines = s.at("ls1_lines").get<std::vector<std::pair<int, int>>>();
      if (s.contains("skeleton_edges"))
        c.selection.skeleton_edges = s.at("skeleton_edges").get<std::vector<std::pair<int, int>>>();
    }
    if (j.contains("image_size")) {
      const auto hw = j.at("image_size").get<std::vector<std::size_t>>();
      if (hw.size() != 2) throw ConfigError("image_size must be [height, width]");
      c.image_size = {hw[0], hw[1]};
    }
    if (j.contains("labels")) c.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("fusion_models")) c.fusion_models = j.at("fusion_models").get<std::vector<std::string>>();
    if (j.contains("synthetic")) {
      const auto& s = j.at("synthetic");
      c.synthetic.classes = s.value("classes", c.synthetic.classes);
      c.synthetic.per_class = s.value("per_class", c.synthetic.per_class);
      c.synthetic.frames = s.value("frames", c.synthetic.frames);
      c.synthetic.seed = s.value("seed", c.synthetic.seed);
      c.synthetic.noise = s.value("noise", c.synthetic.noise);
    }
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  validate(c);
  return c;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace skeltex
