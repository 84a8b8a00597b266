#pragma once

// Nearest-centroid stand-in for the per-image-type CNN.
//
// Images are bilinearly downsampled to 32x32 and flattened (pixel-interleaved
// RGB, scaled to [0, 1]). Class scores are Gaussian similarities to the class
// centroids, exp(-|v - c_i|^2 / tau), with tau the mean squared distance
// between centroid pairs. Scores are strictly positive, so products of them
// never collapse to zero under multiplicative fusion.
//
// Model file (text, one record per line):
//   skeltex-centroid-model 1
//   label <image label>
//   classes <C>
//   dim <d>
//   tau <tau>
//   <C lines of d space-separated centroid values>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "skeltex/encode.hpp"
#include "skeltex/error.hpp"
#include "skeltex/fusion.hpp"
#include "skeltex/image.hpp"
#include "skeltex/skeleton.hpp"

namespace skeltex {

inline constexpr std::size_t kFeaturizeSide = 32;

inline std::vector<double> featurize(const TextureImage& img, std::size_t side = kFeaturizeSide) {
  if (img.height == 0 || img.width == 0) throw ContractError("cannot featurize an empty image");
  std::array<Grid, 3> channels;
  for (std::size_t c = 0; c < 3; ++c) {
    Grid g(img.height, img.width);
    for (std::size_t h = 0; h < img.height; ++h)
      for (std::size_t w = 0; w < img.width; ++w) g(h, w) = img.at(h, w, c) / 255.0;
    channels[c] = bilinear_resize(g, side, side);
  }
  std::vector<double> v;
  v.reserve(side * side * 3);
  for (std::size_t i = 0; i < side * side; ++i)
    for (std::size_t c = 0; c < 3; ++c) v.push_back(channels[c].values[i]);
  return v;
}

struct LabeledVector {
  std::vector<double> features;
  std::size_t label = 0;
};

struct CentroidModel {
  std::string image_label;
  std::size_t class_count = 0;
  std::size_t dim = 0;
  double tau = 1.0;
  std::vector<std::vector<double>> centroids;

  friend bool operator==(const CentroidModel&, const CentroidModel&) = default;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

/// Mean squared distance over centroid pairs; 1 when undefined or zero.
inline double centroid_bandwidth(const std::vector<std::vector<double>>& centroids) {
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < centroids.size(); ++i)
    for (std::size_t k = i + 1; k < centroids.size(); ++k) {
      sum += squared_distance(centroids[i], centroids[k]);
      ++pairs;
    }
  if (pairs == 0 || !(sum > 0.0)) return 1.0;
  return sum / static_cast<double>(pairs);
}

/// Per-class mean. Classes are 0..C-1 with C = 1 + the largest label seen.
inline CentroidModel train(std::span<const LabeledVector> samples, std::string image_label = {}) {
  if (samples.empty()) throw TrainingError("no training samples");
  CentroidModel model;
  model.image_label = std::move(image_label);
  model.dim = samples.front().features.size();
  for (const auto& s : samples) {
    if (s.features.size() != model.dim) throw TrainingError("training vectors differ in dimension");
    model.class_count = std::max(model.class_count, s.label + 1);
  }
  model.centroids.assign(model.class_count, std::vector<double>(model.dim, 0.0));
  std::vector<std::size_t> counts(model.class_count, 0);
  for (const auto& s : samples) {
    auto& c = model.centroids[s.label];
    for (std::size_t i = 0; i < model.dim; ++i) c[i] += s.features[i];
    ++counts[s.label];
  }
  for (std::size_t k = 0; k < model.class_count; ++k) {
    if (counts[k] == 0) throw TrainingError("class " + std::to_string(k) + " has no training samples");
    for (double& x : model.centroids[k]) x /= static_cast<double>(counts[k]);
  }
  model.tau = centroid_bandwidth(model.centroids);
  return model;
}

inline ScoreVector score(const CentroidModel& model, std::span<const double> v, double tau) {
  if (v.size() != model.dim)
    throw ContractError("feature vector has dimension " + std::to_string(v.size()) + ", model expects " +
                        std::to_string(model.dim));
  ScoreVector out;
  out.model_label = model.image_label;
  out.scores.reserve(model.class_count);
  for (const auto& c : model.centroids) out.scores.push_back(std::exp(-squared_distance(v, c) / tau));
  return out;
}

inline ScoreVector score(const CentroidModel& model, std::span<const double> v) { return score(model, v, model.tau); }

inline void save_model(std::ostream& out, const CentroidModel& m) {
  char buf[32];
  auto num = [&buf](double x) {
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  };
  out << "skeltex-centroid-model 1\n"
      << "label " << m.image_label << '\n'
      << "classes " << m.class_count << '\n'
      << "dim " << m.dim << '\n'
      << "tau " << num(m.tau) << '\n';
  for (const auto& c : m.centroids) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << num(c[i]);
    out << '\n';
  }
}

inline CentroidModel load_model(std::istream& in) {
  detail::LineReader reader(in);
  auto expect = [&reader](std::string_view key) {
    auto toks = reader.next();
    if (toks.empty() || toks[0] != key) throw ParseError(reader.line(), "expected '" + std::string(key) + "'");
    return std::vector<std::string>(toks.begin() + 1, toks.end());
  };
  CentroidModel m;
  if (expect("skeltex-centroid-model") != std::vector<std::string>{"1"})
    throw ParseError(reader.line(), "unsupported model version");
  const auto label = expect("label");
  m.image_label = label.empty() ? std::string() : label[0];
  auto count = [&reader](const std::vector<std::string>& f, std::size_t& out) {
    if (f.size() != 1 || !detail::parse_number(std::string_view(f[0]), out))
      throw ParseError(reader.line(), "expected one integer");
  };
  count(expect("classes"), m.class_count);
  count(expect("dim"), m.dim);
  const auto tau = expect("tau");
  if (tau.size() != 1 || !detail::parse_number(std::string_view(tau[0]), m.tau) || !(m.tau > 0.0))
    throw ParseError(reader.line(), "expected positive tau");
  for (std::size_t k = 0; k < m.class_count; ++k) {
    const auto toks = reader.next();
    if (toks.size() != m.dim)
      throw ParseError(reader.line(), "centroid " + std::to_string(k) + " has " + std::to_string(toks.size()) +
                                          " values, expected " + std::to_string(m.dim));
    std::vector<double> c(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i)
      if (!detail::parse_number(toks[i], c[i])) throw ParseError(reader.line(), "malformed centroid value");
    m.centroids.push_back(std::move(c));
  }
  return m;
}

inline void save_model_file(const std::filesystem::path& path, const CentroidModel& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  save_model(out, m);
}

inline CentroidModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return load_model(in);
}

}  // namespace skeltex
