#pragma once

// Desk-scale end-to-end evaluation on synthetic motion classes: encode, train one
// nearest-centroid model per image type, score the held-out half, fuse.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "skeltex/baseline.hpp"
#include "skeltex/config.hpp"
#include "skeltex/fusion.hpp"
#include "skeltex/image_set.hpp"
#include "skeltex/preprocess.hpp"
#include "skeltex/synthetic.hpp"

namespace skeltex {

struct SyntheticSample {
  std::string sample_id;
  std::size_t label = 0;
  bool train = false;
  std::uint64_t seed = 0;
};

/// Per class: the first half of the samples train, the rest test.
inline std::vector<SyntheticSample> synthetic_split(const SyntheticConfig& cfg) {
  std::vector<SyntheticSample> out;
  for (int c = 0; c < cfg.classes; ++c)
    for (int i = 0; i < cfg.per_class; ++i) {
      SyntheticSample s;
      s.label = static_cast<std::size_t>(c);
      s.seed = cfg.seed * 100003ULL + static_cast<std::uint64_t>(c) * 1000ULL + static_cast<std::uint64_t>(i);
      s.train = i < cfg.per_class / 2;
      s.sample_id = "c" + std::to_string(c) + "_i" + std::to_string(i);
      out.push_back(s);
    }
  return out;
}

struct EvaluationResult {
  std::map<std::string, double> accuracy;  // per image label
  double fused_accuracy = 0.0;
  std::vector<std::string> fused_labels;
  std::size_t train_count = 0;
  std::size_t test_count = 0;
  std::vector<ScoreRecord> test_scores;
};

inline EvaluationResult evaluate_synthetic(const PipelineConfig& config, std::span<const std::string> labels,
                                           std::span<const std::string> fused_labels, unsigned jobs = 1) {
  if (config.synthetic.classes > kMotionClassCount)
    throw ConfigError("synthetic.classes exceeds the " + std::to_string(kMotionClassCount) + " motion families");
  const auto samples = synthetic_split(config.synthetic);
  const ImageSetEncoder encoder(config.selection, config.image_size);
  std::vector<std::vector<std::vector<double>>> features(samples.size());  // [sample][label]

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < samples.size(); i = next++) {
      const auto& s = samples[i];
      SynthOptions opts;
      opts.noise = config.synthetic.noise;
      const auto ns = preprocess(synthesize_sequence(static_cast<int>(s.label), s.seed, config.synthetic.frames, opts));
      for (const auto& label : labels) features[i].push_back(featurize(encoder.encode(ns, label)));
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(samples.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  EvaluationResult result;
  std::map<std::string, std::size_t> truth;
  for (const auto& s : samples) {
    (s.train ? result.train_count : result.test_count)++;
    if (!s.train) truth[s.sample_id] = s.label;
  }
  for (std::size_t k = 0; k < labels.size(); ++k) {
    std::vector<LabeledVector> train_set;
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (samples[i].train) train_set.push_back({features[i][k], samples[i].label});
    const CentroidModel model = train(train_set, labels[k]);
    std::vector<ScoreRecord> recs;
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (!samples[i].train) recs.push_back({samples[i].sample_id, score(model, features[i][k])});
    result.accuracy[labels[k]] = accuracy(fuse_samples(recs), truth);
    result.test_scores.insert(result.test_scores.end(), recs.begin(), recs.end());
  }
  for (const auto& l : fused_labels)
    if (std::find(labels.begin(), labels.end(), l) != labels.end()) result.fused_labels.push_back(l);
  if (!result.fused_labels.empty())
    result.fused_accuracy = accuracy(fuse_samples(result.test_scores, result.fused_labels), truth);
  return result;
}

}  // namespace skeltex
