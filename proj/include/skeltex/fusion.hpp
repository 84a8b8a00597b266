#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "skeltex/csv.hpp"
#include "skeltex/error.hpp"
#include "skeltex/image_set.hpp"
#include "skeltex/skeleton.hpp"

namespace skeltex {

/// Per-class scores from one model (one image type).
struct ScoreVector {
  std::string model_label;
  std::vector<double> scores;

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

inline void validate(const ScoreVector& v) {
  if (v.scores.empty()) throw ContractError("score vector '" + v.model_label + "' is empty");
  for (std::size_t i = 0; i < v.scores.size(); ++i)
    if (!std::isfinite(v.scores[i]) || v.scores[i] < 0.0)
      throw ContractError("score vector '" + v.model_label + "' has invalid score " +
                          std::to_string(v.scores[i]) + " for class " + std::to_string(i));
}

/// Element-wise product of the score vectors. Factors are multiplied left to
/// right in (model_label, scores) order, so any permutation of the input gives
/// bit-identical output.
inline std::vector<double> multiply_fuse(std::span<const ScoreVector> vs) {
  if (vs.empty()) throw ContractError("nothing to fuse");
  const std::size_t classes = vs.front().scores.size();
  std::vector<const ScoreVector*> order;
  for (const auto& v : vs) {
    validate(v);
    if (v.scores.size() != classes)
      throw ContractError("score vector '" + v.model_label + "' has " + std::to_string(v.scores.size()) +
                          " classes, expected " + std::to_string(classes));
    order.push_back(&v);
  }
  std::sort(order.begin(), order.end(), [](const ScoreVector* a, const ScoreVector* b) {
    if (a->model_label != b->model_label) return a->model_label < b->model_label;
    return a->scores < b->scores;
  });
  std::vector<double> fused = order.front()->scores;
  for (std::size_t k = 1; k < order.size(); ++k)
    for (std::size_t i = 0; i < classes; ++i) fused[i] *= order[k]->scores[i];
  return fused;
}

/// Index of the largest score; the first one on ties.
inline std::size_t predict(std::span<const double> fused) {
  if (fused.empty()) throw ContractError("cannot predict from an empty score vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < fused.size(); ++i)
    if (fused[i] > fused[best]) best = i;
  return best;
}

/// Every image type except JJo-JS2-EM2, which is left out of the final fusion.
inline std::vector<std::string> default_fusion_models() {
  std::vector<std::string> out;
  for (const auto& s : kImageSpecs)
    if (s.label != "JJo-JS2-EM2") out.emplace_back(s.label);
  return out;
}

/// One row of a score file: `model_label, sample_id, score_0 .. score_{C-1}`.
struct ScoreRecord {
  std::string sample_id;
  ScoreVector vector;
};

inline void write_score_csv(std::ostream& out, std::span<const ScoreRecord> records) {
  const std::size_t classes = records.empty() ? 0 : records.front().vector.scores.size();
  out << "model_label,sample_id";
  for (std::size_t i = 0; i < classes; ++i) out << ",score_" << i;
  out << '\n';
  char buf[32];
  for (const auto& r : records) {
    out << r.vector.model_label << ',' << r.sample_id;
    for (double s : r.vector.scores) {
      const auto res = std::to_chars(buf, buf + sizeof buf, s);
      out << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

inline std::vector<ScoreRecord> read_score_csv(const std::filesystem::path& path) {
  const csv::Table t = csv::read(path);
  const std::size_t label_col = t.column("model_label");
  const std::size_t sample_col = t.column("sample_id");
  std::vector<std::size_t> score_cols;
  for (std::size_t i = 0;; ++i) {
    const std::string name = "score_" + std::to_string(i);
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) break;
    score_cols.push_back(static_cast<std::size_t>(it - t.header.begin()));
  }
  if (score_cols.empty()) throw ParseError(1, path.string() + ": no score_0.. columns");

  std::vector<ScoreRecord> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    ScoreRecord rec;
    rec.sample_id = row[sample_col];
    rec.vector.model_label = row[label_col];
    for (std::size_t c : score_cols) {
      double v = 0.0;
      if (!detail::parse_number(row[c], v))
        throw ParseError(t.lines[r], path.string() + ": malformed score '" + row[c] + "'");
      rec.vector.scores.push_back(v);
    }
    validate(rec.vector);
    out.push_back(std::move(rec));
  }
  return out;
}

struct SamplePrediction {
  std::string sample_id;
  std::vector<double> fused;
  std::size_t predicted = 0;
  std::vector<std::string> models;
};

/// Groups records by sample and fuses the models in `model_set` (all models
/// when empty). Samples keep their first-seen order. A sample missing any model
/// from a non-empty set is an error.
inline std::vector<SamplePrediction> fuse_samples(std::span<const ScoreRecord> records,
                                                  std::span<const std::string> model_set = {}) {
  const std::set<std::string> wanted(model_set.begin(), model_set.end());
  std::vector<std::string> order;
  std::map<std::string, std::vector<ScoreVector>> by_sample;
  for (const auto& r : records) {
    if (!wanted.empty() && !wanted.count(r.vector.model_label)) continue;
    auto [it, inserted] = by_sample.try_emplace(r.sample_id);
    if (inserted) order.push_back(r.sample_id);
    for (const auto& existing : it->second)
      if (existing.model_label == r.vector.model_label)
        throw ContractError("sample '" + r.sample_id + "' has two score rows for model '" +
                            r.vector.model_label + "'");
    it->second.push_back(r.vector);
  }
  std::vector<SamplePrediction> out;
  for (const auto& id : order) {
    const auto& vs = by_sample.at(id);
    if (!wanted.empty() && vs.size() != wanted.size()) {
      for (const auto& m : wanted) {
        const bool has = std::any_of(vs.begin(), vs.end(), [&](const ScoreVector& v) { return v.model_label == m; });
        if (!has) throw ContractError("sample '" + id + "' has no scores for model '" + m + "'");
      }
    }
    SamplePrediction p;
    p.sample_id = id;
    p.fused = multiply_fuse(vs);
    p.predicted = predict(p.fused);
    for (const auto& v : vs) p.models.push_back(v.model_label);
    std::sort(p.models.begin(), p.models.end());
    out.push_back(std::move(p));
  }
  return out;
}

/// Fraction of predictions matching `truth` (sample id -> class). Samples without
/// ground truth are an error.
inline double accuracy(std::span<const SamplePrediction> preds, const std::map<std::string, std::size_t>& truth) {
  if (preds.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& p : preds) {
    const auto it = truth.find(p.sample_id);
    if (it == truth.end()) throw ContractError("no ground truth for sample '" + p.sample_id + "'");
    if (it->second == p.predicted) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

}  // namespace skeltex
