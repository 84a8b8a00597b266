#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skeltex/encode.hpp"
#include "skeltex/error.hpp"
#include "skeltex/features.hpp"
#include "skeltex/preprocess.hpp"
#include "skeltex/selection.hpp"

namespace skeltex {

enum class Encoding : std::uint8_t { kEM1, kEM2, kEM3, kEM4 };

constexpr std::string_view to_string(Encoding e) {
  switch (e) {
    case Encoding::kEM1: return "EM1";
    case Encoding::kEM2: return "EM2";
    case Encoding::kEM3: return "EM3";
    case Encoding::kEM4: return "EM4";
  }
  return "?";
}

/// One of the thirteen image types. The composite row has no single family.
struct ImageSpec {
  std::string_view label;
  std::optional<Family> family;
  std::optional<Strategy> strategy;
  Encoding encoding;
};

inline constexpr std::size_t kImageTypeCount = 13;

inline constexpr std::array<ImageSpec, kImageTypeCount> kImageSpecs{{
    {"JJv-JS1-EM2", Family::kJJv, Strategy::kJS1, Encoding::kEM2},
    {"JJv-JS2-EM2", Family::kJJv, Strategy::kJS2, Encoding::kEM2},
    {"JJv-JS3-EM2", Family::kJJv, Strategy::kJS3, Encoding::kEM2},
    {"JJo-JS1-EM2", Family::kJJo, Strategy::kJS1, Encoding::kEM2},
    {"JJo-JS2-EM2", Family::kJJo, Strategy::kJS2, Encoding::kEM2},
    {"JJo-JS3-EM2", Family::kJJo, Strategy::kJS3, Encoding::kEM2},
    {"JJd-JS1-EM1", Family::kJJd, Strategy::kJS1, Encoding::kEM1},
    {"JJd-JS2-EM1", Family::kJJd, Strategy::kJS2, Encoding::kEM1},
    {"JJd-JS3-EM1", Family::kJJd, Strategy::kJS3, Encoding::kEM1},
    {"JLd-LS1-EM3", Family::kJLd, Strategy::kLS1, Encoding::kEM3},
    {"JLd-LS2-EM1", Family::kJLd, Strategy::kLS2, Encoding::kEM1},
    {"LLa-LS1-EM3", Family::kLLa, Strategy::kLS1, Encoding::kEM3},
    {"Com-EM4", std::nullopt, std::nullopt, Encoding::kEM4},
}};

inline const ImageSpec& image_spec(std::string_view label) {
  for (const auto& s : kImageSpecs)
    if (s.label == label) return s;
  throw ConfigError("unknown image label '" + std::string(label) + "'");
}

inline std::vector<std::string> all_image_labels() {
  std::vector<std::string> out;
  for (const auto& s : kImageSpecs) out.emplace_back(s.label);
  return out;
}

struct LabeledImage {
  std::string label;
  TextureImage image;
};

inline std::string image_filename(std::string_view source_id, std::string_view label) {
  return std::string(source_id) + "__" + std::string(label) + ".png";
}

/// Builds the selection plans once and encodes any subset of the thirteen image
/// types for many sequences. Safe to share across threads after construction.
class ImageSetEncoder {
 public:
  explicit ImageSetEncoder(const SelectionTables& tables, ImageSize size = {}) : size_(size) {
    if (size.height < 1 || size.width < 1) throw ConfigError("image size must be positive");
    for (Strategy s : {Strategy::kJS1, Strategy::kJS2, Strategy::kJS3})
      for (Family f : {Family::kJJd, Family::kJJv, Family::kJJo})
        joint_plans_[index(f, s)] = build_selection_plan(f, s, tables);
    jld_ls1_ = build_selection_plan(Family::kJLd, Strategy::kLS1, tables);
    jld_ls1_aux_ = with_subject(jld_ls1_, Subject::kAuxiliary);
    lla_ls1_ = build_selection_plan(Family::kLLa, Strategy::kLS1, tables);
    lla_ls1_aux_ = with_subject(lla_ls1_, Subject::kAuxiliary);
    jld_ls2_ = build_selection_plan(Family::kJLd, Strategy::kLS2, tables);
  }

  ImageSize size() const noexcept { return size_; }

  /// Number of JLd combinations produced by LS2 with the configured tables.
  std::size_t ls2_dimension() const noexcept { return jld_ls2_.size(); }

  TextureImage encode(const NormalizedSequence& seq, std::string_view label) const {
    const ImageSpec& spec = image_spec(label);
    switch (spec.encoding) {
      case Encoding::kEM1:
        if (*spec.family == Family::kJLd) return encode_em1(extract_features(seq, jld_ls2_), size_);
        return encode_em1(extract_features(seq, joint_plans_[index(*spec.family, *spec.strategy)]), size_);
      case Encoding::kEM2:
        return encode_em2(extract_features(seq, joint_plans_[index(*spec.family, *spec.strategy)]), size_);
      case Encoding::kEM3: {
        const bool jld = *spec.family == Family::kJLd;
        return encode_em3(extract_features(seq, jld ? jld_ls1_ : lla_ls1_),
                          extract_features(seq, jld ? jld_ls1_aux_ : lla_ls1_aux_), size_);
      }
      case Encoding::kEM4:
        return encode_em4_composite(extract_features(seq, joint_plans_[index(Family::kJJd, Strategy::kJS1)]),
                                    extract_features(seq, jld_ls1_), extract_features(seq, lla_ls1_), size_);
    }
    throw ContractError("unhandled encoding");
  }

  std::vector<LabeledImage> generate(const NormalizedSequence& seq,
                                     std::span<const std::string> labels) const {
    std::vector<LabeledImage> out;
    out.reserve(labels.size());
    for (const auto& label : labels) out.push_back({label, encode(seq, label)});
    return out;
  }

  std::vector<LabeledImage> generate(const NormalizedSequence& seq) const {
    return generate(seq, all_image_labels());
  }

 private:
  static std::size_t index(Family f, Strategy s) {
    const std::size_t fi = f == Family::kJJd ? 0 : (f == Family::kJJv ? 1 : 2);
    const std::size_t si = s == Strategy::kJS1 ? 0 : (s == Strategy::kJS2 ? 1 : 2);
    return fi * 3 + si;
  }

  ImageSize size_;
  std::array<SelectionPlan, 9> joint_plans_;
  SelectionPlan jld_ls1_, jld_ls1_aux_, lla_ls1_, lla_ls1_aux_, jld_ls2_;
};

/// All thirteen image types (or `labels`, when given) for one sequence.
inline std::vector<LabeledImage> generate_image_set(const NormalizedSequence& seq, const SelectionTables& tables,
                                                    ImageSize size = {},
                                                    std::span<const std::string> labels = {}) {
  const ImageSetEncoder encoder(tables, size);
  return labels.empty() ? encoder.generate(seq) : encoder.generate(seq, labels);
}

}  // namespace skeltex
