#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "skeltex/error.hpp"
#include "skeltex/geometry.hpp"
#include "skeltex/preprocess.hpp"
#include "skeltex/selection.hpp"

namespace skeltex {

/// Which subject a feature row draws its joints from.
enum class RowSubject : std::uint8_t { kMain, kAuxiliary, kCross };

constexpr std::string_view to_string(RowSubject s) {
  switch (s) {
    case RowSubject::kMain: return "main";
    case RowSubject::kAuxiliary: return "auxiliary";
    case RowSubject::kCross: return "cross";
  }
  return "?";
}

/// N feature rows by T frame columns. Vector families store three components per
/// cell, laid out as values[(row * cols + col) * 3 + axis].
struct FeatureMatrix {
  Family family = Family::kJJd;
  Strategy strategy = Strategy::kFull;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<RowSubject> row_subjects;

  std::size_t components() const noexcept { return is_vector_family(family) ? 3 : 1; }
  bool is_vector() const noexcept { return is_vector_family(family); }

  double at(std::size_t row, std::size_t col, std::size_t axis = 0) const {
    return values[(row * cols + col) * components() + axis];
  }
  double& at(std::size_t row, std::size_t col, std::size_t axis = 0) {
    return values[(row * cols + col) * components() + axis];
  }

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;
};

namespace detail {

inline RowSubject tag(std::initializer_list<JointRef> refs) {
  bool any_main = false, any_aux = false;
  for (const auto& r : refs) (r.subject == Subject::kMain ? any_main : any_aux) = true;
  if (any_main && any_aux) return RowSubject::kCross;
  return any_main ? RowSubject::kMain : RowSubject::kAuxiliary;
}

inline const Joint3D& lookup(const Pose& main, const Pose& aux, const JointRef& r) {
  return (r.subject == Subject::kMain ? main : aux)[r.index];
}

}  // namespace detail

/// Row subject tags for a plan, in plan order.
inline std::vector<RowSubject> row_subjects(const SelectionPlan& plan) {
  std::vector<RowSubject> tags;
  tags.reserve(plan.size());
  switch (plan.family) {
    case Family::kJLd:
      for (const auto& e : plan.joint_lines) tags.push_back(detail::tag({e.joint, e.line.a, e.line.b}));
      break;
    case Family::kLLa:
      for (const auto& e : plan.line_pairs)
        tags.push_back(detail::tag({e.first.a, e.first.b, e.second.a, e.second.b}));
      break;
    default:
      for (const auto& e : plan.pairs) tags.push_back(detail::tag({e.first, e.second}));
      break;
  }
  return tags;
}

/// Evaluates every combination of `plan` at every frame.
inline FeatureMatrix extract_features(std::span<const Pose> main, std::span<const Pose> auxiliary,
                                      const SelectionPlan& plan) {
  if (main.size() != auxiliary.size())
    throw ContractError("main and auxiliary subjects differ in frame count");
  if (main.empty()) throw ContractError("cannot extract features from an empty sequence");

  FeatureMatrix m;
  m.family = plan.family;
  m.strategy = plan.strategy;
  m.rows = plan.size();
  m.cols = main.size();
  m.values.assign(m.rows * m.cols * m.components(), 0.0);
  m.row_subjects = row_subjects(plan);

  for (std::size_t t = 0; t < m.cols; ++t) {
    const Pose& pm = main[t];
    const Pose& pa = auxiliary[t];
    auto P = [&](const JointRef& r) -> const Joint3D& { return detail::lookup(pm, pa, r); };
    switch (plan.family) {
      case Family::kJJd:
        for (std::size_t h = 0; h < m.rows; ++h)
          m.at(h, t) = jj_distance(P(plan.pairs[h].first), P(plan.pairs[h].second));
        break;
      case Family::kJJv:
      case Family::kJJo:
        for (std::size_t h = 0; h < m.rows; ++h) {
          const auto& e = plan.pairs[h];
          const Vec3 v = plan.family == Family::kJJv ? jj_vector(P(e.first), P(e.second))
                                                     : jj_orientation(P(e.first), P(e.second));
          m.at(h, t, 0) = v.x;
          m.at(h, t, 1) = v.y;
          m.at(h, t, 2) = v.z;
        }
        break;
      case Family::kJLd:
        for (std::size_t h = 0; h < m.rows; ++h) {
          const auto& e = plan.joint_lines[h];
          m.at(h, t) = jl_distance(P(e.joint), P(e.line.a), P(e.line.b));
        }
        break;
      case Family::kLLa:
        for (std::size_t h = 0; h < m.rows; ++h) {
          const auto& e = plan.line_pairs[h];
          m.at(h, t) = ll_angle(jj_orientation(P(e.first.a), P(e.first.b)),
                                jj_orientation(P(e.second.a), P(e.second.b)));
        }
        break;
    }
  }
  return m;
}

inline FeatureMatrix extract_features(const NormalizedSequence& seq, const SelectionPlan& plan) {
  return extract_features(seq.main, seq.auxiliary, plan);
}

}  // namespace skeltex
