#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skeltex/error.hpp"
#include "skeltex/geometry.hpp"
#include "skeltex/joints.hpp"
#include "skeltex/skeleton.hpp"

namespace skeltex {

/// One person followed through a sequence. `poses` has one entry per frame;
/// entries where `present[t]` is false are undefined until filled.
struct BodyTrack {
  BodyId body_id = 0;
  std::vector<Pose> poses;
  std::vector<bool> present;

  std::size_t frame_count() const noexcept { return poses.size(); }
  std::size_t present_count() const {
    return static_cast<std::size_t>(std::count(present.begin(), present.end(), true));
  }
  friend bool operator==(const BodyTrack&, const BodyTrack&) = default;
};

/// Two-subject, spine-normalized sequence ready for feature extraction.
struct NormalizedSequence {
  std::string source_id;
  std::vector<Pose> main;
  std::vector<Pose> auxiliary;
  /// True when no second person exists and the auxiliary is a copy of the main subject.
  bool shadow_flag = false;
  /// Per frame: auxiliary was filled from the main subject in that frame.
  std::vector<bool> shadow_frames;

  std::size_t frame_count() const noexcept { return main.size(); }
};

struct SubjectSelection {
  BodyTrack main;
  std::optional<BodyTrack> other;
  double main_score = 0.0;
  double other_score = 0.0;
};

struct BodyCoordinates {
  std::vector<Pose> poses;
  /// Frames where the spine or hip axis was degenerate and no rotation was applied.
  std::vector<bool> fallback;
};

/// Splits a sequence into per-body tracks, ordered by body id.
inline std::vector<BodyTrack> split_tracks(const SkeletonSequence& seq) {
  std::map<BodyId, BodyTrack> tracks;
  const std::size_t frames = seq.frame_count();
  for (std::size_t t = 0; t < frames; ++t) {
    for (const auto& body : seq.frames[t].bodies) {
      auto [it, inserted] = tracks.try_emplace(body.body_id);
      if (inserted) {
        it->second.body_id = body.body_id;
        it->second.poses.assign(frames, Pose{});
        it->second.present.assign(frames, false);
      }
      // A repeated id within one frame keeps the first record.
      if (!it->second.present[t]) {
        it->second.poses[t] = body.joints;
        it->second.present[t] = true;
      }
    }
  }
  std::vector<BodyTrack> out;
  out.reserve(tracks.size());
  for (auto& [id, track] : tracks) out.push_back(std::move(track));
  return out;
}

/// Rotation into the body frame of one pose: origin at the middle of the spine,
/// +y along base-of-spine -> spine-shoulder, +x along the left-to-right hip axis
/// made orthogonal to y, z = x cross y. Returns nullopt when the axes are degenerate.
inline std::optional<Mat3> body_rotation(const Pose& pose) {
  const Vec3 spine = pose[joint::kSpineShoulder] - pose[joint::kBaseSpine];
  const Vec3 hips = pose[joint::kRightHip] - pose[joint::kLeftHip];
  const double spine_len = norm(spine);
  if (spine_len < kDegenerateLength || norm(hips) < kDegenerateLength) return std::nullopt;
  const Vec3 y = spine / spine_len;
  const Vec3 x_raw = hips - y * dot(hips, y);
  const double x_len = norm(x_raw);
  if (x_len < kDegenerateLength) return std::nullopt;
  const Vec3 x = x_raw / x_len;
  const Vec3 z = cross(x, y);
  return Mat3{{x, y, z}};
}

inline Pose to_body_coordinates(const Pose& pose, bool* fallback = nullptr) {
  const auto rot = body_rotation(pose);
  if (fallback) *fallback = !rot.has_value();
  const Mat3 r = rot.value_or(Mat3::identity());
  const Vec3 origin = pose[joint::kMiddleSpine];
  Pose out;
  for (std::size_t j = 0; j < kJointCount; ++j) out[j] = r * (pose[j] - origin);
  return out;
}

inline BodyCoordinates to_body_coordinates(std::span<const Pose> poses) {
  BodyCoordinates out;
  out.poses.reserve(poses.size());
  out.fallback.reserve(poses.size());
  for (const auto& p : poses) {
    bool fb = false;
    out.poses.push_back(to_body_coordinates(p, &fb));
    out.fallback.push_back(fb);
  }
  return out;
}

/// Sum over joints and axes of the population variance across the present frames,
/// measured in body coordinates.
inline double variation_score(const BodyTrack& track) {
  std::vector<Pose> body;
  for (std::size_t t = 0; t < track.frame_count(); ++t)
    if (track.present[t]) body.push_back(to_body_coordinates(track.poses[t]));
  if (body.size() < 2) return 0.0;
  const double n = static_cast<double>(body.size());
  double score = 0.0;
  for (std::size_t j = 0; j < kJointCount; ++j) {
    for (int axis = 0; axis < 3; ++axis) {
      double mean = 0.0;
      for (const auto& p : body) mean += p[j][axis];
      mean /= n;
      double var = 0.0;
      for (const auto& p : body) {
        const double d = p[j][axis] - mean;
        var += d * d;
      }
      score += var / n;
    }
  }
  return score;
}

/// Picks the track with the larger variation score as main (ties: lower body id)
/// and the runner-up as the other subject.
inline SubjectSelection select_main_subject(const SkeletonSequence& seq) {
  auto tracks = split_tracks(seq);
  if (tracks.empty()) throw EmptySequenceError("sequence '" + seq.source_id + "' contains no bodies");

  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < tracks.size(); ++i) ranked.emplace_back(variation_score(tracks[i]), i);
  // tracks are ordered by body id, so a stable sort on score alone breaks ties by id.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  SubjectSelection sel;
  sel.main = std::move(tracks[ranked[0].second]);
  sel.main_score = ranked[0].first;
  if (ranked.size() > 1) {
    sel.other = std::move(tracks[ranked[1].second]);
    sel.other_score = ranked[1].first;
  }
  return sel;
}

/// Auxiliary subject duplicated from the main one.
inline BodyTrack make_shadow(const BodyTrack& main) { return main; }

/// Scales each frame about the base of the spine so the base-to-middle spine
/// segment has unit length. Frames with a collapsed spine reuse the previous
/// valid frame's scale.
inline std::vector<Pose> normalize_spine(std::span<const Pose> poses) {
  std::vector<Pose> out;
  out.reserve(poses.size());
  std::optional<double> last_length;
  for (std::size_t t = 0; t < poses.size(); ++t) {
    const Pose& p = poses[t];
    const Vec3 base = p[joint::kBaseSpine];
    double length = jj_distance(base, p[joint::kMiddleSpine]);
    if (length < kDegenerateLength) {
      if (!last_length)
        throw NormalizationError("frame " + std::to_string(t) +
                                 ": spine length is zero and no earlier frame provides a scale");
      length = *last_length;
    } else {
      last_length = length;
    }
    Pose q;
    for (std::size_t j = 0; j < kJointCount; ++j) q[j] = base + (p[j] - base) / length;
    out.push_back(q);
  }
  return out;
}

namespace detail {

/// Fills absent frames from the nearest earlier present frame, or the first present one.
inline std::vector<Pose> fill_gaps(const BodyTrack& track) {
  std::vector<Pose> out = track.poses;
  std::optional<std::size_t> first;
  for (std::size_t t = 0; t < track.frame_count(); ++t)
    if (track.present[t]) {
      first = t;
      break;
    }
  if (!first) return out;
  std::size_t last = *first;
  for (std::size_t t = 0; t < out.size(); ++t) {
    if (track.present[t]) {
      last = t;
    } else {
      out[t] = out[t < *first ? *first : last];
    }
  }
  return out;
}

}  // namespace detail

/// Full preprocessing: subject selection, shadow fallback, spine normalization.
/// Features are computed from the normalized camera-frame coordinates; the body
/// frame is only used to rank subjects.
inline NormalizedSequence preprocess(const SkeletonSequence& seq) {
  SubjectSelection sel = select_main_subject(seq);
  const std::size_t frames = seq.frame_count();

  NormalizedSequence out;
  out.source_id = seq.source_id;
  const std::vector<Pose> main_raw = detail::fill_gaps(sel.main);
  out.main = normalize_spine(main_raw);

  out.shadow_flag = !sel.other.has_value();
  out.shadow_frames.assign(frames, true);
  if (!sel.other) {
    out.auxiliary = out.main;
    return out;
  }

  std::vector<Pose> aux_raw(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    if (sel.other->present[t]) {
      aux_raw[t] = sel.other->poses[t];
      out.shadow_frames[t] = false;
    } else {
      aux_raw[t] = main_raw[t];
    }
  }
  // Shadow frames take the main subject's normalized pose verbatim.
  out.auxiliary = normalize_spine(aux_raw);
  for (std::size_t t = 0; t < frames; ++t)
    if (out.shadow_frames[t]) out.auxiliary[t] = out.main[t];
  return out;
}

/// Re-expresses a normalized sequence as a two-body skeleton sequence
/// (main = body 0, auxiliary = body 1) in the regular file layout.
inline SkeletonSequence to_skeleton_sequence(const NormalizedSequence& ns) {
  SkeletonSequence seq;
  seq.source_id = ns.source_id;
  seq.frames.resize(ns.frame_count());
  for (std::size_t t = 0; t < ns.frame_count(); ++t) {
    seq.frames[t].bodies.push_back({0, ns.main[t]});
    seq.frames[t].bodies.push_back({1, ns.auxiliary[t]});
  }
  return seq;
}

}  // namespace skeltex
