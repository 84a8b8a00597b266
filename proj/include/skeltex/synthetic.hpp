#pragma once

// Parametric motion families for desk-scale testing.
//
// Each class animates a fixed rest pose with sinusoidal joint-angle profiles
// about anatomical pivots, so bone lengths are preserved. The seed perturbs
// amplitude, speed, phase, body size and global placement; it never changes
// which joints move.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "skeltex/error.hpp"
#include "skeltex/geometry.hpp"
#include "skeltex/joints.hpp"
#include "skeltex/skeleton.hpp"

namespace skeltex {

enum class MotionClass : int {
  kRaiseRightArm = 0,
  kSquat = 1,
  kWaveRightHand = 2,
  kKickRightLeg = 3,
  kBow = 4,
  kClap = 5,
};

inline constexpr int kMotionClassCount = 6;

inline constexpr const char* motion_class_name(int class_id) {
  switch (class_id) {
    case 0: return "raise_right_arm";
    case 1: return "squat";
    case 2: return "wave_right_hand";
    case 3: return "kick_right_leg";
    case 4: return "bow";
    case 5: return "clap";
    default: return "unknown";
  }
}

struct SynthOptions {
  /// Multiplies every class amplitude; 0 yields a static pose.
  double amplitude_scale = 1.0;
  /// Half-width (meters) of uniform per-joint, per-frame jitter.
  double noise = 0.002;
  /// Adds a second, mildly swaying person.
  bool with_partner = false;
};

/// Rest pose in a body-centred frame: x to the subject's left, y up, z towards the camera.
inline Pose rest_pose() {
  Pose p{};
  using namespace joint;
  p[kBaseSpine] = {0.0, 0.0, 0.0};
  p[kMiddleSpine] = {0.0, 0.28, -0.01};
  p[kSpineShoulder] = {0.0, 0.50, -0.015};
  p[kNeck] = {0.0, 0.58, -0.01};
  p[kHead] = {0.0, 0.74, 0.0};
  p[kLeftShoulder] = {0.18, 0.50, -0.02};
  p[kLeftElbow] = {0.21, 0.23, -0.03};
  p[kLeftWrist] = {0.22, 0.00, -0.01};
  p[kLeftHand] = {0.22, -0.07, 0.0};
  p[kLeftHandTip] = {0.22, -0.15, 0.01};
  p[kLeftThumb] = {0.19, -0.05, 0.03};
  p[kRightShoulder] = {-0.18, 0.50, -0.02};
  p[kRightElbow] = {-0.21, 0.23, -0.03};
  p[kRightWrist] = {-0.22, 0.00, -0.01};
  p[kRightHand] = {-0.22, -0.07, 0.0};
  p[kRightHandTip] = {-0.22, -0.15, 0.01};
  p[kRightThumb] = {-0.19, -0.05, 0.03};
  p[kLeftHip] = {0.09, -0.06, 0.0};
  p[kLeftKnee] = {0.10, -0.48, 0.02};
  p[kLeftAnkle] = {0.10, -0.88, -0.01};
  p[kLeftFoot] = {0.10, -0.93, 0.09};
  p[kRightHip] = {-0.09, -0.06, 0.0};
  p[kRightKnee] = {-0.10, -0.48, 0.02};
  p[kRightAnkle] = {-0.10, -0.88, -0.01};
  p[kRightFoot] = {-0.10, -0.93, 0.09};
  return p;
}

namespace detail {

/// Uniform double in [lo, hi) from raw engine bits (identical on every platform,
/// unlike std::uniform_real_distribution).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline void rotate_about(Pose& pose, std::size_t pivot, std::span<const std::size_t> moved,
                         const Vec3& axis, double angle) {
  if (angle == 0.0) return;
  const Mat3 r = axis_angle(axis, angle);
  const Vec3 origin = pose[pivot];
  for (std::size_t j : moved) pose[j] = origin + r * (pose[j] - origin);
}

struct MotionParams {
  double amplitude;
  double speed;  // cycles over the sequence
  double phase;  // radians
};

// Smooth 0 -> 1 -> 0 raise profile, and a zero-mean oscillation.
inline double raise_profile(double s, const MotionParams& m) {
  return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * m.speed * s + m.phase));
}
inline double swing_profile(double s, const MotionParams& m) {
  return std::sin(2.0 * std::numbers::pi * m.speed * s + m.phase);
}

inline void animate(int class_id, Pose& pose, double s, const MotionParams& m) {
  using namespace joint;
  static constexpr std::size_t kRightArm[] = {kRightElbow, kRightWrist, kRightHand, kRightHandTip,
                                              kRightThumb};
  static constexpr std::size_t kRightForearm[] = {kRightWrist, kRightHand, kRightHandTip, kRightThumb};
  static constexpr std::size_t kLeftArm[] = {kLeftElbow, kLeftWrist, kLeftHand, kLeftHandTip,
                                             kLeftThumb};
  static constexpr std::size_t kRightLowerLeg[] = {kRightAnkle, kRightFoot};
  static constexpr std::size_t kRightLeg[] = {kRightKnee, kRightAnkle, kRightFoot};
  static constexpr std::size_t kUpperBody[] = {kMiddleSpine, kSpineShoulder, kNeck, kHead,
                                               kLeftShoulder, kLeftElbow, kLeftWrist, kLeftHand,
                                               kLeftHandTip, kLeftThumb, kRightShoulder, kRightElbow,
                                               kRightWrist, kRightHand, kRightHandTip, kRightThumb};
  const Vec3 frontal{0, 0, 1};   // rotation in the x-y plane
  const Vec3 sagittal{1, 0, 0};  // rotation in the y-z plane
  const double a = m.amplitude;
  switch (class_id) {
    case 0:  // arm swings sideways up over the head and back down
      rotate_about(pose, kRightShoulder, kRightArm, frontal, -a * raise_profile(s, m));
      break;
    case 1: {  // squat: hips drop, knees go forward, feet stay planted
      const double drop = a * raise_profile(s, m);
      for (std::size_t j = 0; j < kJointCount; ++j) {
        if (j == kLeftAnkle || j == kLeftFoot || j == kRightAnkle || j == kRightFoot) continue;
        if (j == kLeftKnee || j == kRightKnee) {
          pose[j] += Vec3{0.0, -0.45 * drop, 0.7 * drop};
        } else {
          pose[j] += Vec3{0.0, -drop, -0.15 * drop};
        }
      }
      break;
    }
    case 2: {  // forearm held up, oscillating side to side
      const double hold = std::numbers::pi * 0.45;
      rotate_about(pose, kRightShoulder, kRightArm, frontal, -hold);
      rotate_about(pose, kRightElbow, kRightForearm, frontal,
                   -(std::numbers::pi * 0.4) + a * swing_profile(s, m));
      break;
    }
    case 3:  // straight-leg kick forward
      rotate_about(pose, kRightHip, kRightLeg, sagittal, -a * raise_profile(s, m));
      rotate_about(pose, kRightKnee, kRightLowerLeg, sagittal, 0.3 * a * raise_profile(s, m));
      break;
    case 4:  // bow from the hips
      rotate_about(pose, kBaseSpine, kUpperBody, sagittal, -a * raise_profile(s, m));
      break;
    case 5: {  // arms forward, hands meeting in front of the chest
      const double reach = std::numbers::pi * 0.45;
      rotate_about(pose, kRightShoulder, kRightArm, sagittal, -reach);
      rotate_about(pose, kLeftShoulder, kLeftArm, sagittal, -reach);
      const double close = 0.5 * a * (1.0 + swing_profile(s, m));
      rotate_about(pose, kRightShoulder, kRightArm, Vec3{0, 1, 0}, close);
      rotate_about(pose, kLeftShoulder, kLeftArm, Vec3{0, 1, 0}, -close);
      break;
    }
    default:
      break;
  }
}

inline double base_amplitude(int class_id) {
  switch (class_id) {
    case 0: return 2.4;
    case 1: return 0.35;
    case 2: return 0.5;
    case 3: return 1.1;
    case 4: return 0.9;
    case 5: return 0.35;
    default: return 0.0;
  }
}

inline double base_speed(int class_id) {
  switch (class_id) {
    case 2: return 3.0;
    case 5: return 4.0;
    default: return 1.0;
  }
}

struct Placement {
  Mat3 rotation;
  Vec3 translation;
  double scale;
};

inline Placement random_placement(std::mt19937_64& rng) {
  const double yaw = uniform(rng, -0.4, 0.4);
  const double pitch = uniform(rng, -0.08, 0.08);
  Placement p{};
  p.rotation = axis_angle({0, 1, 0}, yaw) * axis_angle({1, 0, 0}, pitch);
  p.translation = {uniform(rng, -0.6, 0.6), uniform(rng, -0.2, 0.2), uniform(rng, 2.4, 3.6)};
  p.scale = uniform(rng, 0.9, 1.1);
  return p;
}

inline MotionParams random_motion(int class_id, std::mt19937_64& rng, double amplitude_scale) {
  MotionParams m{};
  m.amplitude = base_amplitude(class_id) * uniform(rng, 0.85, 1.15) * amplitude_scale;
  m.speed = base_speed(class_id) * uniform(rng, 0.92, 1.08);
  m.phase = uniform(rng, -0.25, 0.25);
  return m;
}

}  // namespace detail

/// Deterministic synthetic sequence for one motion class.
inline SkeletonSequence synthesize_sequence(int class_id, std::uint64_t seed, std::size_t frame_count,
                                            const SynthOptions& options = {}) {
  if (class_id < 0 || class_id >= kMotionClassCount)
    throw DomainError("unknown motion class " + std::to_string(class_id) + " (valid: 0.." +
                      std::to_string(kMotionClassCount - 1) + ")");
  if (frame_count < 2) throw DomainError("synthetic sequences need at least 2 frames");

  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(class_id));
  const detail::Placement place = detail::random_placement(rng);
  const detail::MotionParams motion = detail::random_motion(class_id, rng, options.amplitude_scale);

  // Partner stands beside the main subject, facing it, with a slow sway.
  std::mt19937_64 partner_rng(seed ^ 0xD1B54A32D192ED03ULL);
  detail::Placement partner_place = detail::random_placement(partner_rng);
  partner_place.translation = place.translation + place.rotation * Vec3{1.1, 0.0, 0.2};
  partner_place.rotation = place.rotation * axis_angle({0, 1, 0}, -1.2);
  const double sway = 0.08 * options.amplitude_scale;

  SkeletonSequence seq;
  seq.source_id = "synth_c" + std::to_string(class_id) + "_s" + std::to_string(seed) + "_t" +
                  std::to_string(frame_count);
  seq.frames.resize(frame_count);
  const Pose rest = rest_pose();
  for (std::size_t t = 0; t < frame_count; ++t) {
    const double s = static_cast<double>(t) / static_cast<double>(frame_count - 1);
    Pose pose = rest;
    detail::animate(class_id, pose, s, motion);

    BodyFrame body;
    body.body_id = 1;
    for (std::size_t j = 0; j < kJointCount; ++j) {
      Vec3 p = place.translation + place.rotation * (pose[j] * place.scale);
      if (options.noise > 0.0) {
        p += Vec3{detail::uniform(rng, -options.noise, options.noise),
                  detail::uniform(rng, -options.noise, options.noise),
                  detail::uniform(rng, -options.noise, options.noise)};
      }
      body.joints[j] = p;
    }
    seq.frames[t].bodies.push_back(body);

    if (options.with_partner) {
      Pose other = rest;
      static constexpr std::size_t kAll[] = {1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12,
                                             13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24};
      detail::rotate_about(other, joint::kBaseSpine, kAll, {0, 0, 1},
                           sway * std::sin(2.0 * std::numbers::pi * s));
      BodyFrame partner;
      partner.body_id = 2;
      for (std::size_t j = 0; j < kJointCount; ++j)
        partner.joints[j] =
            partner_place.translation + partner_place.rotation * (other[j] * partner_place.scale);
      seq.frames[t].bodies.push_back(partner);
    }
  }
  return seq;
}

}  // namespace skeltex
