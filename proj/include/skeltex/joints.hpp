#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <utility>

namespace skeltex {

inline constexpr std::size_t kJointCount = 25;

/// NTU RGB+D / Kinect v2 joint order, 0-based (NTU documentation numbers these 1..25).
namespace joint {
inline constexpr std::size_t kBaseSpine = 0;
inline constexpr std::size_t kMiddleSpine = 1;
inline constexpr std::size_t kNeck = 2;
inline constexpr std::size_t kHead = 3;
inline constexpr std::size_t kLeftShoulder = 4;
inline constexpr std::size_t kLeftElbow = 5;
inline constexpr std::size_t kLeftWrist = 6;
inline constexpr std::size_t kLeftHand = 7;
inline constexpr std::size_t kRightShoulder = 8;
inline constexpr std::size_t kRightElbow = 9;
inline constexpr std::size_t kRightWrist = 10;
inline constexpr std::size_t kRightHand = 11;
inline constexpr std::size_t kLeftHip = 12;
inline constexpr std::size_t kLeftKnee = 13;
inline constexpr std::size_t kLeftAnkle = 14;
inline constexpr std::size_t kLeftFoot = 15;
inline constexpr std::size_t kRightHip = 16;
inline constexpr std::size_t kRightKnee = 17;
inline constexpr std::size_t kRightAnkle = 18;
inline constexpr std::size_t kRightFoot = 19;
inline constexpr std::size_t kSpineShoulder = 20;
inline constexpr std::size_t kLeftHandTip = 21;
inline constexpr std::size_t kLeftThumb = 22;
inline constexpr std::size_t kRightHandTip = 23;
inline constexpr std::size_t kRightThumb = 24;
}  // namespace joint

inline constexpr std::array<std::string_view, kJointCount> kJointNames{
    "base_spine",  "middle_spine", "neck",       "head",        "left_shoulder",
    "left_elbow",  "left_wrist",   "left_hand",  "right_shoulder", "right_elbow",
    "right_wrist", "right_hand",   "left_hip",   "left_knee",   "left_ankle",
    "left_foot",   "right_hip",    "right_knee", "right_ankle", "right_foot",
    "spine_shoulder", "left_hand_tip", "left_thumb", "right_hand_tip", "right_thumb"};

using JointEdge = std::pair<int, int>;

/// Kinect v2 bone list (24 bones over 25 joints).
inline constexpr std::array<JointEdge, 24> kKinectBones{{
    {0, 1},   {1, 20},  {20, 2},  {2, 3},                 // spine and head
    {20, 4},  {4, 5},   {5, 6},   {6, 7},   {7, 21}, {6, 22},   // left arm
    {20, 8},  {8, 9},   {9, 10},  {10, 11}, {11, 23}, {10, 24}, // right arm
    {0, 12},  {12, 13}, {13, 14}, {14, 15},               // left leg
    {0, 16},  {16, 17}, {17, 18}, {18, 19},               // right leg
}};

}  // namespace skeltex
