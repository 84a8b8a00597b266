#pragma once

// Key-joint and key-line selection.
//
// Joint references span both subjects (2 x 25 joints). Every plan enumerates
// its combinations in a canonical order: joints ordered by (subject, index)
// with the main subject first, pairs (a, b) with a < b in lexicographic order,
// joint-line triples grouped by line then by joint, line pairs lexicographic.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skeltex/error.hpp"
#include "skeltex/joints.hpp"

namespace skeltex {

enum class Subject : std::uint8_t { kMain = 0, kAuxiliary = 1 };

struct JointRef {
  Subject subject = Subject::kMain;
  std::uint8_t index = 0;

  friend constexpr auto operator<=>(const JointRef&, const JointRef&) = default;
};

struct Line {
  JointRef a;
  JointRef b;

  friend constexpr auto operator<=>(const Line&, const Line&) = default;
};

struct JointPair {
  JointRef first;
  JointRef second;
  friend constexpr auto operator<=>(const JointPair&, const JointPair&) = default;
};

struct JointLine {
  JointRef joint;
  Line line;
  friend constexpr auto operator<=>(const JointLine&, const JointLine&) = default;
};

struct LinePair {
  Line first;
  Line second;
  friend constexpr auto operator<=>(const LinePair&, const LinePair&) = default;
};

enum class Family : std::uint8_t { kJJd, kJJv, kJJo, kJLd, kLLa };
enum class Strategy : std::uint8_t { kJS1, kJS2, kJS3, kLS1, kLS2, kFull };

constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::kJJd: return "JJd";
    case Family::kJJv: return "JJv";
    case Family::kJJo: return "JJo";
    case Family::kJLd: return "JLd";
    case Family::kLLa: return "LLa";
  }
  return "?";
}

constexpr std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kJS1: return "JS1";
    case Strategy::kJS2: return "JS2";
    case Strategy::kJS3: return "JS3";
    case Strategy::kLS1: return "LS1";
    case Strategy::kLS2: return "LS2";
    case Strategy::kFull: return "FULL";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  for (Family f : {Family::kJJd, Family::kJJv, Family::kJJo, Family::kJLd, Family::kLLa})
    if (to_string(f) == s) return f;
  throw ConfigError("unknown feature family '" + std::string(s) + "'");
}

inline Strategy parse_strategy(std::string_view s) {
  for (Strategy st : {Strategy::kJS1, Strategy::kJS2, Strategy::kJS3, Strategy::kLS1, Strategy::kLS2,
                      Strategy::kFull})
    if (to_string(st) == s) return st;
  throw ConfigError("unknown selection strategy '" + std::string(s) + "'");
}

constexpr bool is_vector_family(Family f) { return f == Family::kJJv || f == Family::kJJo; }

/// The editable tables behind JS2, JS3, LS1 and LS2. Indices are 0-based NTU joints.
struct SelectionTables {
  std::vector<int> js2_joints;
  std::vector<int> js3_joints;
  std::vector<std::pair<int, int>> ls1_lines;
  /// Kinematic graph used for LS2 neighbourhoods.
  std::vector<std::pair<int, int>> skeleton_edges;

  static SelectionTables defaults() {
    SelectionTables t;
    // Every other joint along the kinematic chains, from the middle / base of the spine.
    t.js2_joints = {1, 3, 4, 6, 8, 10, 12, 14, 16, 18, 21, 23};
    t.js3_joints = {0, 3, 5, 7, 9, 11, 13, 15, 17, 19, 20};
    // 24 bones, the 10 lines joining the five end effectors (head, hand tips,
    // feet), and 5 lines from the middle of the spine to each end effector.
    for (const auto& [a, b] : kKinectBones) t.ls1_lines.emplace_back(a, b);
    const int ends[] = {static_cast<int>(joint::kHead), static_cast<int>(joint::kLeftHandTip),
                        static_cast<int>(joint::kRightHandTip), static_cast<int>(joint::kLeftFoot),
                        static_cast<int>(joint::kRightFoot)};
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t k = i + 1; k < 5; ++k) t.ls1_lines.emplace_back(ends[i], ends[k]);
    for (int e : ends) t.ls1_lines.emplace_back(static_cast<int>(joint::kMiddleSpine), e);
    for (const auto& [a, b] : kKinectBones) t.skeleton_edges.emplace_back(a, b);
    return t;
  }

  friend bool operator==(const SelectionTables&, const SelectionTables&) = default;
};

struct SelectionPlan {
  Family family = Family::kJJd;
  Strategy strategy = Strategy::kFull;
  std::vector<JointPair> pairs;         // JJd, JJv, JJo
  std::vector<JointLine> joint_lines;   // JLd
  std::vector<LinePair> line_pairs;     // LLa

  std::size_t size() const noexcept {
    switch (family) {
      case Family::kJLd: return joint_lines.size();
      case Family::kLLa: return line_pairs.size();
      default: return pairs.size();
    }
  }

  /// Feature dimension: 3 per entry for vector families.
  std::size_t dimension() const noexcept { return size() * (is_vector_family(family) ? 3 : 1); }
};

namespace detail {

constexpr std::size_t choose2(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

inline std::vector<JointRef> all_joints() {
  std::vector<JointRef> out;
  for (Subject s : {Subject::kMain, Subject::kAuxiliary})
    for (std::size_t j = 0; j < kJointCount; ++j) out.push_back({s, static_cast<std::uint8_t>(j)});
  return out;
}

inline void check_joint_index(int j, std::string_view table) {
  if (j < 0 || j >= static_cast<int>(kJointCount))
    throw ConfigError(std::string(table) + ": joint index " + std::to_string(j) + " outside 0..24");
}

inline std::vector<JointRef> both_subjects(const std::vector<int>& joints, std::string_view table) {
  std::set<int> unique;
  for (int j : joints) {
    check_joint_index(j, table);
    if (!unique.insert(j).second)
      throw ConfigError(std::string(table) + ": joint " + std::to_string(j) + " listed twice");
  }
  std::vector<JointRef> out;
  for (Subject s : {Subject::kMain, Subject::kAuxiliary})
    for (int j : unique) out.push_back({s, static_cast<std::uint8_t>(j)});
  return out;
}

inline std::vector<JointPair> all_pairs(const std::vector<JointRef>& joints) {
  std::vector<JointPair> out;
  out.reserve(choose2(joints.size()));
  for (std::size_t i = 0; i < joints.size(); ++i)
    for (std::size_t k = i + 1; k < joints.size(); ++k) out.push_back({joints[i], joints[k]});
  return out;
}

inline void expect_count(std::string_view what, std::size_t actual, std::size_t expected) {
  if (actual != expected)
    throw ConfigError(std::string(what) + " yields " + std::to_string(actual) + " combinations, expected " +
                      std::to_string(expected));
}

inline Line main_line(int a, int b) {
  if (a > b) std::swap(a, b);
  return {{Subject::kMain, static_cast<std::uint8_t>(a)}, {Subject::kMain, static_cast<std::uint8_t>(b)}};
}

inline std::vector<Line> ls1_lines(const SelectionTables& tables) {
  std::set<Line> lines;
  for (const auto& [a, b] : tables.ls1_lines) {
    check_joint_index(a, "LS1 lines");
    check_joint_index(b, "LS1 lines");
    if (a == b) throw ConfigError("LS1 lines: degenerate line " + std::to_string(a) + "-" + std::to_string(b));
    if (!lines.insert(main_line(a, b)).second)
      throw ConfigError("LS1 lines: line " + std::to_string(a) + "-" + std::to_string(b) + " listed twice");
  }
  return {lines.begin(), lines.end()};
}

/// Hop distances from `source` over the skeleton graph.
inline std::vector<int> hop_distances(const SelectionTables& tables, int source) {
  std::vector<std::vector<int>> adj(kJointCount);
  for (const auto& [a, b] : tables.skeleton_edges) {
    check_joint_index(a, "skeleton edges");
    check_joint_index(b, "skeleton edges");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> dist(kJointCount, -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

inline std::vector<JointLine> joint_line_triples(const std::vector<Line>& lines,
                                                 const std::vector<JointRef>& joints) {
  std::vector<JointLine> out;
  for (const Line& l : lines)
    for (const JointRef& j : joints)
      if (j != l.a && j != l.b) out.push_back({j, l});
  return out;
}

inline std::vector<LinePair> line_pairs(const std::vector<Line>& lines) {
  std::vector<LinePair> out;
  out.reserve(choose2(lines.size()));
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t k = i + 1; k < lines.size(); ++k) out.push_back({lines[i], lines[k]});
  return out;
}

}  // namespace detail

/// Declared dimension (entry count) of each strategy for a scalar family.
/// LS2 has none: its size follows from the neighbourhood table.
namespace dims {
inline constexpr std::size_t kFullPairs = 1225;
inline constexpr std::size_t kFullJointLines = 58800;
inline constexpr std::size_t kFullLinePairs = 749700;
inline constexpr std::size_t kJS1 = 600;
inline constexpr std::size_t kJS2 = 276;
inline constexpr std::size_t kJS3 = 231;
inline constexpr std::size_t kLS1Lines = 39;
inline constexpr std::size_t kLS1JointLines = 897;
inline constexpr std::size_t kLS1LinePairs = 741;
}  // namespace dims

/// Builds the ordered combination list for (family, strategy).
///
/// JS1: within-subject pairs of both subjects. JS2/JS3: all pairs over the
/// configured joints of both subjects. LS1: configured lines on the main
/// subject; JLd pairs each line with the subject's other 23 joints, LLa takes
/// all line pairs. LS2 (JLd only): lines between JS3 joints of the main subject,
/// each paired with joints within two hops of either endpoint. FULL: every
/// combination over the 50 joints.
inline SelectionPlan build_selection_plan(Family family, Strategy strategy, const SelectionTables& tables) {
  SelectionPlan plan;
  plan.family = family;
  plan.strategy = strategy;
  const bool joint_family = family == Family::kJJd || family == Family::kJJv || family == Family::kJJo;
  const std::string name = std::string(to_string(family)) + "-" + std::string(to_string(strategy));

  const bool valid = strategy == Strategy::kFull ||
                     (joint_family && (strategy == Strategy::kJS1 || strategy == Strategy::kJS2 ||
                                       strategy == Strategy::kJS3)) ||
                     (family == Family::kJLd && (strategy == Strategy::kLS1 || strategy == Strategy::kLS2)) ||
                     (family == Family::kLLa && strategy == Strategy::kLS1);
  if (!valid) throw ConfigError("strategy " + std::string(to_string(strategy)) + " is not defined for " +
                                std::string(to_string(family)));

  switch (strategy) {
    case Strategy::kFull: {
      const auto joints = detail::all_joints();
      auto pairs = detail::all_pairs(joints);
      if (joint_family) {
        plan.pairs = std::move(pairs);
      } else {
        std::vector<Line> lines;
        lines.reserve(pairs.size());
        for (const auto& p : pairs) lines.push_back({p.first, p.second});
        if (family == Family::kJLd) {
          plan.joint_lines = detail::joint_line_triples(lines, joints);
        } else {
          plan.line_pairs = detail::line_pairs(lines);
        }
      }
      break;
    }
    case Strategy::kJS1: {
      std::vector<JointPair> pairs;
      for (Subject s : {Subject::kMain, Subject::kAuxiliary}) {
        std::vector<JointRef> joints;
        for (std::size_t j = 0; j < kJointCount; ++j) joints.push_back({s, static_cast<std::uint8_t>(j)});
        auto sub = detail::all_pairs(joints);
        pairs.insert(pairs.end(), sub.begin(), sub.end());
      }
      plan.pairs = std::move(pairs);
      detail::expect_count(name, plan.pairs.size(), dims::kJS1);
      break;
    }
    case Strategy::kJS2:
    case Strategy::kJS3: {
      const bool js2 = strategy == Strategy::kJS2;
      const auto joints = detail::both_subjects(js2 ? tables.js2_joints : tables.js3_joints,
                                                js2 ? "JS2 joints" : "JS3 joints");
      plan.pairs = detail::all_pairs(joints);
      detail::expect_count(name + " (" + std::to_string(joints.size() / 2) + " joints per subject)",
                           plan.pairs.size(), js2 ? dims::kJS2 : dims::kJS3);
      break;
    }
    case Strategy::kLS1: {
      const auto lines = detail::ls1_lines(tables);
      if (family == Family::kJLd) {
        std::vector<JointRef> joints;
        for (std::size_t j = 0; j < kJointCount; ++j)
          joints.push_back({Subject::kMain, static_cast<std::uint8_t>(j)});
        plan.joint_lines = detail::joint_line_triples(lines, joints);
        detail::expect_count(name + " (" + std::to_string(lines.size()) + " lines)", plan.joint_lines.size(),
                             dims::kLS1JointLines);
      } else {
        plan.line_pairs = detail::line_pairs(lines);
        detail::expect_count(name + " (" + std::to_string(lines.size()) + " lines)", plan.line_pairs.size(),
                             dims::kLS1LinePairs);
      }
      break;
    }
    case Strategy::kLS2: {
      std::set<int> js3;
      for (int j : tables.js3_joints) {
        detail::check_joint_index(j, "JS3 joints");
        js3.insert(j);
      }
      const std::vector<int> keys(js3.begin(), js3.end());
      std::vector<std::vector<int>> hops;
      hops.reserve(kJointCount);
      for (std::size_t j = 0; j < kJointCount; ++j) hops.push_back(detail::hop_distances(tables, static_cast<int>(j)));
      for (std::size_t i = 0; i < keys.size(); ++i) {
        for (std::size_t k = i + 1; k < keys.size(); ++k) {
          const Line line = detail::main_line(keys[i], keys[k]);
          for (std::size_t j = 0; j < kJointCount; ++j) {
            const int ji = static_cast<int>(j);
            if (ji == keys[i] || ji == keys[k]) continue;
            const int da = hops[keys[i]][j];
            const int db = hops[keys[k]][j];
            if ((da >= 0 && da <= 2) || (db >= 0 && db <= 2))
              plan.joint_lines.push_back({{Subject::kMain, static_cast<std::uint8_t>(j)}, line});
          }
        }
      }
      break;
    }
  }
  return plan;
}

/// Moves every joint reference of a single-subject plan onto `subject`.
inline SelectionPlan with_subject(SelectionPlan plan, Subject subject) {
  auto move = [subject](JointRef& r) { r.subject = subject; };
  for (auto& p : plan.pairs) {
    move(p.first);
    move(p.second);
  }
  for (auto& jl : plan.joint_lines) {
    move(jl.joint);
    move(jl.line.a);
    move(jl.line.b);
  }
  for (auto& lp : plan.line_pairs) {
    move(lp.first.a);
    move(lp.first.b);
    move(lp.second.a);
    move(lp.second.b);
  }
  return plan;
}

}  // namespace skeltex
