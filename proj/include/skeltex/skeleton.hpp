#pragma once

// Skeleton sequence model and the NTU-style text format.
//
// Layout (one record per line, whitespace separated):
//
//   T                      frame count, T >= 1
//   B                      per frame: body count, B >= 0
//   body_id [extra...]     per body: integer id, trailing fields ignored
//   [25]                   optional joint-count line (real NTU files carry it)
//   x y z [extra...]       25 joint lines, meters; trailing fields ignored
//
// Blank lines are ignored. Real NTU RGB+D .skeleton files parse as-is: the body
// line's confidence/tracking fields and the per-joint depth, color, orientation
// and tracking-state fields are skipped.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "skeltex/error.hpp"
#include "skeltex/geometry.hpp"
#include "skeltex/joints.hpp"

namespace skeltex {

using BodyId = std::uint64_t;
using Pose = std::array<Joint3D, kJointCount>;

struct BodyFrame {
  BodyId body_id = 0;
  Pose joints{};

  friend bool operator==(const BodyFrame&, const BodyFrame&) = default;
};

struct Frame {
  std::vector<BodyFrame> bodies;

  bool empty() const noexcept { return bodies.empty(); }
  friend bool operator==(const Frame&, const Frame&) = default;
};

struct SkeletonSequence {
  std::string source_id;
  std::vector<Frame> frames;

  std::size_t frame_count() const noexcept { return frames.size(); }

  /// Indices of frames holding no body. They are kept so T is preserved.
  std::vector<std::size_t> empty_frames() const {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < frames.size(); ++t)
      if (frames[t].empty()) out.push_back(t);
    return out;
  }

  /// Histogram: body count -> number of frames with that count.
  std::map<std::size_t, std::size_t> bodies_per_frame() const {
    std::map<std::size_t, std::size_t> h;
    for (const auto& f : frames) ++h[f.bodies.size()];
    return h;
  }

  friend bool operator==(const SkeletonSequence&, const SkeletonSequence&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (first != last && *first == '+') ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank line split into tokens; empty when the stream is exhausted.
  std::vector<std::string_view> next() {
    while (std::getline(in_, buf_)) {
      ++line_;
      auto toks = split_ws(buf_);
      if (!toks.empty()) return toks;
    }
    ++line_;
    eof_ = true;
    return {};
  }

  std::size_t line() const noexcept { return line_; }
  bool eof() const noexcept { return eof_; }

 private:
  std::istream& in_;
  std::string buf_;
  std::size_t line_ = 0;
  bool eof_ = false;
};

inline void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace detail

/// Parses a skeleton stream. `source_id` names the sequence in diagnostics and outputs.
inline SkeletonSequence parse_skeleton(std::istream& in, std::string source_id = {}) {
  detail::LineReader reader(in);
  SkeletonSequence seq;
  seq.source_id = std::move(source_id);

  auto toks = reader.next();
  if (toks.empty()) throw ParseError(reader.line(), "missing frame count header");
  std::size_t frame_count = 0;
  if (toks.size() != 1 || !detail::parse_number(toks[0], frame_count) || frame_count == 0)
    throw ParseError(reader.line(), "malformed header: expected a positive frame count");

  seq.frames.resize(frame_count);
  // Token views alias the reader's line buffer; each is used before the next read.
  auto take = [&reader] { return reader.next(); };
  for (std::size_t t = 0; t < frame_count; ++t) {
    toks = take();
    if (toks.empty())
      throw ParseError(reader.line(), "unexpected end of file: frame " + std::to_string(t) +
                                          " of " + std::to_string(frame_count) + " missing");
    std::size_t body_count = 0;
    if (toks.size() != 1 || !detail::parse_number(toks[0], body_count))
      throw ParseError(reader.line(), "expected body count for frame " + std::to_string(t));

    auto& frame = seq.frames[t];
    frame.bodies.resize(body_count);
    for (std::size_t b = 0; b < body_count; ++b) {
      auto& body = frame.bodies[b];
      toks = take();
      if (toks.empty()) throw ParseError(reader.line(), "unexpected end of file: body record missing");
      if (!detail::parse_number(toks[0], body.body_id))
        throw ParseError(reader.line(), "expected integer body id, got '" + std::string(toks[0]) + "'");

      toks = take();
      if (toks.size() == 1) {
        std::size_t declared = 0;
        if (!detail::parse_number(toks[0], declared))
          throw ParseError(reader.line(), "expected joint count or joint coordinates");
        if (declared != kJointCount)
          throw ParseError(reader.line(), "body joint count " + std::to_string(declared) +
                                              " != " + std::to_string(kJointCount));
        toks = take();
      }
      for (std::size_t j = 0; j < kJointCount; ++j) {
        if (j > 0) toks = take();
        if (toks.empty())
          throw ParseError(reader.line(), "unexpected end of file: joint " + std::to_string(j) +
                                              " of frame " + std::to_string(t) + " missing");
        if (toks.size() < 3)
          throw ParseError(reader.line(), "expected 3 joint coordinates (joint " + std::to_string(j) +
                                              " of 25), found " + std::to_string(toks.size()) +
                                              " field(s)");
        double xyz[3];
        for (int c = 0; c < 3; ++c) {
          if (!detail::parse_number(toks[c], xyz[c]))
            throw ParseError(reader.line(), "malformed coordinate '" + std::string(toks[c]) + "'");
        }
        const Joint3D p{xyz[0], xyz[1], xyz[2]};
        if (!is_finite(p)) throw DataError(t, j, "non-finite coordinate");
        body.joints[j] = p;
      }
    }
  }
  if (!take().empty()) throw ParseError(reader.line(), "trailing data after the declared frames");
  return seq;
}

inline SkeletonSequence parse_skeleton_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open skeleton file " + path.string());
  return parse_skeleton(in, path.stem().string());
}

/// Writes the internal layout. Coordinates use shortest round-trip formatting,
/// so parse_skeleton(write_skeleton(s)) reproduces s bit for bit.
inline void write_skeleton(std::ostream& out, const SkeletonSequence& seq) {
  std::string buf;
  buf += std::to_string(seq.frames.size());
  buf += '\n';
  for (const auto& frame : seq.frames) {
    buf += std::to_string(frame.bodies.size());
    buf += '\n';
    for (const auto& body : frame.bodies) {
      buf += std::to_string(body.body_id);
      buf += '\n';
      for (const auto& p : body.joints) {
        detail::append_double(buf, p.x);
        buf += ' ';
        detail::append_double(buf, p.y);
        buf += ' ';
        detail::append_double(buf, p.z);
        buf += '\n';
      }
    }
  }
  out << buf;
}

inline std::string to_skeleton_text(const SkeletonSequence& seq) {
  std::ostringstream os;
  write_skeleton(os, seq);
  return os.str();
}

inline void write_skeleton_file(const std::filesystem::path& path, const SkeletonSequence& seq) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_skeleton(out, seq);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace skeltex
