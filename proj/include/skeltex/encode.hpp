#pragma once

// Texture encodings of feature matrices.
//
// Rows of a feature matrix become image rows and frames become columns. Every
// encoding follows the same order: per-row min-max normalization over the
// original frames, corner-aligned bilinear resize to H x W, colour mapping,
// then round-half-up quantization to 8 bits.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skeltex/error.hpp"
#include "skeltex/features.hpp"
#include "skeltex/image.hpp"
#include "skeltex/preprocess.hpp"
#include "skeltex/selection.hpp"

namespace skeltex {

/// Dense real-valued matrix, row-major.
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Grid() = default;
  Grid(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), values(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

struct ImageSize {
  std::size_t height = 256;
  std::size_t width = 256;
  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

/// Rows whose range is below this are treated as constant and map to 0.
inline constexpr double kDegenerateRange = 1e-12;

/// Min-max normalizes each row of one component of `m` into [0, 1].
/// With `subject_filter`, only rows tagged with that subject are kept.
inline Grid normalize_rows(const FeatureMatrix& m, std::size_t component = 0,
                           std::optional<RowSubject> subject_filter = std::nullopt) {
  if (component >= m.components()) throw ContractError("component index out of range");
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < m.rows; ++r)
    if (!subject_filter || m.row_subjects[r] == *subject_filter) keep.push_back(r);

  Grid out(keep.size(), m.cols);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const std::size_t r = keep[i];
    double lo = m.at(r, 0, component);
    double hi = lo;
    for (std::size_t t = 1; t < m.cols; ++t) {
      lo = std::min(lo, m.at(r, t, component));
      hi = std::max(hi, m.at(r, t, component));
    }
    const double range = hi - lo;
    if (range < kDegenerateRange) continue;  // stays 0
    for (std::size_t t = 0; t < m.cols; ++t) out(i, t) = (m.at(r, t, component) - lo) / range;
  }
  return out;
}

/// Corner-aligned bilinear resampling: output (h, w) reads the source at
/// (h (N-1)/(H-1), w (T-1)/(W-1)). A single source row or column is replicated.
inline Grid bilinear_resize(const Grid& src, std::size_t height, std::size_t width) {
  if (src.rows == 0 || src.cols == 0) throw ContractError("cannot resize an empty matrix");
  if (height == 0 || width == 0) throw ContractError("target size must be positive");

  auto coord = [](std::size_t i, std::size_t n_src, std::size_t n_dst) {
    if (n_src == 1 || n_dst == 1) return 0.0;
    return static_cast<double>(i * (n_src - 1)) / static_cast<double>(n_dst - 1);
  };
  struct Tap {
    std::size_t lo, hi;
    double frac;
  };
  auto taps = [&](std::size_t n_src, std::size_t n_dst) {
    std::vector<Tap> out(n_dst);
    for (std::size_t i = 0; i < n_dst; ++i) {
      const double c = coord(i, n_src, n_dst);
      const auto lo = std::min(static_cast<std::size_t>(std::floor(c)), n_src - 1);
      const auto hi = std::min(lo + 1, n_src - 1);
      out[i] = {lo, hi, c - static_cast<double>(lo)};
    }
    return out;
  };
  const auto ty = taps(src.rows, height);
  const auto tx = taps(src.cols, width);

  Grid out(height, width);
  for (std::size_t h = 0; h < height; ++h) {
    const Tap& y = ty[h];
    for (std::size_t w = 0; w < width; ++w) {
      const Tap& x = tx[w];
      const double top = src(y.lo, x.lo) * (1.0 - x.frac) + src(y.lo, x.hi) * x.frac;
      const double bottom = src(y.hi, x.lo) * (1.0 - x.frac) + src(y.hi, x.hi) * x.frac;
      out(h, w) = top * (1.0 - y.frac) + bottom * y.frac;
    }
  }
  return out;
}

/// Piecewise-linear jet colour map on [0, 1]: dark blue -> cyan -> yellow -> dark red.
///   r: 0 until 0.375, ramps to 1 at 0.625, holds to 0.875, falls to 0.5 at 1
///   g: 0 until 0.125, ramps to 1 at 0.375, holds to 0.625, falls to 0 at 0.875
///   b: r mirrored, b(u) = r(1 - u)
inline std::array<double, 3> jet_colorbar(double u) {
  u = std::clamp(u, 0.0, 1.0);
  auto red = [](double v) {
    if (v < 0.375) return 0.0;
    if (v < 0.625) return 4.0 * v - 1.5;
    if (v < 0.875) return 1.0;
    return 4.5 - 4.0 * v;
  };
  auto green = [](double v) {
    if (v < 0.125) return 0.0;
    if (v < 0.375) return 4.0 * v - 0.5;
    if (v < 0.625) return 1.0;
    if (v < 0.875) return 3.5 - 4.0 * v;
    return 0.0;
  };
  return {red(u), green(u), red(1.0 - u)};
}

/// Round-half-up to 0..255.
inline std::uint8_t quantize(double v) {
  v = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(255.0 * v + 0.5));
}

namespace detail {

inline void require_scalar(const FeatureMatrix& m, std::string_view who) {
  if (m.is_vector())
    throw ContractError(std::string(who) + " needs a scalar feature family, got " + std::string(to_string(m.family)));
}

inline void put_channel(TextureImage& img, const Grid& g, std::size_t channel) {
  for (std::size_t h = 0; h < img.height; ++h)
    for (std::size_t w = 0; w < img.width; ++w) img.at(h, w, channel) = quantize(g(h, w));
}

}  // namespace detail

/// EM1: scalar feature -> jet colour map.
inline TextureImage encode_em1(const FeatureMatrix& m, ImageSize size = {}) {
  detail::require_scalar(m, "EM1");
  const Grid g = bilinear_resize(normalize_rows(m), size.height, size.width);
  TextureImage img(size.height, size.width);
  for (std::size_t h = 0; h < size.height; ++h)
    for (std::size_t w = 0; w < size.width; ++w) {
      const auto rgb = jet_colorbar(g(h, w));
      for (std::size_t c = 0; c < 3; ++c) img.at(h, w, c) = quantize(rgb[c]);
    }
  return img;
}

/// EM2: vector feature -> x, y, z components in R, G, B, each normalized on its own.
inline TextureImage encode_em2(const FeatureMatrix& m, ImageSize size = {}) {
  if (!m.is_vector())
    throw ContractError("EM2 needs a vector feature family, got " + std::string(to_string(m.family)));
  TextureImage img(size.height, size.width);
  for (std::size_t c = 0; c < 3; ++c)
    detail::put_channel(img, bilinear_resize(normalize_rows(m, c), size.height, size.width), c);
  return img;
}

/// EM3: R = 1 - main, G = auxiliary, B = min(4 R G, 1), computed on the
/// normalized features and then resized per channel. Rows must correspond.
inline TextureImage encode_em3(const FeatureMatrix& main, const FeatureMatrix& aux, ImageSize size = {}) {
  detail::require_scalar(main, "EM3");
  detail::require_scalar(aux, "EM3");
  if (main.rows != aux.rows || main.cols != aux.cols)
    throw ContractError("EM3 subject matrices differ in shape: " + std::to_string(main.rows) + "x" +
                        std::to_string(main.cols) + " vs " + std::to_string(aux.rows) + "x" +
                        std::to_string(aux.cols));
  Grid r = normalize_rows(main);
  const Grid g = normalize_rows(aux);
  Grid b(r.rows, r.cols);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    r.values[i] = 1.0 - r.values[i];
    b.values[i] = std::min(4.0 * r.values[i] * g.values[i], 1.0);
  }
  TextureImage img(size.height, size.width);
  detail::put_channel(img, bilinear_resize(r, size.height, size.width), 0);
  detail::put_channel(img, bilinear_resize(g, size.height, size.width), 1);
  detail::put_channel(img, bilinear_resize(b, size.height, size.width), 2);
  return img;
}

/// EM4 ("Com"): three scalar features, one per channel.
inline TextureImage encode_em4_composite(const FeatureMatrix& jjd, const FeatureMatrix& jld,
                                         const FeatureMatrix& lla, ImageSize size = {}) {
  TextureImage img(size.height, size.width);
  std::size_t channel = 0;
  for (const FeatureMatrix* m : {&jjd, &jld, &lla}) {
    detail::require_scalar(*m, "EM4");
    detail::put_channel(img, bilinear_resize(normalize_rows(*m), size.height, size.width), channel++);
  }
  return img;
}

}  // namespace skeltex
