#pragma once

// Independent reference computations for tests and the self-test command.
// None of these call into the implementation they are used to check.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "skeltex/geometry.hpp"

namespace skeltex::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  std::uint64_t bits() { return engine_(); }

  Vec3 point(double extent = 2.0) { return {uniform(-extent, extent), uniform(-extent, extent), uniform(-extent, extent)}; }

  Vec3 unit() {
    while (true) {
      const Vec3 v = point(1.0);
      const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
      if (n > 0.1 && n <= 1.0) return {v.x / n, v.y / n, v.z / n};
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline std::array<double, 3> components(const Vec3& v) { return {v.x, v.y, v.z}; }

inline double distance_oracle(const Vec3& a, const Vec3& b) {
  const auto ca = components(a), cb = components(b);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += (ca[i] - cb[i]) * (ca[i] - cb[i]);
  return std::sqrt(s);
}

inline std::array<double, 3> difference_oracle(const Vec3& a, const Vec3& b) {
  const auto ca = components(a), cb = components(b);
  return {ca[0] - cb[0], ca[1] - cb[1], ca[2] - cb[2]};
}

/// Point-to-line distance by orthogonal projection onto the line direction.
inline double line_distance_oracle(const Vec3& pj, const Vec3& pk, const Vec3& pm) {
  const auto d = difference_oracle(pm, pk);
  const double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  const std::array<double, 3> u{d[0] / len, d[1] / len, d[2] / len};
  const auto w = difference_oracle(pj, pk);
  const double along = w[0] * u[0] + w[1] * u[1] + w[2] * u[2];
  const std::array<double, 3> perp{w[0] - along * u[0], w[1] - along * u[1], w[2] - along * u[2]};
  return std::sqrt(perp[0] * perp[0] + perp[1] * perp[1] + perp[2] * perp[2]);
}

/// Angle between two vectors via atan2(|a x b|, a . b).
inline double angle_oracle(const Vec3& a, const Vec3& b) {
  const double cx = a.y * b.z - a.z * b.y;
  const double cy = a.z * b.x - a.x * b.z;
  const double cz = a.x * b.y - a.y * b.x;
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), a.x * b.x + a.y * b.y + a.z * b.z);
}

/// Left fold of element-wise products in the given order.
inline std::vector<double> product_fold(std::span<const std::vector<double>> vs) {
  std::vector<double> acc(vs.front().size(), 1.0);
  for (const auto& v : vs)
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] * v[i];
  return acc;
}

inline std::size_t argmax_scan(std::span<const double> v) {
  std::size_t best = 0;
  double best_value = -INFINITY;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > best_value) {
      best_value = v[i];
      best = i;
    }
  return best;
}

/// Rigid motion x -> R x + t with R drawn from a uniform random unit quaternion.
struct RigidMotion {
  std::array<std::array<double, 3>, 3> r{};
  Vec3 t{};

  Vec3 apply(const Vec3& p) const { return rotate(p) + t; }
  Vec3 rotate(const Vec3& p) const {
    return {r[0][0] * p.x + r[0][1] * p.y + r[0][2] * p.z, r[1][0] * p.x + r[1][1] * p.y + r[1][2] * p.z,
            r[2][0] * p.x + r[2][1] * p.y + r[2][2] * p.z};
  }
};

inline RigidMotion random_rigid_motion(Rng& rng, double max_translation = 2.0) {
  double q[4];
  double n = 0.0;
  do {
    for (double& c : q) c = rng.uniform(-1.0, 1.0);
    n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  } while (n < 0.1 || n > 1.0);
  const double w = q[0] / n, x = q[1] / n, y = q[2] / n, z = q[3] / n;
  RigidMotion m;
  m.r = {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
          {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
          {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
  m.t = rng.point(max_translation);
  return m;
}

}  // namespace skeltex::testing
