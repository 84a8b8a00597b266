#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace skeltex {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

  constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
};

/// A joint position. Meters in camera space, unitless after spine normalization.
using Joint3D = Vec3;

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Row-major 3x3 matrix; rows are the images of the output axes.
struct Mat3 {
  std::array<Vec3, 3> rows{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};

  static constexpr Mat3 identity() { return {}; }

  constexpr Vec3 operator*(const Vec3& v) const {
    return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)};
  }

  constexpr Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
      const Vec3 col0{o.rows[0].x, o.rows[1].x, o.rows[2].x};
      const Vec3 col1{o.rows[0].y, o.rows[1].y, o.rows[2].y};
      const Vec3 col2{o.rows[0].z, o.rows[1].z, o.rows[2].z};
      r.rows[i] = {dot(rows[i], col0), dot(rows[i], col1), dot(rows[i], col2)};
    }
    return r;
  }

  constexpr Mat3 transposed() const {
    return {{Vec3{rows[0].x, rows[1].x, rows[2].x}, Vec3{rows[0].y, rows[1].y, rows[2].y},
             Vec3{rows[0].z, rows[1].z, rows[2].z}}};
  }
};

/// Rotation by `angle` radians about the unit vector `axis` (Rodrigues).
inline Mat3 axis_angle(const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const double x = axis.x, y = axis.y, z = axis.z;
  return {{Vec3{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
           Vec3{t * x * y + s * z, t * y * y + c, t * y * z - s * x},
           Vec3{t * x * z - s * y, t * y * z + s * x, t * z * z + c}}};
}

/// Below this length a direction is treated as undefined.
inline constexpr double kDegenerateLength = 1e-9;

// Pairwise and line features over joint positions.

/// Euclidean distance between two joints.
inline double jj_distance(const Joint3D& pj, const Joint3D& pk) { return norm(pj - pk); }

/// Displacement from joint k to joint j.
constexpr Vec3 jj_vector(const Joint3D& pj, const Joint3D& pk) { return pj - pk; }

/// Unit vector along pj - pk; the zero vector when the joints coincide.
inline Vec3 jj_orientation(const Joint3D& pj, const Joint3D& pk) {
  const Vec3 v = jj_vector(pj, pk);
  const double d = norm(v);
  if (d < kDegenerateLength) return {};
  return v / d;
}

/// Distance from joint j to the infinite line through pk and pm.
/// |(pj - pk) x (pj - pm)| / |pk - pm|; zero when the line is degenerate.
inline double jl_distance(const Joint3D& pj, const Joint3D& pk, const Joint3D& pm) {
  const double base = jj_distance(pk, pm);
  if (base < kDegenerateLength) return 0.0;
  return norm(cross(jj_vector(pj, pk), jj_vector(pj, pm))) / base;
}

/// Angle in [0, pi] between two unit orientations; zero if either is the zero vector.
/// Equal to acos(o1 . o2), evaluated through the half chord so that nearly
/// parallel or antiparallel lines do not amplify rounding error.
inline double ll_angle(const Vec3& o1, const Vec3& o2) {
  if (o1 == Vec3{} || o2 == Vec3{}) return 0.0;
  if (dot(o1, o2) >= 0.0) return 2.0 * std::asin(std::min(1.0, norm(o1 - o2) / 2.0));
  return std::numbers::pi - 2.0 * std::asin(std::min(1.0, norm(o1 + o2) / 2.0));
}

}  // namespace skeltex
