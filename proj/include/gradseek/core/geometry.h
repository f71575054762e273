// Copyright 2026 The Gradseek Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRADSEEK_CORE_GEOMETRY_H_
#define GRADSEEK_CORE_GEOMETRY_H_

#include <array>
#include <cmath>
#include <numbers>

namespace gradseek {

// Position in meters.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int axis) const {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }
  constexpr double& operator[](int axis) {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }

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

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(double s, const Vec3& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

constexpr double Dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double Norm(const Vec3& a) { return std::hypot(a.x, a.y, a.z); }

// Euclidean distance between two points.
inline double Distance(const Vec3& a, const Vec3& b) { return Norm(a - b); }

// Wraps an angle into (-pi, pi].
double NormalizeAngle(double radians);

// Planar pose; position.z stays 0 for ground robots.
struct Pose2 {
  Vec3 position;
  double heading = 0.0;

  friend bool operator==(const Pose2&, const Pose2&) = default;
};

// Per-axis quantity over {x, y, z}. Inactive axes hold 0.
using AxisArray = std::array<double, 3>;
using AxisMask = std::array<bool, 3>;

inline constexpr int kNumAxes = 3;

inline Vec3 ToVec3(const AxisArray& a) { return {a[0], a[1], a[2]}; }
inline AxisArray ToAxisArray(const Vec3& v) { return {v.x, v.y, v.z}; }

}  // namespace gradseek

#endif  // GRADSEEK_CORE_GEOMETRY_H_
