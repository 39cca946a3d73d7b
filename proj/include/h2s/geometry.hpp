// Copyright 2026 The h2s Authors
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

#ifndef H2S_GEOMETRY_HPP
#define H2S_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace h2s {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Box3 = Eigen::AlignedBox3d;

/// World axis index: 0 = X, 1 = Y, 2 = Z.
enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline constexpr int kAxes = 3;

inline const char* axis_name(int axis) {
  static constexpr const char* names[] = {"X", "Y", "Z"};
  return names[axis];
}

/// The two axes perpendicular to `axis`, in increasing index order.
inline std::array<int, 2> other_axes(int axis) {
  switch (axis) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

/// Closed interval on one world axis.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool operator==(const Interval&) const = default;
};

inline Interval axis_interval(const Box3& box, int axis) {
  return {box.min()[axis], box.max()[axis]};
}

inline void set_axis_interval(Box3& box, int axis, Interval iv) {
  box.min()[axis] = iv.lo;
  box.max()[axis] = iv.hi;
}

inline double face_coordinate(const Box3& box, int axis, int side) {
  return side == 0 ? box.min()[axis] : box.max()[axis];
}

/// Area of the box face perpendicular to `normal_axis`.
inline double face_area(const Box3& box, int normal_axis) {
  const auto [a, b] = other_axes(normal_axis);
  const Vec3 d = box.sizes();
  return d[a] * d[b];
}

inline double max_face_area(const Box3& box) {
  double best = 0.0;
  for (int n = 0; n < kAxes; ++n) best = std::max(best, face_area(box, n));
  return best;
}

/// Axis-aligned rectangle lying on a box face (or mid-plane), expressed as
/// its four corners A, B, C, D with AB along `u_axis` and AD along `v_axis`.
struct FaceQuad {
  Vec3 a, b, c, d;
  int u_axis = 0;
  int v_axis = 1;
  int normal_axis = 2;
  double plane = 0.0;

  /// Point at local coordinates (u, v) where the unit square maps onto ABCD.
  Vec3 at(double u, double v) const { return a + u * (b - a) + v * (d - a); }
  double area() const { return (b - a).norm() * (d - a).norm(); }
};

/// Builds the face quad of `box` perpendicular to `normal_axis` at
/// coordinate `plane`, with local u running along `u_axis`.
FaceQuad make_face_quad(const Box3& box, int normal_axis, double plane, int u_axis);

/// Euclidean distance from `p` to triangle (a, b, c).
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

/// Distance from `p` to the boundary surface of `box`, whether `p` lies
/// inside or outside.
double point_box_surface_distance(const Vec3& p, const Box3& box);

/// Parametric interval [t0, t1] where the segment `from + t (to - from)`,
/// t in [0, 1], lies inside `box`. Empty when the segment misses it.
std::optional<std::pair<double, double>> segment_box_overlap(const Vec3& from, const Vec3& to,
                                                             const Box3& box);

/// The 8 corners of `box` in the order of Eigen's CornerType.
std::array<Vec3, 8> box_corners(const Box3& box);

/// The 12 edges of `box` as corner-index pairs into box_corners().
const std::array<std::array<int, 2>, 12>& box_edge_indices();

/// 8 corners followed by the 6 face centers.
std::array<Vec3, 14> box_sample_points(const Box3& box);

/// Exterior distance between two boxes; 0 when they touch or overlap.
inline double box_gap(const Box3& a, const Box3& b) {
  Vec3 d;
  for (int k = 0; k < kAxes; ++k) {
    d[k] = std::max({0.0, a.min()[k] - b.max()[k], b.min()[k] - a.max()[k]});
  }
  return d.norm();
}

/// Scale-and-translate map taking `from` onto `to` independently per axis.
/// Axes where `from` is degenerate are translated only.
Vec3 map_between_boxes(const Vec3& p, const Box3& from, const Box3& to);

}  // namespace h2s

#endif  // H2S_GEOMETRY_HPP
