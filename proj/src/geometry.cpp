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

#include "h2s/geometry.hpp"

#include <algorithm>
#include <limits>

namespace h2s {

FaceQuad make_face_quad(const Box3& box, int normal_axis, double plane, int u_axis) {
  FaceQuad q;
  q.normal_axis = normal_axis;
  q.u_axis = u_axis;
  q.v_axis = 3 - normal_axis - u_axis;
  q.plane = plane;
  Vec3 origin = box.min();
  origin[normal_axis] = plane;
  Vec3 du = Vec3::Zero();
  Vec3 dv = Vec3::Zero();
  du[q.u_axis] = box.sizes()[q.u_axis];
  dv[q.v_axis] = box.sizes()[q.v_axis];
  q.a = origin;
  q.b = origin + du;
  q.c = origin + du + dv;
  q.d = origin + dv;
  return q;
}

// Closest point on triangle, after Ericson, "Real-Time Collision Detection".
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return ap.norm();

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return bp.norm();

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return (p - (a + v * ab)).norm();
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return cp.norm();

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return (p - (a + w * ac)).norm();
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (p - (b + w * (c - b))).norm();
  }

  const double denom = va + vb + vc;
  if (std::abs(denom) < std::numeric_limits<double>::min()) {
    // Degenerate triangle: fall back to the closest edge.
    auto seg = [&](const Vec3& s, const Vec3& e) {
      const Vec3 d = e - s;
      const double len2 = d.squaredNorm();
      const double t = len2 > 0.0 ? std::clamp((p - s).dot(d) / len2, 0.0, 1.0) : 0.0;
      return (p - (s + t * d)).norm();
    };
    return std::min({seg(a, b), seg(b, c), seg(c, a)});
  }
  const double v = vb / denom;
  const double w = vc / denom;
  return (p - (a + ab * v + ac * w)).norm();
}

double point_box_surface_distance(const Vec3& p, const Box3& box) {
  const Vec3 below = box.min() - p;
  const Vec3 above = p - box.max();
  const Vec3 outside = below.cwiseMax(above).cwiseMax(0.0);
  if (outside.squaredNorm() > 0.0) return outside.norm();
  // Inside or on the boundary: nearest face.
  const Vec3 to_lo = p - box.min();
  const Vec3 to_hi = box.max() - p;
  return to_lo.cwiseMin(to_hi).minCoeff();
}

std::optional<std::pair<double, double>> segment_box_overlap(const Vec3& from, const Vec3& to,
                                                             const Box3& box) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Vec3 d = to - from;
  for (int a = 0; a < kAxes; ++a) {
    if (std::abs(d[a]) < 1e-300) {
      if (from[a] < box.min()[a] || from[a] > box.max()[a]) return std::nullopt;
      continue;
    }
    double ta = (box.min()[a] - from[a]) / d[a];
    double tb = (box.max()[a] - from[a]) / d[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return std::nullopt;
  }
  return std::make_pair(t0, t1);
}

std::array<Vec3, 8> box_corners(const Box3& box) {
  std::array<Vec3, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = box.corner(static_cast<Box3::CornerType>(i));
  return out;
}

const std::array<std::array<int, 2>, 12>& box_edge_indices() {
  // Corner bit k set means max along axis k; edges join corners differing in one bit.
  static const std::array<std::array<int, 2>, 12> edges = {{
      {0, 1}, {2, 3}, {4, 5}, {6, 7},  // along X
      {0, 2}, {1, 3}, {4, 6}, {5, 7},  // along Y
      {0, 4}, {1, 5}, {2, 6}, {3, 7},  // along Z
  }};
  return edges;
}

std::array<Vec3, 14> box_sample_points(const Box3& box) {
  std::array<Vec3, 14> out;
  const auto corners = box_corners(box);
  std::copy(corners.begin(), corners.end(), out.begin());
  const Vec3 center = box.center();
  int k = 8;
  for (int axis = 0; axis < kAxes; ++axis) {
    for (int side = 0; side < 2; ++side) {
      Vec3 p = center;
      p[axis] = face_coordinate(box, axis, side);
      out[k++] = p;
    }
  }
  return out;
}

Vec3 map_between_boxes(const Vec3& p, const Box3& from, const Box3& to) {
  Vec3 out;
  for (int a = 0; a < kAxes; ++a) {
    const double len = from.sizes()[a];
    if (len > 0.0) {
      const double t = (p[a] - from.min()[a]) / len;
      out[a] = to.min()[a] + t * to.sizes()[a];
    } else {
      out[a] = p[a] + (to.center()[a] - from.center()[a]);
    }
  }
  return out;
}

}  // namespace h2s
