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

#include "fixtures.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace h2s::fixtures {

Segment box_segment(int id, const std::string& name, const Vec3& lo, const Vec3& hi) {
  Segment s;
  s.id = id;
  s.name = name;
  for (int k = 0; k < 8; ++k) {
    s.vertices.emplace_back((k & 1) ? hi.x() : lo.x(), (k & 2) ? hi.y() : lo.y(),
                            (k & 4) ? hi.z() : lo.z());
  }
  // Two triangles per face, outward winding.
  s.triangles = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6}, {0, 1, 5}, {0, 5, 4},
                 {2, 6, 7}, {2, 7, 3}, {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5}};
  return s;
}

Segment cylinder_segment(int id, const std::string& name, int axis, const Vec3& center,
                         double radius, double half_height, int sides) {
  Segment s;
  s.id = id;
  s.name = name;
  const auto [u, v] = other_axes(axis);
  for (int end = 0; end < 2; ++end) {
    for (int k = 0; k < sides; ++k) {
      const double th = 2.0 * std::numbers::pi * k / sides;
      Vec3 p = center;
      p[axis] += end == 0 ? -half_height : half_height;
      p[u] += radius * std::cos(th);
      p[v] += radius * std::sin(th);
      s.vertices.push_back(p);
    }
  }
  Vec3 bottom = center;
  bottom[axis] -= half_height;
  Vec3 top = center;
  top[axis] += half_height;
  const int cb = static_cast<int>(s.vertices.size());
  s.vertices.push_back(bottom);
  s.vertices.push_back(top);
  for (int k = 0; k < sides; ++k) {
    const int a = k;
    const int b = (k + 1) % sides;
    s.triangles.push_back({a, b, sides + b});
    s.triangles.push_back({a, sides + b, sides + a});
    s.triangles.push_back({cb, b, a});
    s.triangles.push_back({cb + 1, sides + a, sides + b});
  }
  // Orient every triangle away from the center.
  for (auto& t : s.triangles) {
    const Vec3& p0 = s.vertices[t[0]];
    const Vec3 n = (s.vertices[t[1]] - p0).cross(s.vertices[t[2]] - p0);
    const Vec3 centroid = (p0 + s.vertices[t[1]] + s.vertices[t[2]]) / 3.0;
    if (n.dot(centroid - center) < 0.0) std::swap(t[1], t[2]);
  }
  return s;
}

Segment plane_segment(int id, const std::string& name, int axis, double at, const Vec3& lo,
                      const Vec3& hi) {
  Segment s;
  s.id = id;
  s.name = name;
  const auto [u, v] = other_axes(axis);
  for (int k = 0; k < 4; ++k) {
    Vec3 p;
    p[axis] = at;
    p[u] = (k == 1 || k == 2) ? hi[u] : lo[u];
    p[v] = (k >= 2) ? hi[v] : lo[v];
    s.vertices.push_back(p);
  }
  s.triangles = {{0, 1, 2}, {0, 2, 3}};
  return s;
}

Segment helix_segment(int id, const std::string& name, const Vec3& center, double radius,
                      double height, double turns) {
  Segment s;
  s.id = id;
  s.name = name;
  constexpr int kSteps = 160;
  constexpr int kRing = 6;
  const double tube = 0.02 * radius;
  for (int i = 0; i <= kSteps; ++i) {
    const double t = static_cast<double>(i) / kSteps;
    const double th = 2.0 * std::numbers::pi * turns * t;
    const Vec3 c = center + Vec3(radius * std::cos(th), height * (t - 0.5), radius * std::sin(th));
    const Vec3 radial(std::cos(th), 0.0, std::sin(th));
    const Vec3 up(0.0, 1.0, 0.0);
    for (int k = 0; k < kRing; ++k) {
      const double ph = 2.0 * std::numbers::pi * k / kRing;
      s.vertices.push_back(c + tube * (std::cos(ph) * radial + std::sin(ph) * up));
    }
  }
  for (int i = 0; i < kSteps; ++i) {
    for (int k = 0; k < kRing; ++k) {
      const int a = i * kRing + k;
      const int b = i * kRing + (k + 1) % kRing;
      s.triangles.push_back({a, b, b + kRing});
      s.triangles.push_back({a, b + kRing, a + kRing});
    }
  }
  return s;
}

SegmentedModel make_model(std::vector<Segment> segments, Axis up) {
  SegmentedModel m;
  m.segments = std::move(segments);
  m.up_axis = up;
  return validate_model(std::move(m));
}

SegmentedModel two_cuboids() {
  return make_model({box_segment(0, "block", {0, 0, 0}, {1, 1, 1}),
                     box_segment(1, "crate", {1.5, 0, 0.2}, {2.3, 0.6, 0.9})});
}

SegmentedModel mixer() {
  return make_model({
      box_segment(0, "base", {-1, 0, -0.7}, {1, 0.3, 0.7}),
      box_segment(1, "column", {0.6, 0.3, -0.2}, {0.95, 1.6, 0.2}),
      cylinder_segment(2, "bowl", 1, {0, 0.6, 0}, 0.5, 0.3),
      box_segment(3, "head", {-0.3, 1.6, -0.25}, {0.95, 1.9, 0.25}),
      box_segment(4, "button", {0.2, 0.15, 0.7}, {0.45, 0.28, 0.78}),
      cylinder_segment(5, "beater", 1, {0, 1.05, 0}, 0.08, 0.55),
  });
}

SegmentedModel chain4() {
  return make_model({
      box_segment(0, "slab", {0, 0, 0}, {2, 0.4, 1.2}),
      box_segment(1, "riser", {0.21, 0.4, 0.53}, {1.72, 0.99, 1.17}),
      box_segment(2, "cap", {0.26, 0.99, 0.63}, {1.25, 1.62, 1.08}),
      box_segment(3, "knob", {0.34, 1.62, 0.64}, {1.04, 2.16, 0.96}),
  });
}

SegmentedModel fig6() {
  return make_model({
      box_segment(0, "body", {0, 0, 0}, {2, 1, 1}),
      box_segment(1, "left", {0.05, 1, 0.1}, {0.62, 1.5, 0.66}),
      box_segment(2, "right", {1.33, 1, 0.2}, {1.98, 1.4, 0.73}),
      box_segment(3, "top", {0.12, 1.5, 0.17}, {0.43, 1.8, 0.47}),
  });
}

SegmentedModel eight_parts() {
  return make_model({
      box_segment(0, "top", {0, 0.9, 0}, {2, 1.0, 1}),
      box_segment(1, "leg_a", {0.02, 0, 0.03}, {0.13, 0.9, 0.14}),
      box_segment(2, "leg_b", {1.86, 0, 0.04}, {1.97, 0.9, 0.15}),
      box_segment(3, "leg_c", {0.03, 0, 0.85}, {0.14, 0.9, 0.96}),
      box_segment(4, "leg_d", {1.87, 0, 0.86}, {1.98, 0.9, 0.97}),
      box_segment(5, "drawer", {0.55, 0.72, 0.08}, {1.47, 0.9, 0.93}),
      cylinder_segment(6, "lamp_foot", 1, {1.6, 1.04, 0.45}, 0.16, 0.04),
      box_segment(7, "book", {0.2, 1.0, 0.2}, {0.71, 1.09, 0.58}),
  });
}

SegmentedModel with_custom() {
  return make_model({
      box_segment(0, "base", {-1, 0, -1}, {1, 0.2, 1}),
      box_segment(1, "post", {-0.1, 0.2, -0.1}, {0.1, 1.4, 0.1}),
      helix_segment(2, "spring", {0.0, 0.8, 0.0}, 0.4, 1.0, 3.0),
  });
}

SegmentedModel single_cuboid() {
  return make_model({box_segment(0, "cube", {0, 0, 0}, {1, 1, 1})});
}

SegmentedModel cylinder_on_slab() {
  return make_model({
      box_segment(0, "slab", {-1, 0, -1}, {1, 0.25, 1}),
      cylinder_segment(1, "can", 1, {0.3, 0.75, 0.2}, 0.35, 0.5),
  });
}

SegmentedModel sign_on_post() {
  return make_model({
      box_segment(0, "base", {-0.6, 0, -0.6}, {0.6, 0.1, 0.6}),
      box_segment(1, "post", {-0.06, 0.1, -0.06}, {0.06, 1.6, 0.06}),
      plane_segment(2, "sign", 2, 0.07, {-0.5, 1.05, 0.07}, {0.52, 1.55, 0.07}),
  });
}

std::vector<Named> all() {
  return {{"two_cuboids", two_cuboids()}, {"mixer", mixer()},       {"chain4", chain4()},
          {"fig6", fig6()},               {"eight_parts", eight_parts()},
          {"with_custom", with_custom()}, {"single_cuboid", single_cuboid()},
          {"cylinder_on_slab", cylinder_on_slab()}, {"sign_on_post", sign_on_post()}};
}

}  // namespace h2s::fixtures
