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

// Synthetic segmented models shared by the unit tests, the acceptance
// binary and the CLI tests.

#ifndef H2S_TESTS_FIXTURES_HPP
#define H2S_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "h2s/model.hpp"

namespace h2s::fixtures {

/// Closed box, 8 vertices and 12 triangles.
Segment box_segment(int id, const std::string& name, const Vec3& lo, const Vec3& hi);

/// Closed n-gon prism around `axis`, centered at `center`.
Segment cylinder_segment(int id, const std::string& name, int axis, const Vec3& center,
                         double radius, double half_height, int sides = 64);

/// Flat rectangle (two triangles) perpendicular to `axis` at coordinate `at`.
Segment plane_segment(int id, const std::string& name, int axis, double at, const Vec3& lo,
                      const Vec3& hi);

/// Thin helical tube, which no primitive approximates well.
Segment helix_segment(int id, const std::string& name, const Vec3& center, double radius,
                      double height, double turns);

SegmentedModel make_model(std::vector<Segment> segments, Axis up = Axis::Y);

/// Two cuboids sharing their bottom plane; 24 triangles in total.
SegmentedModel two_cuboids();

/// Six parts with coaxial, coplanar and common-bisector relations.
SegmentedModel mixer();

/// Four parts in a chain where a second-level anchor pays off.
SegmentedModel chain4();

/// Four parts: a body with three attachments, one fed by another.
SegmentedModel fig6();

/// Eight parts for the runtime envelope.
SegmentedModel eight_parts();

/// Base, post and a free-form wire that ends up Custom.
SegmentedModel with_custom();

/// A single cuboid.
SegmentedModel single_cuboid();

/// A cylinder standing on a slab.
SegmentedModel cylinder_on_slab();

/// A post on a base carrying a flat sign.
SegmentedModel sign_on_post();

struct Named {
  std::string name;
  SegmentedModel model;
};

/// Every fixture above, in a fixed order.
std::vector<Named> all();

}  // namespace h2s::fixtures

#endif  // H2S_TESTS_FIXTURES_HPP
