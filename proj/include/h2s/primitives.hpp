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

#ifndef H2S_PRIMITIVES_HPP
#define H2S_PRIMITIVES_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "h2s/config.hpp"
#include "h2s/geometry.hpp"
#include "h2s/model.hpp"

namespace h2s {

/// Declared in simplicity order; fit_all prefers the earlier kind on ties.
enum class PrimitiveKind { Plane, Cylinder, Cuboid, TruncatedPyramid, Custom };

inline constexpr PrimitiveKind kFittableKinds[] = {PrimitiveKind::Plane, PrimitiveKind::Cylinder,
                                                   PrimitiveKind::Cuboid,
                                                   PrimitiveKind::TruncatedPyramid};

std::string_view to_string(PrimitiveKind kind);
PrimitiveKind primitive_kind_from_string(std::string_view s);

/// Axis-aligned scaffolding proxy of one part.
///
/// `box` holds the per-axis intervals. Cylinders store their axis-aligned
/// bounding box; the circle is inscribed in the box cross-section
/// perpendicular to `cyl_axis`. Truncated pyramids additionally carry the two
/// parallel rectangular cross-sections, each a box that is degenerate along
/// `vertical_axis`.
struct Primitive {
  int part_id = 0;
  PrimitiveKind kind = PrimitiveKind::Cuboid;
  Box3 box;
  std::optional<Box3> pyramid_bottom;
  std::optional<Box3> pyramid_top;
  int cyl_axis = -1;
  int vertical_axis = -1;
  double residue = 0.0;
  int level = 0;

  bool custom() const { return kind == PrimitiveKind::Custom; }

  /// The flat axis of a Plane; -1 for every other kind.
  int degenerate_axis() const;

  /// Same primitive re-fitted into `new_box` by the per-axis affine map from
  /// the current box (cross-sections follow the map).
  Primitive with_box(const Box3& new_box) const;
};

/// Distance from `p` to the surface of the primitive.
double surface_distance(const Primitive& prim, const Vec3& p);

/// Points spread over the primitive's surface.
std::vector<Vec3> surface_samples(const Primitive& prim);

/// Mesh points used for least-squares residues: vertices and triangle centroids.
std::vector<Vec3> fit_samples(const Segment& segment);

/// Least-squares fit of one axis-aligned primitive kind; residue is the RMS
/// of sample-to-surface distances. Throws FitError on degenerate geometry.
Primitive fit_primitive(const Segment& segment, PrimitiveKind kind, Axis up_axis = Axis::Y);

/// RMS distance from primitive surface samples to the segment's triangles.
double coverage_error(const Primitive& prim, const Segment& segment);

/// One primitive per segment, in segment order. Chooses the least residue
/// among the fits accepted by the config's custom_fit_tol; residues within
/// 1e-6 of the model diagonal tie and go to the simpler kind. Segments with
/// no accepted fit become Custom primitives holding their bounding box.
std::vector<Primitive> fit_all(const SegmentedModel& model, const EngineConfig& config = {});

}  // namespace h2s

#endif  // H2S_PRIMITIVES_HPP
