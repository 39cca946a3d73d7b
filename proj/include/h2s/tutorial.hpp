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

#ifndef H2S_TUTORIAL_HPP
#define H2S_TUTORIAL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "h2s/plan.hpp"
#include "h2s/projective.hpp"

namespace h2s {

enum class StepKind {
  DrawVanishingSetup,
  DrawGuide,
  DrawPrimitiveEdge,
  DrawEllipse,
  EraseGuides,
  DrawContours,
  EyeballPrimitive,
};

std::string_view to_string(StepKind k);
StepKind step_kind_from_string(std::string_view s);

using Segment3 = std::array<Vec3, 2>;

struct TutorialStep {
  int index = 0;
  StepKind kind = StepKind::DrawVanishingSetup;
  int part_id = -1;
  std::string text;
  int inset_candidate = -1;
  std::vector<int> draw_guides;   // guides first drawn in this step
  std::vector<int> use_guides;    // every guide this step relies on
  std::vector<int> erase_guides;  // EraseGuides only
  std::vector<Segment3> edges;
  std::vector<Polyline> polylines;
};

/// One drawn primitive, kept for the inset thumbnail.
struct ScaffoldItem {
  int part_id = 0;
  int candidate = -1;  // -1 for Custom parts
  PrimitiveKind kind = PrimitiveKind::Cuboid;
  Box3 box;
};

struct Tutorial {
  Camera camera;
  Ability ability = Ability::Novice;
  Axis up_axis = Axis::Y;
  double bbox_diagonal = 1.0;
  std::uint64_t config_hash = 0;
  std::array<VanishingPoint, 3> vanishing;
  Eigen::Vector3d horizon = Eigen::Vector3d::Zero();
  std::vector<GuideLine> guides;  // id == position
  std::vector<TutorialStep> steps;
  std::vector<int> part_order;
  std::vector<int> skipped_parts;
  std::vector<ScaffoldItem> scaffold;
  std::vector<std::string> warnings;
};

/// Linear extension of the dependency DAG. Among the parts whose
/// predecessors are all placed, the one with the nearest center to the eye
/// goes first; equal distances go by part id.
std::vector<int> break_ties(const std::vector<int>& parts,
                            const std::vector<std::pair<int, int>>& edges,
                            const std::map<int, Vec3>& centers, const Vec3& eye);

/// True when the segment from the eye to `p` passes through the inside of `box`.
bool occluded_by(const Vec3& eye, const Vec3& p, const Box3& box);

/// Parts whose 14 sample points are all hidden by other parts' boxes and
/// which are not ancestors (through `edges`) of any visible part.
std::vector<int> cull_occluded(const std::map<int, Box3>& boxes,
                               const std::vector<std::pair<int, int>>& edges, const Vec3& eye);

/// Signed-free projected area of a face quad in pixels; 0 if any corner
/// cannot be projected.
double projected_area(const Camera& camera, const FaceQuad& face);

/// True when a construction with projected host area `area_px` and `k`
/// guides should be drawn by eye instead. Never true for k == 0.
bool should_eyeball(double area_px, int k, const Camera& camera, const EngineConfig& config);

/// Guides of a recipe visible at `ability`.
std::vector<GuideLine> ability_filter(const std::vector<GuideLine>& guides, Ability ability);

/// Edges of a primitive as 3D segments (box edges; a Plane gives its outline;
/// a truncated pyramid its two rectangles and four slanted edges).
std::vector<Segment3> primitive_edges(const Primitive& p);

/// Circle inscribed in the cap face of a cylinder at `side`.
Polyline cap_ellipse(const Box3& box, int axis, int side, int samples = 64);

/// Portions of a polyline that are not hidden behind any of `occluders`,
/// split where they pass behind a box.
std::vector<Polyline> clip_polyline(const Polyline& line, const std::vector<Box3>& occluders,
                                    const Vec3& eye);

/// Sharp and view-dependent silhouette edges of a mesh segment.
std::vector<Polyline> silhouette_edges(const Segment& segment, const Vec3& eye);

/// Builds the step list for one view and ability.
Tutorial compile_tutorial(const Plan& plan, const Camera& camera, Ability ability);

/// Merges guides whose segments coincide within `merge_tol` (either
/// direction), renumbers them by first use, fills draw lists and lifetimes,
/// and inserts one EraseGuides step after each step that is some guide's
/// last use. `steps` must not contain EraseGuides yet; indices are reassigned.
void compute_lifetimes(std::vector<TutorialStep>& steps, std::vector<GuideLine>& guides,
                       double merge_tol);

}  // namespace h2s

#endif  // H2S_TUTORIAL_HPP
