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

#ifndef H2S_CANDIDATES_HPP
#define H2S_CANDIDATES_HPP

#include <array>
#include <string_view>
#include <vector>

#include "h2s/config.hpp"
#include "h2s/primitives.hpp"
#include "h2s/projective.hpp"
#include "h2s/relations.hpp"

namespace h2s {

/// Feature line of a parent primitive along one axis.
enum class Feature {
  LoEdge,
  HiEdge,
  HalfLine,
  ThirdLine,
  TwoThirdLine,
  QuarterLine,
  ThreeQuarterLine,
  ExtendReflection,
};

std::string_view to_string(Feature f);
Feature feature_from_string(std::string_view s);

/// Where one end of an axis (or its midpoint) is placed. `parent` < 0 means
/// unguided: the child keeps its original coordinate.
struct SideSpec {
  int parent = -1;
  Feature feature = Feature::LoEdge;
  AnchorRatio ratio = AnchorRatio::Align;
  bool mirrored = false;  // recipe runs from the parent's hi edge
  HostFace host;

  bool guided() const { return parent >= 0; }
  bool operator==(const SideSpec&) const = default;
};

/// Anchoring of one world axis. By default `lo` and `hi` place the two
/// ends. With `pin` >= 0 the axis is translated rigidly so that its lo end
/// (0), hi end (1) or midpoint (2) lands on the feature given by `lo`; this
/// is how relation-restoring counterparts are built.
struct AxisAnchor {
  int axis = 0;
  SideSpec lo;
  SideSpec hi;
  int pin = -1;

  bool rigid() const { return pin >= 0; }

  bool guided() const { return lo.guided() || hi.guided(); }
  bool operator==(const AxisAnchor&) const = default;
};

struct Candidate {
  int id = -1;
  int part_id = 0;
  Primitive geometry;
  std::array<AxisAnchor, 3> anchors;
  std::vector<int> parents;  // sorted candidate ids
  int level = 0;
  double e_d = 0.0;
  double e_e = 0.0;
  std::vector<int> restored_relations;  // indices into the relation list

  double cost() const { return e_d + e_e; }
};

/// Everything candidate costs are measured against.
struct CostContext {
  const std::vector<Primitive>* originals = nullptr;  // indexed by part id
  double model_max_face_area = 1.0;
  double bbox_diagonal = 1.0;
  EngineConfig config;

  const Primitive& original(int part) const { return (*originals)[part]; }
};

/// Per-axis candidate intervals for `child` anchored on `parent` along
/// `axis`. Each surviving pair of end specs keeps the length change and
/// midpoint shift within the prune bound.
struct AxisOption {
  AxisAnchor anchor;
  Interval interval;
};

std::vector<AxisOption> generate_axis_anchors(Interval child, Interval parent, int axis,
                                              int parent_id, const HostFace& host,
                                              const EngineConfig& config);

/// Position of `feature` on a parent interval. For ExtendReflection the
/// ratio gives the factor and `mirrored` extends beyond the lo edge.
double feature_position(Interval parent, Feature feature, AnchorRatio ratio, bool mirrored);

/// True when the child interval stays within the prune bound of `original`.
bool within_prune(Interval original, Interval adjusted, double prune_fraction);

/// Sum over axes of normalized length change and midpoint shift for guided
/// axes, or the unguided penalty. A Plane skips its flat axis.
double cost_e_d(const Candidate& c, const CostContext& ctx);

/// w_e times, over guided specs, guide count scaled by the model's largest
/// face area over the hosting parent face area. Infinite on a degenerate host.
double cost_e_e(const Candidate& c, const std::vector<Candidate>& pool, const CostContext& ctx);

/// Host face of `parent_box` used to anchor `axis` of `child_box`: among
/// the faces whose plane contains the axis, the side nearest the child, on
/// the normal with the larger face area.
HostFace choose_host(const Box3& parent_box, int parent_id, int axis, const Box3& child_box);

/// Face quad a side anchor's recipe is drawn on, with u along `axis`.
FaceQuad host_quad(const Candidate& parent, const HostFace& host, int axis);

struct CandidateSet {
  std::vector<Candidate> candidates;     // ids equal positions
  std::vector<std::vector<int>> per_part;  // part id -> candidate ids; empty for Custom
  std::vector<std::pair<int, int>> pairs;  // anchoring neighbours (i < j)
  double model_max_face_area = 0.0;
};

/// Runs the three generation stages: (i) anchors on the neighbours'
/// originals, (ii) counterparts restoring relations broken by a stage (i)
/// candidate, (iii) anchors on level-1 candidates. Ids are dense, assigned
/// level by level in canonical order.
CandidateSet generate_candidates(const std::vector<Primitive>& primitives,
                                 const std::vector<Relation>& relations, const EngineConfig& config,
                                 double bbox_diagonal);

/// Candidate ids that are transitively reachable through parent edges.
std::vector<int> ancestors(const std::vector<Candidate>& pool, int id);

}  // namespace h2s

#endif  // H2S_CANDIDATES_HPP
