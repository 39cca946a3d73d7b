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

#ifndef H2S_PROJECTIVE_HPP
#define H2S_PROJECTIVE_HPP

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "h2s/config.hpp"
#include "h2s/errors.hpp"
#include "h2s/geometry.hpp"

namespace h2s {

/// Pinhole camera looking from `eye` at `target`; pixel coordinates are
/// y-down with the origin at the top-left corner of the image.
struct Camera {
  Vec3 eye{0.0, 0.0, 5.0};
  Vec3 target{0.0, 0.0, 0.0};
  Vec3 up{0.0, 1.0, 0.0};
  double vertical_fov = 45.0;  // degrees
  int width = 1000;
  int height = 800;

  /// Throws ProjectionError when eye == target, the fov is outside
  /// (10, 120) degrees, the image is empty, or `up` is parallel to the gaze.
  void validate() const;

  /// Rows: image-right, image-down, forward (unit vectors).
  Eigen::Matrix3d rotation() const;
  double focal_px() const;
  Eigen::Matrix3d intrinsics() const;
  /// 3x4 matrix K [R | -R eye].
  Eigen::Matrix<double, 3, 4> projection_matrix() const;
  double image_area() const { return static_cast<double>(width) * height; }
};

/// Projects `p`; throws ProjectionError at or behind the eye plane.
Vec2 project(const Camera& camera, const Vec3& p);
std::optional<Vec2> try_project(const Camera& camera, const Vec3& p);

struct VanishingPoint {
  int axis = 0;
  std::optional<Vec2> point;  // none when the axis is parallel to the image plane
  bool on_canvas = false;
};

/// Images of the three world-axis directions.
std::array<VanishingPoint, 3> vanishing_points(const Camera& camera);

/// Homogeneous image line of the horizon for the given up axis (l . x = 0).
Eigen::Vector3d horizon_line(const Camera& camera, Axis up_axis);

/// Most advanced drawing ability that still sees a guide. A guide is shown
/// to a user when the user's ability is at most this value.
enum class Ability { Novice, Apprentice, Master };

std::string_view to_string(Ability a);
Ability ability_from_string(std::string_view s);

enum class GuideKind {
  Diagonal,
  HalfLine,
  ThirdLine,
  QuarterLine,
  ExtensionRay,
  AlignmentRay,
  VanishingRay,
  EllipseTangentPoint
};

std::string_view to_string(GuideKind k);
GuideKind guide_kind_from_string(std::string_view s);

/// Face of a candidate hosting a construction; side 2 denotes the mid-plane.
struct HostFace {
  int candidate = -1;
  int normal_axis = 0;
  int side = 0;
  bool operator==(const HostFace&) const = default;
};

/// Construction line stored as a 3D segment on its host plane.
struct GuideLine {
  int id = -1;
  GuideKind kind = GuideKind::Diagonal;
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  HostFace host;
  int recipe_step = 1;
  Ability visible_to = Ability::Novice;
  int first_step = -1;
  int last_step = -1;
};

/// One line of a construction recipe in face-local coordinates, where the
/// host face is the unit square A(0,0) B(1,0) C(1,1) D(0,1) and the feature
/// being constructed is a line of constant u. Lines flagged `spans_child`
/// are stretched along v to cover the anchored primitive.
struct RecipeLine {
  GuideKind kind;
  Vec2 from;
  Vec2 to;
  Ability visible_to;
  bool spans_child = false;
};

struct Recipe {
  AnchorRatio ratio;
  double result_u;  // u of the constructed feature line
  std::vector<RecipeLine> lines;
};

/// Canonical recipes: Half at u = 1/2, Third at u = 1/3, Quarter at u = 1/4,
/// Align on the edge u = 0, and extensions beyond the edge u = 1 to
/// u = 1.5, 2 and 3.
const Recipe& recipe(AnchorRatio ratio);

/// Number of construction lines a novice draws for `ratio`.
int guide_count(AnchorRatio ratio);

/// Number of lines of `ratio`'s recipe visible at `ability`.
int visible_guide_count(AnchorRatio ratio, Ability ability);

/// Instantiates a recipe on `face`. `mirrored` maps u to 1 - u (ThirdLine ->
/// TwoThirdLine, LoEdge -> HiEdge, extension beyond the lo edge).
/// `child_v` is the anchored primitive's extent along v in face-local
/// coordinates; spanning lines cover [min(0, lo), max(1, hi)].
std::vector<GuideLine> instantiate_recipe(AnchorRatio ratio, const FaceQuad& face, bool mirrored,
                                          Interval child_v = {0.0, 1.0});

/// Diagonals and the half line; `u_axis` picks the direction being halved.
std::vector<GuideLine> construct_half(const FaceQuad& face);
std::vector<GuideLine> construct_third(const FaceQuad& face);
std::vector<GuideLine> construct_quarter(const FaceQuad& face);
/// factor in {0.5, 1, 2}; throws ConstructionError otherwise.
std::vector<GuideLine> construct_extend(const FaceQuad& face, double factor);

/// Both Half constructions on the face plus the four edge midpoints where the
/// inscribed ellipse touches the face (as zero-length EllipseTangentPoint guides).
std::vector<GuideLine> ellipse_guides(const FaceQuad& face);

/// Throws ConstructionError when the face has (near) zero area.
void require_nondegenerate(const FaceQuad& face);

// ---------------------------------------------------------------------------
// Straightedge constructions executed on a projected quad in homogeneous
// image coordinates. Incidence is preserved by projection, so running these
// on the projected corners reproduces the projection of the 3D ratio points.

template <typename Scalar>
using HPoint = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
struct HQuad {
  HPoint<Scalar> a, b, c, d;
};

template <typename Scalar>
HPoint<Scalar> join(const HPoint<Scalar>& p, const HPoint<Scalar>& q) {
  // Normalized so that chained constructions cannot overflow.
  return p.cross(q).normalized();
}

template <typename Scalar>
HPoint<Scalar> meet(const HPoint<Scalar>& l, const HPoint<Scalar>& m) {
  return l.cross(m).normalized();
}

template <typename Scalar>
HQuad<Scalar> mirrored_quad(const HQuad<Scalar>& q) {
  return {q.b, q.a, q.d, q.c};
}

/// Point where the line through `p` toward the vanishing point of AD meets AB.
template <typename Scalar>
HPoint<Scalar> drop_to_ab(const HQuad<Scalar>& q, const HPoint<Scalar>& p) {
  const HPoint<Scalar> vp_v = meet<Scalar>(join<Scalar>(q.a, q.d), join<Scalar>(q.b, q.c));
  return meet<Scalar>(join<Scalar>(p, vp_v), join<Scalar>(q.a, q.b));
}

template <typename Scalar>
HPoint<Scalar> quad_center(const HQuad<Scalar>& q) {
  return meet<Scalar>(join<Scalar>(q.a, q.c), join<Scalar>(q.b, q.d));
}

/// Perspective midpoint of AB.
template <typename Scalar>
HPoint<Scalar> construct_half_point(const HQuad<Scalar>& q) {
  return drop_to_ab<Scalar>(q, quad_center<Scalar>(q));
}

/// Point at 1/3 along AB: CE meets BD where E is the midpoint of AD.
template <typename Scalar>
HPoint<Scalar> construct_third_point(const HQuad<Scalar>& q) {
  const HPoint<Scalar> vp_u = meet<Scalar>(join<Scalar>(q.a, q.b), join<Scalar>(q.d, q.c));
  const HPoint<Scalar> mid_line = join<Scalar>(quad_center<Scalar>(q), vp_u);
  const HPoint<Scalar> e = meet<Scalar>(mid_line, join<Scalar>(q.a, q.d));
  const HPoint<Scalar> i = meet<Scalar>(join<Scalar>(q.c, e), join<Scalar>(q.b, q.d));
  return drop_to_ab<Scalar>(q, i);
}

/// Point at 1/4 along AB: the half point of the sub-quad A G G' D.
template <typename Scalar>
HPoint<Scalar> construct_quarter_point(const HQuad<Scalar>& q) {
  const HPoint<Scalar> vp_v = meet<Scalar>(join<Scalar>(q.a, q.d), join<Scalar>(q.b, q.c));
  const HPoint<Scalar> half_line = join<Scalar>(quad_center<Scalar>(q), vp_v);
  const HPoint<Scalar> g = meet<Scalar>(half_line, join<Scalar>(q.a, q.b));
  const HPoint<Scalar> g2 = meet<Scalar>(half_line, join<Scalar>(q.d, q.c));
  return construct_half_point<Scalar>(HQuad<Scalar>{q.a, g, g2, q.d});
}

/// Reflection of the quad across BC: returns the far corners (on AB and DC
/// extended) of the adjacent congruent quad.
template <typename Scalar>
std::pair<HPoint<Scalar>, HPoint<Scalar>> reflect_across_bc(const HQuad<Scalar>& q) {
  const HPoint<Scalar> vp_u = meet<Scalar>(join<Scalar>(q.a, q.b), join<Scalar>(q.d, q.c));
  const HPoint<Scalar> mid_line = join<Scalar>(quad_center<Scalar>(q), vp_u);
  const HPoint<Scalar> m = meet<Scalar>(mid_line, join<Scalar>(q.b, q.c));
  const HPoint<Scalar> far_top = meet<Scalar>(join<Scalar>(q.a, m), join<Scalar>(q.d, q.c));
  const HPoint<Scalar> far_bottom = drop_to_ab<Scalar>(q, far_top);
  return {far_bottom, far_top};
}

/// Point on AB extended beyond B by `factor` x |AB| (factor in {0.5, 1, 2}).
template <typename Scalar>
HPoint<Scalar> construct_extend_point(const HQuad<Scalar>& q, double factor) {
  if (factor == 1.0) return reflect_across_bc<Scalar>(q).first;
  if (factor == 2.0) {
    const auto [p2, p3] = reflect_across_bc<Scalar>(q);
    return reflect_across_bc<Scalar>(HQuad<Scalar>{q.b, p2, p3, q.c}).first;
  }
  if (factor == 0.5) {
    const HPoint<Scalar> vp_u = meet<Scalar>(join<Scalar>(q.a, q.b), join<Scalar>(q.d, q.c));
    const HPoint<Scalar> center = quad_center<Scalar>(q);
    const HPoint<Scalar> m = meet<Scalar>(join<Scalar>(center, vp_u), join<Scalar>(q.b, q.c));
    const HPoint<Scalar> g = construct_half_point<Scalar>(q);
    const HPoint<Scalar> top = meet<Scalar>(join<Scalar>(g, m), join<Scalar>(q.d, q.c));
    return drop_to_ab<Scalar>(q, top);
  }
  throw ConstructionError("extension factor must be 0.5, 1 or 2");
}

/// Feature point on AB for an anchor ratio, built by straightedge only.
template <typename Scalar>
HPoint<Scalar> construct_ratio_point(const HQuad<Scalar>& q, AnchorRatio ratio) {
  switch (ratio) {
    case AnchorRatio::Half: return construct_half_point<Scalar>(q);
    case AnchorRatio::Third: return construct_third_point<Scalar>(q);
    case AnchorRatio::Quarter: return construct_quarter_point<Scalar>(q);
    case AnchorRatio::ExtendHalf: return construct_extend_point<Scalar>(q, 0.5);
    case AnchorRatio::ExtendOne: return construct_extend_point<Scalar>(q, 1.0);
    case AnchorRatio::ExtendTwo: return construct_extend_point<Scalar>(q, 2.0);
    case AnchorRatio::Align: return q.a;
  }
  return q.a;
}

/// Perspective midpoints of AB, BC, CD, DA: the tangency points of the
/// ellipse inscribed in the projected face.
template <typename Scalar>
std::array<HPoint<Scalar>, 4> construct_tangent_points(const HQuad<Scalar>& q) {
  const HPoint<Scalar> center = quad_center<Scalar>(q);
  const HPoint<Scalar> vp_u = meet<Scalar>(join<Scalar>(q.a, q.b), join<Scalar>(q.d, q.c));
  const HPoint<Scalar> vp_v = meet<Scalar>(join<Scalar>(q.a, q.d), join<Scalar>(q.b, q.c));
  const HPoint<Scalar> u_line = join<Scalar>(center, vp_v);
  const HPoint<Scalar> v_line = join<Scalar>(center, vp_u);
  return {meet<Scalar>(u_line, join<Scalar>(q.a, q.b)), meet<Scalar>(v_line, join<Scalar>(q.b, q.c)),
          meet<Scalar>(u_line, join<Scalar>(q.d, q.c)), meet<Scalar>(v_line, join<Scalar>(q.a, q.d))};
}

/// Face-local u of the constructed feature for `ratio` (Align -> 0).
double ratio_u(AnchorRatio ratio);

}  // namespace h2s

#endif  // H2S_PROJECTIVE_HPP
