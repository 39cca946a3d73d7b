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

#include "h2s/projective.hpp"

#include <cmath>
#include <numbers>

namespace h2s {

namespace {

constexpr double kEyePlaneEps = 1e-12;

using A = Ability;
using G = GuideKind;

std::vector<Recipe> make_recipes() {
  const Vec2 a(0, 0), b(1, 0), c(1, 1), d(0, 1);
  std::vector<Recipe> r;
  r.push_back({AnchorRatio::Half, 0.5,
               {{G::Diagonal, a, c, A::Novice},
                {G::Diagonal, b, d, A::Novice},
                {G::HalfLine, {0.5, 0}, {0.5, 1}, A::Apprentice, true}}});
  r.push_back({AnchorRatio::Third, 1.0 / 3.0,
               {{G::Diagonal, a, c, A::Novice},
                {G::Diagonal, b, d, A::Novice},
                {G::HalfLine, {0, 0.5}, {1, 0.5}, A::Novice},
                {G::Diagonal, c, {0, 0.5}, A::Novice},
                {G::Diagonal, b, {0, 0.5}, A::Novice},
                {G::ThirdLine, {1.0 / 3.0, 0}, {1.0 / 3.0, 1}, A::Apprentice, true}}});
  r.push_back({AnchorRatio::Quarter, 0.25,
               {{G::Diagonal, a, c, A::Novice},
                {G::Diagonal, b, d, A::Novice},
                {G::HalfLine, {0.5, 0}, {0.5, 1}, A::Novice},
                {G::Diagonal, a, {0.5, 1}, A::Novice},
                {G::Diagonal, {0.5, 0}, d, A::Novice},
                {G::QuarterLine, {0.25, 0}, {0.25, 1}, A::Apprentice, true}}});
  r.push_back({AnchorRatio::ExtendHalf, 1.5,
               {{G::ExtensionRay, b, {1.5, 0}, A::Master},
                {G::ExtensionRay, c, {1.5, 1}, A::Master},
                {G::Diagonal, a, c, A::Novice},
                {G::Diagonal, b, d, A::Novice},
                {G::HalfLine, {0, 0.5}, {1, 0.5}, A::Apprentice},
                {G::HalfLine, {0.5, 0}, {0.5, 1}, A::Apprentice},
                {G::Diagonal, {0.5, 0}, {1.5, 1}, A::Apprentice},
                {G::Diagonal, {0.5, 1}, {1.5, 0}, A::Novice},
                {G::ExtensionRay, {1.5, 0}, {1.5, 1}, A::Master, true}}});
  r.push_back({AnchorRatio::ExtendOne, 2.0,
               {{G::ExtensionRay, b, {2, 0}, A::Master},
                {G::ExtensionRay, c, {2, 1}, A::Master},
                {G::Diagonal, a, c, A::Novice},
                {G::Diagonal, b, d, A::Novice},
                {G::HalfLine, {0, 0.5}, {1, 0.5}, A::Apprentice},
                {G::Diagonal, a, {2, 1}, A::Apprentice},
                {G::ExtensionRay, {2, 0}, {2, 1}, A::Master, true}}});
  r.push_back({AnchorRatio::ExtendTwo, 3.0,
               {{G::ExtensionRay, b, {3, 0}, A::Master},
                {G::ExtensionRay, c, {3, 1}, A::Master},
                {G::Diagonal, a, c, A::Novice},
                {G::Diagonal, b, d, A::Novice},
                {G::HalfLine, {0, 0.5}, {2, 0.5}, A::Apprentice},
                {G::Diagonal, a, {2, 1}, A::Apprentice},
                {G::ExtensionRay, {2, 0}, {2, 1}, A::Apprentice},
                {G::Diagonal, b, {2, 1}, A::Novice},
                {G::Diagonal, {2, 0}, c, A::Novice},
                {G::Diagonal, b, {3, 1}, A::Apprentice},
                {G::ExtensionRay, {3, 0}, {3, 1}, A::Master, true}}});
  r.push_back({AnchorRatio::Align, 0.0, {{G::AlignmentRay, a, d, A::Apprentice, true}}});
  return r;
}

const std::vector<Recipe>& all_recipes() {
  static const std::vector<Recipe> recipes = make_recipes();
  return recipes;
}

}  // namespace

void Camera::validate() const {
  if (!eye.allFinite() || !target.allFinite() || !up.allFinite()) {
    throw ProjectionError("camera: non-finite parameters");
  }
  if ((target - eye).norm() <= 1e-12) throw ProjectionError("camera: eye equals target");
  if (!(vertical_fov > 10.0 && vertical_fov < 120.0)) {
    throw ProjectionError("camera: vertical fov must be in (10, 120) degrees");
  }
  if (width <= 0 || height <= 0) throw ProjectionError("camera: empty image");
  const Vec3 f = (target - eye).normalized();
  if (up.norm() <= 1e-12 || f.cross(up.normalized()).norm() <= 1e-9) {
    throw ProjectionError("camera: up vector parallel to the viewing direction");
  }
}

Eigen::Matrix3d Camera::rotation() const {
  const Vec3 f = (target - eye).normalized();
  const Vec3 r = f.cross(up).normalized();
  const Vec3 u = r.cross(f);
  Eigen::Matrix3d rot;
  rot.row(0) = r.transpose();
  rot.row(1) = -u.transpose();
  rot.row(2) = f.transpose();
  return rot;
}

double Camera::focal_px() const {
  return 0.5 * height / std::tan(0.5 * vertical_fov * std::numbers::pi / 180.0);
}

Eigen::Matrix3d Camera::intrinsics() const {
  Eigen::Matrix3d k = Eigen::Matrix3d::Identity();
  k(0, 0) = k(1, 1) = focal_px();
  k(0, 2) = 0.5 * width;
  k(1, 2) = 0.5 * height;
  return k;
}

Eigen::Matrix<double, 3, 4> Camera::projection_matrix() const {
  Eigen::Matrix<double, 3, 4> rt;
  const Eigen::Matrix3d rot = rotation();
  rt.leftCols<3>() = rot;
  rt.col(3) = -rot * eye;
  return intrinsics() * rt;
}

std::optional<Vec2> try_project(const Camera& camera, const Vec3& p) {
  const Vec3 c = camera.rotation() * (p - camera.eye);
  if (c.z() <= kEyePlaneEps) return std::nullopt;
  const double f = camera.focal_px();
  return Vec2(0.5 * camera.width + f * c.x() / c.z(), 0.5 * camera.height + f * c.y() / c.z());
}

Vec2 project(const Camera& camera, const Vec3& p) {
  if (auto q = try_project(camera, p)) return *q;
  throw ProjectionError("point lies at or behind the eye plane");
}

std::array<VanishingPoint, 3> vanishing_points(const Camera& camera) {
  std::array<VanishingPoint, 3> out;
  const Eigen::Matrix3d rot = camera.rotation();
  const double f = camera.focal_px();
  for (int a = 0; a < kAxes; ++a) {
    out[a].axis = a;
    const Vec3 d = rot.col(a);  // rotation applied to the unit axis direction
    if (std::abs(d.z()) < 1e-12) continue;
    const Vec2 vp(0.5 * camera.width + f * d.x() / d.z(), 0.5 * camera.height + f * d.y() / d.z());
    out[a].point = vp;
    out[a].on_canvas = vp.x() >= 0 && vp.x() <= camera.width && vp.y() >= 0 && vp.y() <= camera.height;
  }
  return out;
}

Eigen::Vector3d horizon_line(const Camera& camera, Axis up_axis) {
  Vec3 n = Vec3::Zero();
  n[static_cast<int>(up_axis)] = 1.0;
  // Plane through the eye with normal n maps to the line K^{-T} R n.
  return camera.intrinsics().inverse().transpose() * (camera.rotation() * n);
}

std::string_view to_string(Ability a) {
  switch (a) {
    case Ability::Novice: return "novice";
    case Ability::Apprentice: return "apprentice";
    case Ability::Master: return "master";
  }
  return "?";
}

Ability ability_from_string(std::string_view s) {
  for (Ability a : {Ability::Novice, Ability::Apprentice, Ability::Master}) {
    if (to_string(a) == s) return a;
  }
  throw ValidationError("ability must be novice, apprentice or master");
}

std::string_view to_string(GuideKind k) {
  switch (k) {
    case GuideKind::Diagonal: return "diagonal";
    case GuideKind::HalfLine: return "half_line";
    case GuideKind::ThirdLine: return "third_line";
    case GuideKind::QuarterLine: return "quarter_line";
    case GuideKind::ExtensionRay: return "extension_ray";
    case GuideKind::AlignmentRay: return "alignment_ray";
    case GuideKind::VanishingRay: return "vanishing_ray";
    case GuideKind::EllipseTangentPoint: return "ellipse_tangent_point";
  }
  return "?";
}

GuideKind guide_kind_from_string(std::string_view s) {
  for (GuideKind k : {GuideKind::Diagonal, GuideKind::HalfLine, GuideKind::ThirdLine,
                      GuideKind::QuarterLine, GuideKind::ExtensionRay, GuideKind::AlignmentRay,
                      GuideKind::VanishingRay, GuideKind::EllipseTangentPoint}) {
    if (to_string(k) == s) return k;
  }
  throw FormatError("unknown guide kind '" + std::string(s) + "'", 0, 0);
}

const Recipe& recipe(AnchorRatio ratio) {
  for (const Recipe& r : all_recipes()) {
    if (r.ratio == ratio) return r;
  }
  throw ConstructionError("no recipe for ratio");
}

int guide_count(AnchorRatio ratio) { return static_cast<int>(recipe(ratio).lines.size()); }

int visible_guide_count(AnchorRatio ratio, Ability ability) {
  int n = 0;
  for (const RecipeLine& l : recipe(ratio).lines) {
    if (ability <= l.visible_to) ++n;
  }
  return n;
}

double ratio_u(AnchorRatio ratio) { return recipe(ratio).result_u; }

void require_nondegenerate(const FaceQuad& face) {
  const double scale = std::max({face.a.norm(), face.c.norm(), 1.0});
  if (face.area() <= 1e-12 * scale * scale) throw ConstructionError("degenerate face");
}

std::vector<GuideLine> instantiate_recipe(AnchorRatio ratio, const FaceQuad& face, bool mirrored,
                                          Interval child_v) {
  require_nondegenerate(face);
  const Recipe& rec = recipe(ratio);
  std::vector<GuideLine> out;
  out.reserve(rec.lines.size());
  int step = 1;
  for (const RecipeLine& line : rec.lines) {
    Vec2 p = line.from;
    Vec2 q = line.to;
    if (line.spans_child && p.x() == q.x()) {
      p.y() = std::min(0.0, child_v.lo);
      q.y() = std::max(1.0, child_v.hi);
    }
    if (mirrored) {
      p.x() = 1.0 - p.x();
      q.x() = 1.0 - q.x();
    }
    GuideLine g;
    g.kind = line.kind;
    g.a = face.at(p.x(), p.y());
    g.b = face.at(q.x(), q.y());
    g.host = HostFace{-1, face.normal_axis, 0};
    g.recipe_step = step++;
    g.visible_to = line.visible_to;
    out.push_back(g);
  }
  return out;
}

std::vector<GuideLine> construct_half(const FaceQuad& face) {
  return instantiate_recipe(AnchorRatio::Half, face, false);
}

std::vector<GuideLine> construct_third(const FaceQuad& face) {
  return instantiate_recipe(AnchorRatio::Third, face, false);
}

std::vector<GuideLine> construct_quarter(const FaceQuad& face) {
  return instantiate_recipe(AnchorRatio::Quarter, face, false);
}

std::vector<GuideLine> construct_extend(const FaceQuad& face, double factor) {
  if (factor == 0.5) return instantiate_recipe(AnchorRatio::ExtendHalf, face, false);
  if (factor == 1.0) return instantiate_recipe(AnchorRatio::ExtendOne, face, false);
  if (factor == 2.0) return instantiate_recipe(AnchorRatio::ExtendTwo, face, false);
  throw ConstructionError("extension factor must be 0.5, 1 or 2");
}

std::vector<GuideLine> ellipse_guides(const FaceQuad& face) {
  require_nondegenerate(face);
  struct Local {
    GuideKind kind;
    Vec2 p, q;
    Ability vis;
  };
  const Local lines[] = {
      {G::Diagonal, {0, 0}, {1, 1}, A::Novice},
      {G::Diagonal, {1, 0}, {0, 1}, A::Novice},
      {G::HalfLine, {0.5, 0}, {0.5, 1}, A::Novice},
      {G::HalfLine, {0, 0.5}, {1, 0.5}, A::Novice},
      {G::EllipseTangentPoint, {0.5, 0}, {0.5, 0}, A::Apprentice},
      {G::EllipseTangentPoint, {1, 0.5}, {1, 0.5}, A::Apprentice},
      {G::EllipseTangentPoint, {0.5, 1}, {0.5, 1}, A::Apprentice},
      {G::EllipseTangentPoint, {0, 0.5}, {0, 0.5}, A::Apprentice},
  };
  std::vector<GuideLine> out;
  int step = 1;
  for (const Local& l : lines) {
    GuideLine g;
    g.kind = l.kind;
    g.a = face.at(l.p.x(), l.p.y());
    g.b = face.at(l.q.x(), l.q.y());
    g.host = HostFace{-1, face.normal_axis, 0};
    g.recipe_step = step++;
    g.visible_to = l.vis;
    out.push_back(g);
  }
  return out;
}

}  // namespace h2s
