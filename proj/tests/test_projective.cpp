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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "h2s/projective.hpp"
#include "oracles.hpp"

using namespace h2s;

namespace {

using H = HPoint<double>;

H homog(const Vec2& p) { return H(p.x(), p.y(), 1.0); }

Vec2 dehomog(const H& p) { return Vec2(p.x() / p.z(), p.y() / p.z()); }

// World -> pixel through explicit 4x4 view and 3x4 intrinsic matrices.
Vec2 oracle_project(const Vec3& eye, const Vec3& target, const Vec3& up, double fov_deg, int w,
                    int h, const Vec3& p) {
  const Vec3 f = (target - eye).normalized();
  const Vec3 r = f.cross(up).normalized();
  const Vec3 d = f.cross(r);
  Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
  rot.block<1, 3>(0, 0) = r.transpose();
  rot.block<1, 3>(1, 0) = d.transpose();
  rot.block<1, 3>(2, 0) = f.transpose();
  Eigen::Matrix4d trans = Eigen::Matrix4d::Identity();
  trans.block<3, 1>(0, 3) = -eye;
  const double focal = (h / 2.0) / std::tan(fov_deg * std::numbers::pi / 360.0);
  Eigen::Matrix<double, 3, 4> k = Eigen::Matrix<double, 3, 4>::Zero();
  k(0, 0) = focal;
  k(1, 1) = focal;
  k(0, 2) = w / 2.0;
  k(1, 2) = h / 2.0;
  k(2, 2) = 1.0;
  const Eigen::Vector3d x = k * rot * trans * Eigen::Vector4d(p.x(), p.y(), p.z(), 1.0);
  return Vec2(x.x() / x.z(), x.y() / x.z());
}

Camera camera_at(const Vec3& eye, const Vec3& target, double fov = 45.0) {
  Camera c;
  c.eye = eye;
  c.target = target;
  c.up = Vec3(0, 1, 0);
  c.vertical_fov = fov;
  return c;
}

// 2D intersection of the images of two parallel 3D lines along `axis`.
Vec2 oracle_vanishing(const Camera& cam, int axis, const Vec3& p0, const Vec3& p1) {
  Vec3 step = Vec3::Zero();
  step[axis] = 0.25;
  const H l0 = homog(project(cam, p0)).cross(homog(project(cam, p0 + step)));
  const H l1 = homog(project(cam, p1)).cross(homog(project(cam, p1 + step)));
  return dehomog(l0.cross(l1));
}

HQuad<double> projected(const Camera& cam, const FaceQuad& f) {
  return {homog(project(cam, f.a)), homog(project(cam, f.b)), homog(project(cam, f.c)),
          homog(project(cam, f.d))};
}

using RandomScene = oracles::ProjectiveScene;

std::optional<RandomScene> random_scene(std::mt19937& rng) {
  return oracles::random_projective_scene(rng);
}

}  // namespace

TEST_CASE("target projects to the image center") {
  const Camera c = camera_at({3, 2, 4}, {0.5, 0.25, -0.5});
  const Vec2 p = project(c, c.target);
  CHECK(std::abs(p.x() - 500.0) <= 1e-9);
  CHECK(std::abs(p.y() - 400.0) <= 1e-9);
}

TEST_CASE("points on or behind the eye plane are rejected") {
  const Camera c = camera_at({0, 0, 5}, {0, 0, 0});
  CHECK_THROWS_AS(project(c, Vec3(1, 1, 5)), ProjectionError);
  CHECK_THROWS_AS(project(c, Vec3(0, 0, 6)), ProjectionError);
  CHECK_FALSE(try_project(c, Vec3(2, -1, 5)).has_value());
}

TEST_CASE("degenerate cameras are rejected") {
  CHECK_THROWS_AS(camera_at({1, 1, 1}, {1, 1, 1}).validate(), ProjectionError);
  CHECK_THROWS_AS(camera_at({0, 5, 0}, {0, 0, 0}).validate(), ProjectionError);  // up along gaze
  CHECK_THROWS_AS(camera_at({0, 0, 5}, {0, 0, 0}, 5.0).validate(), ProjectionError);
  CHECK_THROWS_AS(camera_at({0, 0, 5}, {0, 0, 0}, 150.0).validate(), ProjectionError);
  CHECK_NOTHROW(camera_at({0, 0, 5}, {0, 0, 0}).validate());
}

TEST_CASE("unit cube corners match the hand-composed matrix pipeline") {
  const Vec3 eye(3.0, 2.2, 4.1);
  const Vec3 target(0.5, 0.5, 0.5);
  const Camera c = camera_at(eye, target, 50.0);
  for (int m = 0; m < 8; ++m) {
    const Vec3 p(m & 1, (m >> 1) & 1, (m >> 2) & 1);
    const Vec2 got = project(c, p);
    const Vec2 want = oracle_project(eye, target, Vec3(0, 1, 0), 50.0, 1000, 800, p);
    CHECK((got - want).norm() <= 1e-9);
    const Eigen::Vector3d x = c.projection_matrix() * Eigen::Vector4d(p.x(), p.y(), p.z(), 1.0);
    CHECK((Vec2(x.x() / x.z(), x.y() / x.z()) - want).norm() <= 1e-9);
  }
}

TEST_CASE("level gaze: vertical vanishing point absent, horizontal ones on the horizon") {
  const Camera c = camera_at({4, 0.5, 3}, {0, 0.5, 0});
  const auto vps = vanishing_points(c);
  CHECK_FALSE(vps[1].point.has_value());
  REQUIRE(vps[0].point.has_value());
  REQUIRE(vps[2].point.has_value());
  const Eigen::Vector3d h = horizon_line(c, Axis::Y);
  for (int a : {0, 2}) {
    const double d = std::abs(h.dot(homog(*vps[a].point))) / h.head<2>().norm();
    CHECK(d <= 1e-6);
  }
}

TEST_CASE("tilted camera: three vanishing points match line intersections") {
  const Camera c = camera_at({3.0, 4.0, 5.0}, {0.2, -0.1, 0.3});
  const auto vps = vanishing_points(c);
  for (int a = 0; a < 3; ++a) {
    CAPTURE(a);
    REQUIRE(vps[a].point.has_value());
    const Vec2 want = oracle_vanishing(c, a, Vec3(0, 0, 0), Vec3(0.5, 0.7, -0.4));
    CHECK((*vps[a].point - want).norm() <= 1e-6 * std::max(1.0, want.norm()));
    const bool inside =
        want.x() >= 0 && want.x() <= c.width && want.y() >= 0 && want.y() <= c.height;
    CHECK(vps[a].on_canvas == inside);
  }
  const Eigen::Vector3d h = horizon_line(c, Axis::Y);
  for (int a : {0, 2}) {
    CHECK(std::abs(h.dot(homog(*vps[a].point))) / h.head<2>().norm() <= 1e-6);
  }
}

TEST_CASE("third construction on the unit square meets BD at (1/3, 2/3)") {
  const HQuad<double> q{H(0, 0, 1), H(1, 0, 1), H(1, 1, 1), H(0, 1, 1)};
  const H e(0, 0.5, 1);
  const Vec2 i = dehomog(join<double>(q.c, e).cross(join<double>(q.b, q.d)));
  CHECK(i.x() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(i.y() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(dehomog(construct_third_point<double>(q)).x() == doctest::Approx(1.0 / 3.0));

  const HQuad<double> wide{H(0, 0, 1), H(2, 0, 1), H(2, 1, 1), H(0, 1, 1)};
  CHECK(dehomog(construct_third_point<double>(wide)).x() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("planar constructions on the unit square") {
  const HQuad<double> q{H(0, 0, 1), H(1, 0, 1), H(1, 1, 1), H(0, 1, 1)};
  CHECK(dehomog(quad_center<double>(q)).isApprox(Vec2(0.5, 0.5)));
  CHECK(dehomog(construct_half_point<double>(q)).isApprox(Vec2(0.5, 0.0)));
  CHECK(dehomog(construct_quarter_point<double>(q)).isApprox(Vec2(0.25, 0.0)));
  CHECK(dehomog(construct_extend_point<double>(q, 1.0)).isApprox(Vec2(2.0, 0.0)));
  CHECK(dehomog(construct_extend_point<double>(q, 0.5)).isApprox(Vec2(1.5, 0.0)));
  CHECK(dehomog(construct_extend_point<double>(q, 2.0)).isApprox(Vec2(3.0, 0.0)));
  CHECK_THROWS_AS(construct_extend_point<double>(q, 3.0), ConstructionError);
  const auto t = construct_tangent_points<double>(q);
  CHECK(dehomog(t[0]).isApprox(Vec2(0.5, 0.0)));
  CHECK(dehomog(t[1]).isApprox(Vec2(1.0, 0.5)));
  CHECK(dehomog(t[2]).isApprox(Vec2(0.5, 1.0)));
  CHECK(dehomog(t[3]).isApprox(Vec2(0.0, 0.5)));
}

TEST_CASE("half of a half is the quarter") {
  const HQuad<double> q{H(0.1, 0.2, 1), H(1.7, 0.1, 1), H(1.5, 1.2, 1), H(0.3, 1.0, 1)};
  const H vp_v = meet<double>(join<double>(q.a, q.d), join<double>(q.b, q.c));
  const H half_line = join<double>(quad_center<double>(q), vp_v);
  const HQuad<double> left{q.a, meet<double>(half_line, join<double>(q.a, q.b)),
                           meet<double>(half_line, join<double>(q.d, q.c)), q.d};
  CHECK((dehomog(construct_half_point<double>(left)) -
         dehomog(construct_quarter_point<double>(q)))
            .norm() <= 1e-12);
}

TEST_CASE("constructions on projected quads equal projected 3D points over 1000 cameras") {
  std::mt19937 rng(2026);
  int tested = 0;
  double worst = 0.0;
  while (tested < 1000) {
    const auto scene = random_scene(rng);
    if (!scene) continue;
    ++tested;
    const Camera& cam = scene->camera;
    const FaceQuad& f = scene->face;
    const HQuad<double> q = projected(cam, f);
    auto check = [&](const std::string what, const H& got, const Vec3& world) {
      INFO(what << " in scene " << tested);
      const double err = (dehomog(got) - project(cam, world)).norm();
      worst = std::max(worst, err);
      CHECK(err <= 1e-6);
    };
    check("center", quad_center<double>(q), f.at(0.5, 0.5));
    check("half", construct_half_point<double>(q), f.at(0.5, 0.0));
    check("third", construct_third_point<double>(q), f.at(1.0 / 3.0, 0.0));
    check("quarter", construct_quarter_point<double>(q), f.at(0.25, 0.0));
    check("extend_half", construct_extend_point<double>(q, 0.5), f.at(1.5, 0.0));
    check("extend_one", construct_extend_point<double>(q, 1.0), f.at(2.0, 0.0));
    check("extend_two", construct_extend_point<double>(q, 2.0), f.at(3.0, 0.0));
    check("two_third", construct_third_point<double>(mirrored_quad<double>(q)), f.at(2.0 / 3.0, 0.0));
    check("extend_mirrored", construct_extend_point<double>(mirrored_quad<double>(q), 1.0), f.at(-1.0, 0.0));
    const auto t = construct_tangent_points<double>(q);
    check("tangent0", t[0], f.at(0.5, 0.0));
    check("tangent1", t[1], f.at(1.0, 0.5));
    check("tangent2", t[2], f.at(0.5, 1.0));
    check("tangent3", t[3], f.at(0.0, 0.5));
  }
  MESSAGE("worst incidence error over 1000 cameras: " << worst << " px");
}

TEST_CASE("tangency points lie on the projected inscribed conic, tangent to the edges") {
  std::mt19937 rng(99);
  int tested = 0;
  while (tested < 300) {
    const auto scene = random_scene(rng);
    if (!scene) continue;
    ++tested;
    const Camera& cam = scene->camera;
    const FaceQuad& f = scene->face;
    // Face-local (u, v, 1) -> image homography.
    Eigen::Matrix3d hom;
    const Eigen::Matrix<double, 3, 4> p = cam.projection_matrix();
    auto col = [&](const Vec3& x, double w) {
      return Eigen::Vector3d(p * Eigen::Vector4d(x.x(), x.y(), x.z(), w));
    };
    hom.col(0) = col(f.b - f.a, 0.0);
    hom.col(1) = col(f.d - f.a, 0.0);
    hom.col(2) = col(f.a, 1.0);
    // Inscribed ellipse (u - 1/2)^2 + (v - 1/2)^2 = 1/4 in local coordinates.
    Eigen::Matrix3d local;
    local << 1, 0, -0.5, 0, 1, -0.5, -0.5, -0.5, 0.25;
    const Eigen::Matrix3d inv = hom.inverse();
    const Eigen::Matrix3d conic = inv.transpose() * local * inv;
    const HQuad<double> q = projected(cam, f);
    const auto t = construct_tangent_points<double>(q);
    const H edges[4] = {join<double>(q.a, q.b), join<double>(q.b, q.c), join<double>(q.d, q.c),
                        join<double>(q.a, q.d)};
    for (int k = 0; k < 4; ++k) {
      const H x = homog(dehomog(t[k]));
      const Eigen::Vector3d grad = conic * x;
      // First-order distance to the conic, in pixels.
      const double dist = std::abs(x.dot(grad)) / (2.0 * grad.head<2>().norm());
      CHECK(dist <= 1e-6);
      // The tangent at x is the edge line through it.
      const Eigen::Vector3d a = grad.normalized();
      const Eigen::Vector3d b = edges[k].normalized();
      CHECK(a.cross(b).norm() <= 1e-6);
    }
  }
}

TEST_CASE("recipe line counts equal the guide counts; endpoints stay on the host plane") {
  const Box3 box(Vec3(0.2, 0.1, -0.3), Vec3(1.4, 0.9, 0.8));
  const FaceQuad face = make_face_quad(box, 2, box.max().z(), 0);
  for (AnchorRatio r : kAllRatios) {
    CAPTURE(to_string(r));
    const auto lines = instantiate_recipe(r, face, false);
    CHECK(static_cast<int>(lines.size()) == guide_count(r));
    int step = 0;
    bool has_result = false;
    for (const GuideLine& g : lines) {
      CHECK(g.recipe_step == ++step);
      CHECK(g.a.z() == box.max().z());
      CHECK(g.b.z() == box.max().z());
      const double ua = (g.a.x() - face.a.x()) / (face.b.x() - face.a.x());
      const double ub = (g.b.x() - face.a.x()) / (face.b.x() - face.a.x());
      has_result = has_result || (std::abs(ua - ratio_u(r)) < 1e-12 && std::abs(ub - ratio_u(r)) < 1e-12);
    }
    CHECK(has_result);
    int novice = 0;
    for (const GuideLine& g : lines) novice += Ability::Novice <= g.visible_to;
    CHECK(novice == visible_guide_count(r, Ability::Novice));
  }
  CHECK(visible_guide_count(AnchorRatio::Half, Ability::Novice) == 3);
  CHECK(visible_guide_count(AnchorRatio::Half, Ability::Apprentice) == 1);
  CHECK(visible_guide_count(AnchorRatio::Half, Ability::Master) == 0);
  CHECK(visible_guide_count(AnchorRatio::ExtendHalf, Ability::Novice) == 9);
  CHECK(visible_guide_count(AnchorRatio::ExtendHalf, Ability::Apprentice) == 6);
  CHECK(visible_guide_count(AnchorRatio::ExtendHalf, Ability::Master) == 3);
  CHECK(construct_half(face).size() == 3);
  CHECK(construct_third(face).size() == 6);
  CHECK(construct_extend(face, 0.5).size() == 9);
  CHECK_THROWS_AS(construct_extend(face, 3.0), ConstructionError);
}

TEST_CASE("mirrored recipes land on 1 - u") {
  const Box3 box(Vec3(0, 0, 0), Vec3(2, 1, 1));
  const FaceQuad face = make_face_quad(box, 2, 0.0, 0);
  const auto third = instantiate_recipe(AnchorRatio::Third, face, true);
  bool found = false;
  for (const GuideLine& g : third) {
    found = found || (std::abs(g.a.x() - 4.0 / 3.0) < 1e-12 && std::abs(g.b.x() - 4.0 / 3.0) < 1e-12);
  }
  CHECK(found);
}

TEST_CASE("ellipse guides: two half constructions and four tangency points") {
  const FaceQuad face = make_face_quad(Box3(Vec3(0, 0, 0), Vec3(1, 1, 1)), 1, 0.0, 0);
  const auto g = ellipse_guides(face);
  std::vector<Vec3> points;
  for (const GuideLine& l : g) {
    if (l.kind == GuideKind::EllipseTangentPoint) {
      CHECK(l.a == l.b);
      points.push_back(l.a);
    }
  }
  REQUIRE(points.size() == 4);
  CHECK(points[0].isApprox(Vec3(0.5, 0, 0)));
  CHECK(points[1].isApprox(Vec3(1, 0, 0.5)));
  CHECK(points[2].isApprox(Vec3(0.5, 0, 1)));
  CHECK(points[3].isApprox(Vec3(0, 0, 0.5)));
  // The circle inscribed in the unit square touches each edge at its midpoint.
  for (const Vec3& p : points) {
    CHECK(std::hypot(p.x() - 0.5, p.z() - 0.5) == doctest::Approx(0.5));
  }
  const FaceQuad flat = make_face_quad(Box3(Vec3(0, 0, 0), Vec3(1, 0, 0)), 1, 0.0, 0);
  CHECK_THROWS_AS(ellipse_guides(flat), ConstructionError);
}

TEST_CASE("ability names round-trip") {
  for (Ability a : {Ability::Novice, Ability::Apprentice, Ability::Master}) {
    CHECK(ability_from_string(to_string(a)) == a);
  }
  CHECK_THROWS(ability_from_string("expert"));
}
