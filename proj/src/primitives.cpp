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

#include "h2s/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "h2s/errors.hpp"

namespace h2s {

namespace {

constexpr double kSlabFraction = 0.10;

double rms(const std::vector<double>& d) {
  if (d.empty()) return 0.0;
  double s = 0.0;
  for (double x : d) s += x * x;
  return std::sqrt(s / static_cast<double>(d.size()));
}

double closed_cylinder_distance(const Vec3& p, int axis, double cu, double cv, double r,
                                Interval extent) {
  const auto [u, v] = other_axes(axis);
  const double rho = std::hypot(p[u] - cu, p[v] - cv);
  const double h = p[axis];
  if (rho <= r && h >= extent.lo && h <= extent.hi) {
    return std::min({r - rho, h - extent.lo, extent.hi - h});
  }
  const double dr = std::max(rho - r, 0.0);
  const double dh = std::max({extent.lo - h, h - extent.hi, 0.0});
  return std::hypot(dr, dh);
}

std::array<Vec3, 8> frustum_corners(const Primitive& prim) {
  const int vert = prim.vertical_axis;
  const auto [u, v] = other_axes(vert);
  std::array<Vec3, 8> c;
  const Box3* rects[2] = {&*prim.pyramid_bottom, &*prim.pyramid_top};
  for (int level = 0; level < 2; ++level) {
    const Box3& r = *rects[level];
    const double h = level == 0 ? prim.box.min()[vert] : prim.box.max()[vert];
    const double us[4] = {r.min()[u], r.max()[u], r.max()[u], r.min()[u]};
    const double vs[4] = {r.min()[v], r.min()[v], r.max()[v], r.max()[v]};
    for (int k = 0; k < 4; ++k) {
      Vec3 p;
      p[vert] = h;
      p[u] = us[k];
      p[v] = vs[k];
      c[level * 4 + k] = p;
    }
  }
  return c;
}

// Quads of the frustum as corner indices (bottom, top, four sides).
constexpr int kFrustumQuads[6][4] = {{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                     {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};

double frustum_distance(const Primitive& prim, const Vec3& p) {
  const auto c = frustum_corners(prim);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : kFrustumQuads) {
    best = std::min(best, point_triangle_distance(p, c[q[0]], c[q[1]], c[q[2]]));
    best = std::min(best, point_triangle_distance(p, c[q[0]], c[q[2]], c[q[3]]));
  }
  return best;
}

Box3 bounds_of(const std::vector<Vec3>& pts) {
  Box3 b;
  b.setEmpty();
  for (const Vec3& p : pts) b.extend(p);
  return b;
}

struct CircleResidual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const std::vector<Vec3>* samples;
  int axis;
  Interval extent;

  int inputs() const { return 3; }
  int values() const { return static_cast<int>(samples->size()); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    for (std::size_t i = 0; i < samples->size(); ++i) {
      f[static_cast<Eigen::Index>(i)] =
          closed_cylinder_distance((*samples)[i], axis, x[0], x[1], std::abs(x[2]), extent);
    }
    return 0;
  }
};

Primitive fit_cylinder_on_axis(const Segment& segment, const std::vector<Vec3>& samples, int axis,
                               double scale) {
  const Box3 bb = segment.bounds();
  const Interval extent = axis_interval(bb, axis);
  if (extent.length() <= 1e-9 * scale) throw FitError("cylinder: zero extent along axis");
  const auto [u, v] = other_axes(axis);

  // Algebraic circle fit on the projected vertices.
  const auto n = static_cast<Eigen::Index>(segment.vertices.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3& p = segment.vertices[static_cast<std::size_t>(i)];
    a(i, 0) = 2.0 * p[u];
    a(i, 1) = 2.0 * p[v];
    a(i, 2) = 1.0;
    rhs[i] = p[u] * p[u] + p[v] * p[v];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 3) throw FitError("cylinder: projected cross-section is degenerate");
  const Eigen::Vector3d sol = qr.solve(rhs);
  const double r2 = sol[2] + sol[0] * sol[0] + sol[1] * sol[1];
  if (!(r2 > 0.0)) throw FitError("cylinder: no real circle");

  Eigen::VectorXd x(3);
  x << sol[0], sol[1], std::sqrt(r2);
  CircleResidual functor{&samples, axis, extent};
  Eigen::NumericalDiff<CircleResidual> numeric(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<CircleResidual>, double> lm(numeric);
  lm.parameters.maxfev = 400;
  lm.minimize(x);
  const double r = std::abs(x[2]);
  if (!(r > 1e-9 * scale) || !x.allFinite()) throw FitError("cylinder: radius collapsed");

  Primitive prim;
  prim.part_id = segment.id;
  prim.kind = PrimitiveKind::Cylinder;
  prim.cyl_axis = axis;
  Vec3 lo, hi;
  lo[axis] = extent.lo;
  hi[axis] = extent.hi;
  lo[u] = x[0] - r;
  hi[u] = x[0] + r;
  lo[v] = x[1] - r;
  hi[v] = x[1] + r;
  prim.box = Box3(lo, hi);
  std::vector<double> d;
  d.reserve(samples.size());
  for (const Vec3& p : samples) d.push_back(closed_cylinder_distance(p, axis, x[0], x[1], r, extent));
  prim.residue = rms(d);
  return prim;
}

}  // namespace

std::string_view to_string(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::Plane: return "plane";
    case PrimitiveKind::Cylinder: return "cylinder";
    case PrimitiveKind::Cuboid: return "cuboid";
    case PrimitiveKind::TruncatedPyramid: return "truncated_pyramid";
    case PrimitiveKind::Custom: return "custom";
  }
  return "?";
}

PrimitiveKind primitive_kind_from_string(std::string_view s) {
  for (PrimitiveKind k : {PrimitiveKind::Plane, PrimitiveKind::Cylinder, PrimitiveKind::Cuboid,
                          PrimitiveKind::TruncatedPyramid, PrimitiveKind::Custom}) {
    if (to_string(k) == s) return k;
  }
  throw FormatError("unknown primitive kind '" + std::string(s) + "'", 0, 0);
}

int Primitive::degenerate_axis() const {
  if (kind != PrimitiveKind::Plane) return -1;
  const Vec3 d = box.sizes();
  int axis = 0;
  for (int a = 1; a < kAxes; ++a) {
    if (d[a] < d[axis]) axis = a;
  }
  return axis;
}

Primitive Primitive::with_box(const Box3& new_box) const {
  Primitive out = *this;
  out.box = new_box;
  auto map_rect = [&](const Box3& r) {
    return Box3(map_between_boxes(r.min(), box, new_box), map_between_boxes(r.max(), box, new_box));
  };
  if (pyramid_bottom) out.pyramid_bottom = map_rect(*pyramid_bottom);
  if (pyramid_top) out.pyramid_top = map_rect(*pyramid_top);
  return out;
}

double surface_distance(const Primitive& prim, const Vec3& p) {
  switch (prim.kind) {
    case PrimitiveKind::Plane: {
      const Vec3 clamped = p.cwiseMax(prim.box.min()).cwiseMin(prim.box.max());
      return (p - clamped).norm();
    }
    case PrimitiveKind::Cylinder: {
      const auto [u, v] = other_axes(prim.cyl_axis);
      const Vec3 c = prim.box.center();
      const double r = 0.5 * prim.box.sizes()[u];
      return closed_cylinder_distance(p, prim.cyl_axis, c[u], c[v], r,
                                      axis_interval(prim.box, prim.cyl_axis));
    }
    case PrimitiveKind::TruncatedPyramid: return frustum_distance(prim, p);
    case PrimitiveKind::Cuboid:
    case PrimitiveKind::Custom: return point_box_surface_distance(p, prim.box);
  }
  return 0.0;
}

std::vector<Vec3> surface_samples(const Primitive& prim) {
  std::vector<Vec3> out;
  constexpr int kGrid = 7;
  auto grid_quad = [&](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const double s = (i + 0.5) / kGrid;
        const double t = (j + 0.5) / kGrid;
        out.push_back((1 - s) * (1 - t) * a + s * (1 - t) * b + s * t * c + (1 - s) * t * d);
      }
    }
  };
  switch (prim.kind) {
    case PrimitiveKind::Plane: {
      const FaceQuad q = make_face_quad(prim.box, prim.degenerate_axis(), prim.box.min()[prim.degenerate_axis()],
                                        other_axes(prim.degenerate_axis())[0]);
      grid_quad(q.a, q.b, q.c, q.d);
      break;
    }
    case PrimitiveKind::Cylinder: {
      const int axis = prim.cyl_axis;
      const auto [u, v] = other_axes(axis);
      const Vec3 c = prim.box.center();
      const double r = 0.5 * prim.box.sizes()[u];
      constexpr int kAround = 24;
      for (int k = 0; k < kAround; ++k) {
        const double th = 2.0 * std::numbers::pi * (k + 0.5) / kAround;
        for (int j = 0; j < kGrid; ++j) {
          Vec3 p;
          p[axis] = prim.box.min()[axis] + (j + 0.5) / kGrid * prim.box.sizes()[axis];
          p[u] = c[u] + r * std::cos(th);
          p[v] = c[v] + r * std::sin(th);
          out.push_back(p);
        }
        for (int side = 0; side < 2; ++side) {
          for (double f : {0.35, 0.75}) {
            Vec3 p;
            p[axis] = face_coordinate(prim.box, axis, side);
            p[u] = c[u] + f * r * std::cos(th);
            p[v] = c[v] + f * r * std::sin(th);
            out.push_back(p);
          }
        }
      }
      break;
    }
    case PrimitiveKind::TruncatedPyramid: {
      const auto c = frustum_corners(prim);
      for (const auto& q : kFrustumQuads) grid_quad(c[q[0]], c[q[1]], c[q[2]], c[q[3]]);
      break;
    }
    case PrimitiveKind::Cuboid:
    case PrimitiveKind::Custom: {
      for (int n = 0; n < kAxes; ++n) {
        for (int side = 0; side < 2; ++side) {
          const FaceQuad q =
              make_face_quad(prim.box, n, face_coordinate(prim.box, n, side), other_axes(n)[0]);
          grid_quad(q.a, q.b, q.c, q.d);
        }
      }
      break;
    }
  }
  return out;
}

std::vector<Vec3> fit_samples(const Segment& segment) {
  std::vector<Vec3> out = segment.vertices;
  out.reserve(segment.vertices.size() + segment.triangles.size());
  for (const auto& t : segment.triangles) {
    out.push_back((segment.vertices[t[0]] + segment.vertices[t[1]] + segment.vertices[t[2]]) / 3.0);
  }
  return out;
}

Primitive fit_primitive(const Segment& segment, PrimitiveKind kind, Axis up_axis) {
  const std::vector<Vec3> samples = fit_samples(segment);
  const Box3 bb = segment.bounds();
  const double scale = std::max(bb.diagonal().norm(), std::numeric_limits<double>::min());
  Primitive prim;
  prim.part_id = segment.id;
  prim.kind = kind;

  switch (kind) {
    case PrimitiveKind::Plane: {
      double best = std::numeric_limits<double>::infinity();
      for (int a = 0; a < kAxes; ++a) {
        double mean = 0.0;
        for (const Vec3& p : samples) mean += p[a];
        mean /= static_cast<double>(samples.size());
        std::vector<double> d;
        d.reserve(samples.size());
        for (const Vec3& p : samples) d.push_back(p[a] - mean);
        const double res = rms(d);
        if (res < best) {
          best = res;
          prim.box = bb;
          set_axis_interval(prim.box, a, {mean, mean});
          prim.residue = res;
        }
      }
      const int a = prim.degenerate_axis();
      for (int other : other_axes(a)) {
        if (prim.box.sizes()[other] <= 1e-9 * scale) throw FitError("plane: collapses to a line");
      }
      return prim;
    }
    case PrimitiveKind::Cuboid:
    case PrimitiveKind::Custom: {
      prim.box = bb;
      std::vector<double> d;
      d.reserve(samples.size());
      for (const Vec3& p : samples) d.push_back(point_box_surface_distance(p, bb));
      prim.residue = rms(d);
      return prim;
    }
    case PrimitiveKind::Cylinder: {
      std::optional<Primitive> best;
      for (int a = 0; a < kAxes; ++a) {
        try {
          Primitive c = fit_cylinder_on_axis(segment, samples, a, scale);
          if (!best || c.residue < best->residue) best = c;
        } catch (const FitError&) {
        }
      }
      if (!best) throw FitError("cylinder: no axis admits a fit");
      // The residue stays that of the least-squares circle; the stored
      // intervals also cover the tessellation that bulges past it.
      best->box.extend(bb);
      return *best;
    }
    case PrimitiveKind::TruncatedPyramid: {
      const int vert = static_cast<int>(up_axis);
      const Interval h = axis_interval(bb, vert);
      if (h.length() <= 1e-9 * scale) throw FitError("truncated pyramid: zero height");
      std::vector<Vec3> bottom, top;
      for (const Vec3& p : segment.vertices) {
        if (p[vert] <= h.lo + kSlabFraction * h.length()) bottom.push_back(p);
        if (p[vert] >= h.hi - kSlabFraction * h.length()) top.push_back(p);
      }
      if (bottom.empty() || top.empty()) throw FitError("truncated pyramid: empty slab");
      Box3 rb = bounds_of(bottom);
      Box3 rt = bounds_of(top);
      for (int a : other_axes(vert)) {
        if (rb.sizes()[a] <= 1e-9 * scale || rt.sizes()[a] <= 1e-9 * scale) {
          throw FitError("truncated pyramid: degenerate cross-section");
        }
      }
      set_axis_interval(rb, vert, {h.lo, h.lo});
      set_axis_interval(rt, vert, {h.hi, h.hi});
      prim.vertical_axis = vert;
      prim.pyramid_bottom = rb;
      prim.pyramid_top = rt;
      prim.box = rb;
      prim.box.extend(rt);
      std::vector<double> d;
      d.reserve(samples.size());
      for (const Vec3& p : samples) d.push_back(frustum_distance(prim, p));
      prim.residue = rms(d);
      prim.box.extend(bb);
      return prim;
    }
  }
  throw FitError("unknown primitive kind");
}

double coverage_error(const Primitive& prim, const Segment& segment) {
  std::vector<double> d;
  for (const Vec3& p : surface_samples(prim)) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : segment.triangles) {
      best = std::min(best, point_triangle_distance(p, segment.vertices[t[0]], segment.vertices[t[1]],
                                                    segment.vertices[t[2]]));
    }
    d.push_back(best);
  }
  return rms(d);
}

std::vector<Primitive> fit_all(const SegmentedModel& model, const EngineConfig& config) {
  std::vector<Primitive> out;
  out.reserve(model.segments.size());
  const double tie_tol = 1e-6 * model.bbox_diagonal;
  for (const Segment& seg : model.segments) {
    const double seg_scale = seg.bounds().diagonal().norm();
    const double accept = config.custom_fit_tol * seg_scale;
    std::vector<Primitive> fits;
    for (PrimitiveKind kind : kFittableKinds) {
      try {
        Primitive p = fit_primitive(seg, kind, model.up_axis);
        if (p.residue <= accept && coverage_error(p, seg) <= accept) fits.push_back(std::move(p));
      } catch (const FitError&) {
      }
    }
    if (fits.empty()) {
      Primitive custom = fit_primitive(seg, PrimitiveKind::Custom, model.up_axis);
      out.push_back(std::move(custom));
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Primitive& p : fits) best = std::min(best, p.residue);
    // fits is in simplicity order, so the first within the tie band wins.
    for (const Primitive& p : fits) {
      if (p.residue <= best + tie_tol) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

}  // namespace h2s
