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

#include "h2s/tutorial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <tuple>

namespace h2s {

namespace {

constexpr std::pair<StepKind, std::string_view> kStepNames[] = {
    {StepKind::DrawVanishingSetup, "DrawVanishingSetup"},
    {StepKind::DrawGuide, "DrawGuide"},
    {StepKind::DrawPrimitiveEdge, "DrawPrimitiveEdge"},
    {StepKind::DrawEllipse, "DrawEllipse"},
    {StepKind::EraseGuides, "EraseGuides"},
    {StepKind::DrawContours, "DrawContours"},
    {StepKind::EyeballPrimitive, "EyeballPrimitive"},
};

std::string ratio_instruction(AnchorRatio r) {
  switch (r) {
    case AnchorRatio::Half: return "Divide the highlighted face in half";
    case AnchorRatio::Third: return "Divide the highlighted face into thirds";
    case AnchorRatio::Quarter: return "Divide the highlighted face into quarters";
    case AnchorRatio::ExtendHalf: return "Extend the highlighted face by half its length";
    case AnchorRatio::ExtendOne: return "Extend the highlighted face by its own length";
    case AnchorRatio::ExtendTwo: return "Extend the highlighted face by twice its length";
    case AnchorRatio::Align: return "Line up with the edge of the highlighted face";
  }
  return "";
}

std::string kind_noun(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::Plane: return "plane";
    case PrimitiveKind::Cylinder: return "cylinder";
    case PrimitiveKind::Cuboid: return "box";
    case PrimitiveKind::TruncatedPyramid: return "truncated pyramid";
    case PrimitiveKind::Custom: return "shape";
  }
  return "shape";
}

// Box shrunk by a hair so that touching faces do not count as hiding.
Box3 interior(const Box3& box) {
  const Vec3 eps = (box.sizes().array() * 1e-7 + 1e-12).matrix();
  return Box3(box.min() + eps, box.max() - eps);
}

bool hidden(const Vec3& eye, const Vec3& p, const std::vector<Box3>& occluders) {
  for (const Box3& b : occluders) {
    if (occluded_by(eye, p, b)) return true;
  }
  return false;
}

struct Construction {
  SideSpec anchor;
  int axis = 0;
  FaceQuad face;
  Interval child_v;
};

std::vector<Construction> constructions_of(const Candidate& c,
                                           const std::vector<Candidate>& pool) {
  std::vector<Construction> out;
  const Box3& cb = c.geometry.box;
  for (const AxisAnchor& a : c.anchors) {
    std::vector<SideSpec> specs;
    if (a.lo.guided()) specs.push_back(a.lo);
    if (a.hi.guided() && !a.rigid()) specs.push_back(a.hi);
    for (const SideSpec& s : specs) {
      Construction k;
      k.anchor = s;
      k.axis = a.axis;
      k.face = host_quad(pool.at(s.parent), s.host, a.axis);
      const int v = k.face.v_axis;
      const double len = (k.face.d - k.face.a)[v];
      if (len > 0.0) {
        k.child_v = {(cb.min()[v] - k.face.a[v]) / len, (cb.max()[v] - k.face.a[v]) / len};
      } else {
        k.child_v = {0.0, 1.0};
      }
      out.push_back(k);
    }
  }
  return out;
}

bool same_segment(const GuideLine& g, const GuideLine& h, double tol) {
  const bool fwd = (g.a - h.a).norm() <= tol && (g.b - h.b).norm() <= tol;
  const bool rev = (g.a - h.b).norm() <= tol && (g.b - h.a).norm() <= tol;
  return fwd || rev;
}

void push_unique(std::vector<int>& v, int x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

std::string_view to_string(StepKind k) {
  for (const auto& [kind, name] : kStepNames) {
    if (kind == k) return name;
  }
  return "DrawGuide";
}

StepKind step_kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kStepNames) {
    if (name == s) return kind;
  }
  throw FormatError("unknown step kind: " + std::string(s), 0, 0);
}

std::vector<int> break_ties(const std::vector<int>& parts,
                            const std::vector<std::pair<int, int>>& edges,
                            const std::map<int, Vec3>& centers, const Vec3& eye) {
  const std::set<int> members(parts.begin(), parts.end());
  std::map<int, int> indegree;
  std::map<int, std::vector<int>> out;
  for (int p : parts) indegree[p] = 0;
  for (const auto& [a, b] : edges) {
    if (!members.count(a) || !members.count(b)) continue;
    out[a].push_back(b);
    ++indegree[b];
  }
  using Key = std::pair<double, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  auto key = [&](int p) { return Key{(centers.at(p) - eye).norm(), p}; };
  for (const auto& [p, d] : indegree) {
    if (d == 0) ready.push(key(p));
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int p = ready.top().second;
    ready.pop();
    order.push_back(p);
    for (int q : out[p]) {
      if (--indegree[q] == 0) ready.push(key(q));
    }
  }
  if (order.size() != members.size()) throw ValidationError("drawing order has a cycle");
  return order;
}

bool occluded_by(const Vec3& eye, const Vec3& p, const Box3& box) {
  const Box3 inner = interior(box);
  if (inner.isEmpty()) return false;
  const auto hit = segment_box_overlap(eye, p, inner);
  if (!hit) return false;
  return hit->second - hit->first > 1e-12 && hit->first < 1.0 - 1e-12;
}

std::vector<int> cull_occluded(const std::map<int, Box3>& boxes,
                               const std::vector<std::pair<int, int>>& edges, const Vec3& eye) {
  std::set<int> keep;
  for (const auto& [part, box] : boxes) {
    std::vector<Box3> others;
    for (const auto& [q, b] : boxes) {
      if (q != part) others.push_back(b);
    }
    for (const Vec3& p : box_sample_points(box)) {
      if (!hidden(eye, p, others)) {
        keep.insert(part);
        break;
      }
    }
  }
  std::map<int, std::vector<int>> parents;
  for (const auto& [a, b] : edges) parents[b].push_back(a);
  std::vector<int> stack(keep.begin(), keep.end());
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int a : parents[x]) {
      if (keep.insert(a).second) stack.push_back(a);
    }
  }
  std::vector<int> skipped;
  for (const auto& [part, box] : boxes) {
    if (!keep.count(part)) skipped.push_back(part);
  }
  return skipped;
}

double projected_area(const Camera& camera, const FaceQuad& face) {
  std::array<Vec2, 4> q;
  const Vec3 corners[4] = {face.a, face.b, face.c, face.d};
  for (int k = 0; k < 4; ++k) {
    const auto p = try_project(camera, corners[k]);
    if (!p) return 0.0;
    q[k] = *p;
  }
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Vec2& a = q[k];
    const Vec2& b = q[(k + 1) % 4];
    s += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(s);
}

bool should_eyeball(double area_px, int k, const Camera& camera, const EngineConfig& config) {
  if (k <= 0) return false;
  return area_px / k < config.eyeball_fraction * camera.image_area();
}

std::vector<GuideLine> ability_filter(const std::vector<GuideLine>& guides, Ability ability) {
  std::vector<GuideLine> out;
  for (const GuideLine& g : guides) {
    if (static_cast<int>(ability) <= static_cast<int>(g.visible_to)) out.push_back(g);
  }
  return out;
}

std::vector<Segment3> primitive_edges(const Primitive& p) {
  std::vector<Segment3> out;
  if (p.kind == PrimitiveKind::Plane) {
    const int n = p.degenerate_axis();
    const auto [u, v] = other_axes(n);
    const FaceQuad f = make_face_quad(p.box, n, p.box.min()[n], u);
    (void)v;
    out = {{f.a, f.b}, {f.b, f.c}, {f.c, f.d}, {f.d, f.a}};
    return out;
  }
  if (p.kind == PrimitiveKind::TruncatedPyramid && p.pyramid_bottom && p.pyramid_top) {
    const int n = p.vertical_axis;
    const auto [u, v] = other_axes(n);
    (void)v;
    const FaceQuad lo = make_face_quad(*p.pyramid_bottom, n, p.pyramid_bottom->min()[n], u);
    const FaceQuad hi = make_face_quad(*p.pyramid_top, n, p.pyramid_top->min()[n], u);
    for (const FaceQuad* f : {&lo, &hi}) {
      out.push_back({f->a, f->b});
      out.push_back({f->b, f->c});
      out.push_back({f->c, f->d});
      out.push_back({f->d, f->a});
    }
    out.push_back({lo.a, hi.a});
    out.push_back({lo.b, hi.b});
    out.push_back({lo.c, hi.c});
    out.push_back({lo.d, hi.d});
    return out;
  }
  const auto corners = box_corners(p.box);
  for (const auto& e : box_edge_indices()) out.push_back({corners[e[0]], corners[e[1]]});
  return out;
}

Polyline cap_ellipse(const Box3& box, int axis, int side, int samples) {
  const auto [u, v] = other_axes(axis);
  Vec3 c = box.center();
  c[axis] = face_coordinate(box, axis, side);
  const double ru = 0.5 * box.sizes()[u];
  const double rv = 0.5 * box.sizes()[v];
  Polyline out;
  for (int k = 0; k <= samples; ++k) {
    const double th = 2.0 * std::numbers::pi * (k % samples) / samples;
    Vec3 p = c;
    p[u] += ru * std::cos(th);
    p[v] += rv * std::sin(th);
    out.push_back(p);
  }
  return out;
}

std::vector<Polyline> clip_polyline(const Polyline& line, const std::vector<Box3>& occluders,
                                    const Vec3& eye) {
  std::vector<Polyline> out;
  if (line.size() < 2) {
    if (line.size() == 1 && !hidden(eye, line[0], occluders)) out.push_back(line);
    return out;
  }
  Polyline current;
  auto flush = [&] {
    if (current.size() >= 2) out.push_back(current);
    current.clear();
  };
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const Vec3& a = line[i];
    const Vec3& b = line[i + 1];
    auto at = [&](double t) -> Vec3 { return a + t * (b - a); };
    // Visibility against a box can only change where the point crosses a
    // face plane or where its view ray sweeps over a box edge.
    std::vector<double> events{0.0, 1.0};
    auto cross_plane = [&](const Vec3& n, double d) {
      const double fa = n.dot(a) - d;
      const double fb = n.dot(b) - d;
      if ((fa < 0) != (fb < 0) && fa != fb) events.push_back(fa / (fa - fb));
    };
    for (const Box3& box : occluders) {
      const Box3 in = interior(box);
      if (in.isEmpty()) continue;
      for (int k = 0; k < 3; ++k) {
        const Vec3 n = Vec3::Unit(k);
        cross_plane(n, in.min()[k]);
        cross_plane(n, in.max()[k]);
        const int u = (k + 1) % 3;
        const int v = (k + 2) % 3;
        for (int su = 0; su < 2; ++su) {
          for (int sv = 0; sv < 2; ++sv) {
            Vec3 p0 = in.min();
            p0[u] = su ? in.max()[u] : in.min()[u];
            p0[v] = sv ? in.max()[v] : in.min()[v];
            const Vec3 nn = (p0 - eye).cross(n);
            if (nn.squaredNorm() < 1e-300) continue;
            cross_plane(nn, nn.dot(eye));
          }
        }
      }
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    bool open = !current.empty();
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
      const double t0 = events[k];
      if (hidden(eye, at(0.5 * (t0 + events[k + 1])), occluders)) {
        if (open && t0 > 0.0) current.push_back(at(t0));
        flush();
        open = false;
      } else if (!open) {
        current.push_back(at(t0));
        open = true;
      }
    }
    if (open) current.push_back(b);
  }
  flush();
  return out;
}

std::vector<Polyline> silhouette_edges(const Segment& segment, const Vec3& eye) {
  struct Face {
    Vec3 n;
    bool front;
    bool ok;
  };
  std::vector<Face> faces;
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (std::size_t t = 0; t < segment.triangles.size(); ++t) {
    const auto& tri = segment.triangles[t];
    const Vec3& p0 = segment.vertices[tri[0]];
    const Vec3 n = (segment.vertices[tri[1]] - p0).cross(segment.vertices[tri[2]] - p0);
    const Vec3 centroid = (p0 + segment.vertices[tri[1]] + segment.vertices[tri[2]]) / 3.0;
    const bool ok = n.norm() > 1e-14;
    faces.push_back({ok ? n.normalized() : n, n.dot(eye - centroid) > 0.0, ok});
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      edge_faces[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(t));
    }
  }
  const double sharp = std::cos(30.0 * std::numbers::pi / 180.0);
  std::vector<Polyline> out;
  for (const auto& [e, fs] : edge_faces) {
    bool keep = false;
    if (fs.size() != 2) {
      keep = true;
    } else {
      const Face& f = faces[fs[0]];
      const Face& g = faces[fs[1]];
      if (f.ok && g.ok) keep = f.front != g.front || f.n.dot(g.n) < sharp;
    }
    if (keep) out.push_back({segment.vertices[e.first], segment.vertices[e.second]});
  }
  return out;
}

void compute_lifetimes(std::vector<TutorialStep>& steps, std::vector<GuideLine>& guides,
                       double merge_tol) {
  // Canonical representative of every input guide.
  std::vector<int> rep(guides.size());
  for (std::size_t i = 0; i < guides.size(); ++i) {
    rep[i] = static_cast<int>(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (rep[j] == static_cast<int>(j) && same_segment(guides[i], guides[j], merge_tol)) {
        rep[i] = static_cast<int>(j);
        break;
      }
    }
  }
  // Renumber by first use.
  std::map<int, int> renum;
  std::vector<GuideLine> merged;
  for (TutorialStep& s : steps) {
    std::vector<int> uses;
    for (int g : s.use_guides) {
      const int r = rep.at(g);
      auto it = renum.find(r);
      if (it == renum.end()) {
        it = renum.emplace(r, static_cast<int>(merged.size())).first;
        GuideLine copy = guides[r];
        copy.id = it->second;
        merged.push_back(copy);
      }
      push_unique(uses, it->second);
    }
    s.use_guides = uses;
    s.draw_guides.clear();
    s.erase_guides.clear();
  }
  std::vector<int> first(merged.size(), -1);
  std::vector<int> last(merged.size(), -1);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    for (int g : steps[k].use_guides) {
      if (first[g] < 0) first[g] = static_cast<int>(k);
      last[g] = static_cast<int>(k);
    }
  }
  std::vector<TutorialStep> out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    TutorialStep s = steps[k];
    s.index = static_cast<int>(out.size());
    for (int g : s.use_guides) {
      if (first[g] == static_cast<int>(k)) {
        s.draw_guides.push_back(g);
        merged[g].first_step = s.index;
      }
      merged[g].last_step = s.index;
    }
    std::vector<int> ending;
    for (int g : s.use_guides) {
      if (last[g] == static_cast<int>(k)) ending.push_back(g);
    }
    const int part = s.part_id;
    out.push_back(std::move(s));
    if (!ending.empty()) {
      std::sort(ending.begin(), ending.end());
      TutorialStep e;
      e.index = static_cast<int>(out.size());
      e.kind = StepKind::EraseGuides;
      e.part_id = part;
      e.text = "Erase the guides that are no longer needed";
      e.erase_guides = ending;
      out.push_back(std::move(e));
    }
  }
  steps = std::move(out);
  guides = std::move(merged);
}

Tutorial compile_tutorial(const Plan& plan, const Camera& camera, Ability ability) {
  camera.validate();
  const EngineConfig& config = plan.config;
  const auto& pool = plan.candidates.candidates;

  Tutorial t;
  t.camera = camera;
  t.ability = ability;
  t.up_axis = plan.model.up_axis;
  t.bbox_diagonal = plan.model.bbox_diagonal;
  t.config_hash = config_hash(config);
  t.vanishing = vanishing_points(camera);
  t.horizon = horizon_line(camera, plan.model.up_axis);

  std::map<int, Box3> boxes;
  std::map<int, Vec3> centers;
  for (const Primitive& p : plan.primitives) {
    boxes[p.part_id] = plan.drawn_box(p.part_id);
    centers[p.part_id] = boxes[p.part_id].center();
  }
  const auto edges = plan.dependency_edges();
  t.skipped_parts = cull_occluded(boxes, edges, camera.eye);
  std::vector<int> visible;
  for (const auto& [part, box] : boxes) {
    if (!std::binary_search(t.skipped_parts.begin(), t.skipped_parts.end(), part)) {
      visible.push_back(part);
    }
  }
  t.part_order = break_ties(visible, edges, centers, camera.eye);

  auto name_of = [&](int part) {
    const std::string& n = plan.model.segment(part).name;
    return n.empty() ? "part " + std::to_string(part) : n;
  };

  std::vector<TutorialStep> steps;
  std::vector<GuideLine> raw;
  auto add_guides = [&](std::vector<GuideLine> gs, const HostFace& host) {
    std::vector<int> ids;
    for (GuideLine& g : gs) {
      g.host.candidate = host.candidate;
      g.host.side = host.side;
      g.id = static_cast<int>(raw.size());
      ids.push_back(g.id);
      raw.push_back(g);
    }
    return ids;
  };

  {
    TutorialStep s;
    s.kind = StepKind::DrawVanishingSetup;
    s.text = "Mark the vanishing points and draw the horizon";
    steps.push_back(s);
  }

  for (int part : t.part_order) {
    const Primitive& orig = plan.primitives[part];
    const std::string name = name_of(part);
    if (orig.custom()) {
      TutorialStep s;
      s.kind = StepKind::EyeballPrimitive;
      s.part_id = part;
      s.text = "Sketch the outline of the " + name + " by eye";
      const auto corners = box_corners(boxes[part]);
      for (const auto& e : box_edge_indices()) s.edges.push_back({corners[e[0]], corners[e[1]]});
      steps.push_back(s);
      t.scaffold.push_back({part, -1, orig.kind, boxes[part]});
      continue;
    }
    const int cid = plan.selection.chosen.at(part);
    const Candidate& c = pool.at(cid);
    t.scaffold.push_back({part, cid, c.geometry.kind, c.geometry.box});

    const std::vector<Construction> cons = constructions_of(c, pool);
    int k = 0;
    double area = std::numeric_limits<double>::infinity();
    for (const Construction& x : cons) {
      k += guide_count(x.anchor.ratio);
      area = std::min(area, projected_area(camera, x.face));
    }
    bool eyeball = should_eyeball(area, k, camera, config);

    std::vector<std::vector<GuideLine>> lines;
    if (!eyeball) {
      try {
        for (const Construction& x : cons) {
          lines.push_back(instantiate_recipe(x.anchor.ratio, x.face, x.anchor.mirrored, x.child_v));
        }
      } catch (const ConstructionError& e) {
        eyeball = true;
        t.warnings.push_back(name + ": " + e.what());
      }
    }

    std::vector<int> part_guides;
    std::vector<std::string> silent;
    if (eyeball) {
      TutorialStep s;
      s.kind = StepKind::EyeballPrimitive;
      s.part_id = part;
      s.inset_candidate = cid;
      s.text = "Place the " + name + " by eye; its guides would be too small to draw";
      steps.push_back(s);
    } else if (ability == Ability::Novice) {
      for (std::size_t i = 0; i < cons.size(); ++i) {
        const auto vis = ability_filter(lines[i], ability);
        if (vis.empty()) {
          silent.push_back(ratio_instruction(cons[i].anchor.ratio));
          continue;
        }
        TutorialStep s;
        s.kind = StepKind::DrawGuide;
        s.part_id = part;
        s.inset_candidate = cid;
        s.text = ratio_instruction(cons[i].anchor.ratio) + " for the " + name;
        s.use_guides = add_guides(vis, cons[i].anchor.host);
        part_guides.insert(part_guides.end(), s.use_guides.begin(), s.use_guides.end());
        steps.push_back(s);
      }
    } else {
      TutorialStep s;
      s.kind = StepKind::DrawGuide;
      s.part_id = part;
      s.inset_candidate = cid;
      std::vector<std::string> said;
      for (std::size_t i = 0; i < cons.size(); ++i) {
        const auto vis = ability_filter(lines[i], ability);
        const std::string text = ratio_instruction(cons[i].anchor.ratio);
        if (vis.empty()) {
          silent.push_back(text);
          continue;
        }
        if (std::find(said.begin(), said.end(), text) == said.end()) said.push_back(text);
        const auto ids = add_guides(vis, cons[i].anchor.host);
        s.use_guides.insert(s.use_guides.end(), ids.begin(), ids.end());
      }
      if (!s.use_guides.empty()) {
        for (std::size_t i = 0; i < said.size(); ++i) s.text += (i ? "; " : "") + said[i];
        s.text += " for the " + name;
        part_guides = s.use_guides;
        steps.push_back(s);
      }
    }

    {
      TutorialStep s;
      s.kind = StepKind::DrawPrimitiveEdge;
      s.part_id = part;
      s.inset_candidate = cid;
      s.edges = primitive_edges(c.geometry);
      s.use_guides = part_guides;
      if (cons.empty()) {
        s.text = "Draw the " + kind_noun(c.geometry.kind) + " of the " + name + " freehand";
      } else {
        std::sort(silent.begin(), silent.end());
        silent.erase(std::unique(silent.begin(), silent.end()), silent.end());
        std::string prefix;
        for (std::size_t i = 0; i < silent.size(); ++i) prefix += (i ? "; " : "") + silent[i];
        if (!prefix.empty()) prefix += ", then d";
        else prefix = "D";
        s.text = prefix + "raw the " + kind_noun(c.geometry.kind) + " of the " + name;
      }
      steps.push_back(s);
    }

    if (c.geometry.kind == PrimitiveKind::Cylinder) {
      const int ax = c.geometry.cyl_axis;
      const auto [u, v] = other_axes(ax);
      (void)v;
      const Box3& b = c.geometry.box;
      for (int side = 0; side < 2; ++side) {
        Vec3 center = b.center();
        center[ax] = face_coordinate(b, ax, side);
        const double outward = side == 0 ? -1.0 : 1.0;
        if ((camera.eye - center)[ax] * outward <= 0.0) continue;
        TutorialStep s;
        s.kind = StepKind::DrawEllipse;
        s.part_id = part;
        s.inset_candidate = cid;
        s.text = "Draw the ellipse of the " + name + " through the marked midpoints";
        const FaceQuad face = make_face_quad(b, ax, center[ax], u);
        try {
          s.use_guides = add_guides(ability_filter(ellipse_guides(face), ability),
                                    HostFace{cid, ax, side});
        } catch (const ConstructionError& e) {
          t.warnings.push_back(name + ": " + e.what());
        }
        s.polylines.push_back(cap_ellipse(b, ax, side));
        steps.push_back(s);
      }
    }
  }

  // Contours, clipped by the parts drawn before.
  std::vector<Box3> drawn;
  for (int part : t.part_order) {
    const Primitive& orig = plan.primitives[part];
    const Box3& to = boxes[part];
    const Segment& seg = plan.model.segment(part);
    auto move = [&](const Vec3& p) -> Vec3 {
      if (orig.custom()) return p + (to.min() - orig.box.min());
      return map_between_boxes(p, orig.box, to);
    };
    std::vector<Polyline> source;
    if (seg.contours && !seg.contours->empty()) {
      for (const Polyline& l : *seg.contours) {
        Polyline m;
        for (const Vec3& p : l) m.push_back(move(p));
        source.push_back(m);
      }
    } else {
      Segment moved = seg;
      for (Vec3& p : moved.vertices) p = move(p);
      source = silhouette_edges(moved, camera.eye);
    }
    TutorialStep s;
    s.kind = StepKind::DrawContours;
    s.part_id = part;
    s.inset_candidate = orig.custom() ? -1 : plan.selection.chosen.at(part);
    s.text = "Draw the contours of the " + name_of(part);
    if (source.empty()) t.warnings.push_back(name_of(part) + ": no contours available");
    for (const Polyline& l : source) {
      for (Polyline& piece : clip_polyline(l, drawn, camera.eye)) s.polylines.push_back(piece);
    }
    steps.push_back(s);
    drawn.push_back(to);
  }

  compute_lifetimes(steps, raw, config.guide_merge_tol * plan.model.bbox_diagonal);
  t.steps = std::move(steps);
  t.guides = std::move(raw);
  return t;
}

}  // namespace h2s
