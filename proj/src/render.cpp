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

#include "h2s/render.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "h2s/model.hpp"

namespace h2s {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Canvas {
  const Camera& camera;
  std::vector<std::string>& warnings;
  std::string out;

  std::optional<Vec2> at(const Vec3& p, std::string_view what) {
    auto q = try_project(camera, p);
    if (!q) warnings.push_back(std::string(what) + ": point behind the eye skipped");
    return q;
  }

  void line(const Vec2& a, const Vec2& b, const char* color, double width,
            const std::string& attrs = "") {
    out += "<line x1=\"" + num(a.x()) + "\" y1=\"" + num(a.y()) + "\" x2=\"" + num(b.x()) +
           "\" y2=\"" + num(b.y()) + "\" stroke=\"" + color + "\" stroke-width=\"" +
           num(width) + "\"" + attrs + "/>\n";
  }

  void segment(const Vec3& a, const Vec3& b, const char* color, double width,
               std::string_view what, const std::string& attrs = "") {
    const auto p = at(a, what);
    const auto q = at(b, what);
    if (!p || !q) return;
    if ((*p - *q).norm() < 1e-9) {
      out += "<circle cx=\"" + num(p->x()) + "\" cy=\"" + num(p->y()) + "\" r=\"3.000\" fill=\"" +
             color + "\"" + attrs + "/>\n";
      return;
    }
    line(*p, *q, color, width, attrs);
  }

  void polyline(const Polyline& l, const char* color, double width, std::string_view what) {
    std::string pts;
    for (const Vec3& p : l) {
      const auto q = at(p, what);
      if (!q) return;
      if (!pts.empty()) pts += ' ';
      pts += num(q->x()) + "," + num(q->y());
    }
    if (pts.empty()) return;
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"" + num(width) + "\"/>\n";
  }
};

// Clips the image line a x + b y + c = 0 to the canvas rectangle.
std::optional<std::pair<Vec2, Vec2>> clip_line(const Eigen::Vector3d& l, double w, double h) {
  std::vector<Vec2> hits;
  auto add = [&](const Vec2& p) {
    if (p.x() < -1e-9 || p.x() > w + 1e-9 || p.y() < -1e-9 || p.y() > h + 1e-9) return;
    for (const Vec2& q : hits) {
      if ((q - p).norm() < 1e-9) return;
    }
    hits.push_back(p);
  };
  if (std::abs(l.y()) > 1e-15) {
    add({0.0, -l.z() / l.y()});
    add({w, -(l.x() * w + l.z()) / l.y()});
  }
  if (std::abs(l.x()) > 1e-15) {
    add({-l.z() / l.x(), 0.0});
    add({-(l.y() * h + l.z()) / l.x(), h});
  }
  if (hits.size() < 2) return std::nullopt;
  return std::make_pair(hits[0], hits[1]);
}

bool draws_strokes(StepKind k) {
  return k == StepKind::DrawPrimitiveEdge || k == StepKind::EyeballPrimitive ||
         k == StepKind::DrawEllipse || k == StepKind::DrawContours;
}

std::string sheet_body(const Tutorial& t, int s, std::vector<std::string>& warnings) {
  const Camera& cam = t.camera;
  const double w = cam.width;
  const double h = cam.height;
  const TutorialStep& step = t.steps.at(s);
  Canvas c{cam, warnings, {}};

  c.out += "<rect x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"#FFFFFF\"/>\n";

  c.out += "<g id=\"vanishing\">\n";
  const double m = 0.03 * std::min(w, h);
  const Vec2 corners[4] = {{0, 0}, {w, 0}, {w, h}, {0, h}};
  for (int k = 0; k < 4; ++k) {
    const Vec2& p = corners[k];
    const double sx = p.x() == 0 ? 1.0 : -1.0;
    const double sy = p.y() == 0 ? 1.0 : -1.0;
    c.line(p, p + Vec2(sx * m, 0), kVanishingColor, 3.0);
    c.line(p, p + Vec2(0, sy * m), kVanishingColor, 3.0);
  }
  for (const VanishingPoint& vp : t.vanishing) {
    if (!vp.point || !vp.on_canvas) continue;
    c.out += "<circle cx=\"" + num(vp.point->x()) + "\" cy=\"" + num(vp.point->y()) +
             "\" r=\"4.000\" fill=\"" + kVanishingColor + "\" data-axis=\"" +
             axis_name(vp.axis) + "\"/>\n";
  }
  if (const auto hl = clip_line(t.horizon, w, h)) {
    c.line(hl->first, hl->second, kVanishingColor, 1.0, " stroke-dasharray=\"6 4\"");
  }
  c.out += "</g>\n";

  c.out += "<g id=\"prior_art\">\n";
  for (int k = 0; k < s; ++k) {
    const TutorialStep& p = t.steps[k];
    if (!draws_strokes(p.kind)) continue;
    for (const Segment3& e : p.edges) c.segment(e[0], e[1], kPriorArtColor, 1.5, "prior edge");
    for (const Polyline& l : p.polylines) c.polyline(l, kPriorArtColor, 1.5, "prior stroke");
  }
  c.out += "</g>\n";

  for (const GuideState want : {GuideState::Retained, GuideState::Fresh}) {
    const bool fresh = want == GuideState::Fresh;
    c.out += fresh ? "<g id=\"fresh_guides\">\n" : "<g id=\"retained_guides\">\n";
    for (const GuideLine& g : t.guides) {
      if (guide_state(t, g.id, s) != want) continue;
      c.segment(g.a, g.b, fresh ? kFreshColor : kRetainedColor, 1.2, "guide",
                " data-guide=\"" + std::to_string(g.id) + "\"");
    }
    c.out += "</g>\n";
  }

  c.out += "<g id=\"new_edges\">\n";
  for (const Segment3& e : step.edges) c.segment(e[0], e[1], kEdgeColor, 2.0, "edge");
  for (const Polyline& l : step.polylines) c.polyline(l, kEdgeColor, 2.0, "stroke");
  c.out += "</g>\n";

  c.out += "<g id=\"inset\">\n";
  if (step.part_id >= 0 && !t.scaffold.empty()) {
    const double iw = 0.25 * w;
    const double ih = 0.25 * h;
    const double ox = w - iw - 8.0;
    const double oy = h - ih - 8.0;
    c.out += "<rect x=\"" + num(ox) + "\" y=\"" + num(oy) + "\" width=\"" + num(iw) +
             "\" height=\"" + num(ih) + "\" fill=\"#FFFFFF\" stroke=\"" + kPriorArtColor +
             "\"/>\n";
    for (const ScaffoldItem& item : t.scaffold) {
      const bool current = item.part_id == step.part_id;
      const auto cs = box_corners(item.box);
      for (const auto& e : box_edge_indices()) {
        const auto p = try_project(cam, cs[e[0]]);
        const auto q = try_project(cam, cs[e[1]]);
        if (!p || !q) continue;
        const Vec2 pp(ox + 0.25 * p->x(), oy + 0.25 * p->y());
        const Vec2 qq(ox + 0.25 * q->x(), oy + 0.25 * q->y());
        c.line(pp, qq, current ? kFreshColor : kPriorArtColor, current ? 1.5 : 0.8);
      }
    }
  }
  c.out += "</g>\n";

  c.out += "<g id=\"labels\">\n";
  c.out += "<text x=\"16.000\" y=\"28.000\" font-family=\"sans-serif\" font-size=\"18\" "
           "data-kind=\"" +
           std::string(to_string(step.kind)) + "\">" + std::to_string(step.index) + ". " +
           escape(step.text) + "</text>\n";
  if (step.kind == StepKind::EraseGuides) {
    std::string ids;
    for (int g : step.erase_guides) ids += (ids.empty() ? "" : " ") + std::to_string(g);
    c.out += "<text x=\"16.000\" y=\"50.000\" font-family=\"sans-serif\" font-size=\"12\" "
             "data-erased=\"" + ids + "\">" + std::to_string(step.erase_guides.size()) +
             " guides erased</text>\n";
  }
  double y = 72.0;
  for (const std::string& wmsg : warnings) {
    c.out += "<text x=\"16.000\" y=\"" + num(y) +
             "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#C53030\" "
             "class=\"warning\">" + escape(wmsg) + "</text>\n";
    y += 14.0;
  }
  c.out += "</g>\n";
  return c.out;
}

json vec_json(const Vec3& v) { return json::array({round9(v.x()), round9(v.y()), round9(v.z())}); }

Vec3 vec_of(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

json polyline_json(const Polyline& l) {
  json a = json::array();
  for (const Vec3& p : l) a.push_back(vec_json(p));
  return a;
}

Polyline polyline_of(const json& j) {
  Polyline l;
  for (const json& p : j) l.push_back(vec_of(p));
  return l;
}

}  // namespace

GuideState guide_state(const Tutorial& t, int id, int step) {
  const GuideLine& g = t.guides.at(id);
  if (g.first_step == step) return GuideState::Fresh;
  if (g.first_step < step && step <= g.last_step) return GuideState::Retained;
  return GuideState::Absent;
}

StepSheet render_step(const Tutorial& t, int step) {
  if (step < 0 || step >= static_cast<int>(t.steps.size())) {
    throw ValidationError("step index out of range");
  }
  StepSheet sheet;
  sheet.step_index = step;
  const std::string body = sheet_body(t, step, sheet.warnings);
  const std::string w = std::to_string(t.camera.width);
  const std::string h = std::to_string(t.camera.height);
  sheet.svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
              "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h +
              "\" viewBox=\"0 0 " + w + " " + h + "\" data-step=\"" + std::to_string(step) +
              "\">\n" + body + "</svg>\n";
  return sheet;
}

std::string render_contact_sheet(const Tutorial& t) {
  constexpr int kCols = 4;
  constexpr double kCellW = 320.0;
  const double cell_h = kCellW * t.camera.height / t.camera.width;
  const int n = static_cast<int>(t.steps.size());
  const int rows = (n + kCols - 1) / kCols;
  const double total_w = kCols * kCellW;
  const double total_h = std::max(1, rows) * cell_h;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(total_w) +
                    "\" height=\"" + num(total_h) + "\" viewBox=\"0 0 " + num(total_w) + " " +
                    num(total_h) + "\">\n";
  const std::string vb = "0 0 " + std::to_string(t.camera.width) + " " +
                         std::to_string(t.camera.height);
  for (int s = 0; s < n; ++s) {
    const double x = (s % kCols) * kCellW;
    const double y = (s / kCols) * cell_h;
    std::vector<std::string> warnings;
    out += "<svg x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(kCellW) +
           "\" height=\"" + num(cell_h) + "\" viewBox=\"" + vb + "\" data-step=\"" +
           std::to_string(s) + "\">\n" + sheet_body(t, s, warnings) + "</svg>\n";
    out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(kCellW) +
           "\" height=\"" + num(cell_h) + "\" fill=\"none\" stroke=\"#888888\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::vector<std::filesystem::path> write_sheets(const Tutorial& t,
                                                const std::filesystem::path& outdir) {
  std::filesystem::create_directories(outdir);
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write '" + p.string() + "'");
    f << text;
    written.push_back(p);
  };
  for (int s = 0; s < static_cast<int>(t.steps.size()); ++s) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%03d.svg", s);
    put(outdir / name, render_step(t, s).svg);
  }
  put(outdir / "contact_sheet.svg", render_contact_sheet(t));
  return written;
}

double round9(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

json camera_to_json(const Camera& c) {
  return {{"eye", vec_json(c.eye)},
          {"target", vec_json(c.target)},
          {"up", vec_json(c.up)},
          {"fov", round9(c.vertical_fov)},
          {"size", json::array({c.width, c.height})}};
}

Camera camera_from_json(const json& j) {
  Camera c;
  c.eye = vec_of(j.at("eye"));
  c.target = vec_of(j.at("target"));
  c.up = vec_of(j.at("up"));
  c.vertical_fov = j.at("fov").get<double>();
  c.width = j.at("size").at(0).get<int>();
  c.height = j.at("size").at(1).get<int>();
  return c;
}

json tutorial_to_json(const Tutorial& t) {
  json j;
  j["version"] = 1;
  j["camera"] = camera_to_json(t.camera);
  j["ability"] = std::string(to_string(t.ability));
  j["up_axis"] = axis_name(static_cast<int>(t.up_axis));
  j["bbox_diagonal"] = round9(t.bbox_diagonal);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, t.config_hash);
  j["config_hash"] = hash;
  json vps = json::array();
  for (const VanishingPoint& vp : t.vanishing) {
    json v{{"axis", axis_name(vp.axis)}, {"on_canvas", vp.on_canvas}};
    v["point"] = vp.point ? json::array({round9(vp.point->x()), round9(vp.point->y())}) : json();
    vps.push_back(v);
  }
  j["vanishing_points"] = vps;
  j["horizon"] = vec_json(t.horizon);
  json guides = json::array();
  for (const GuideLine& g : t.guides) {
    guides.push_back({{"id", g.id},
                      {"kind", std::string(to_string(g.kind))},
                      {"a", vec_json(g.a)},
                      {"b", vec_json(g.b)},
                      {"host",
                       {{"candidate", g.host.candidate},
                        {"normal_axis", axis_name(g.host.normal_axis)},
                        {"side", g.host.side}}},
                      {"recipe_step", g.recipe_step},
                      {"visible_to", std::string(to_string(g.visible_to))},
                      {"first_step", g.first_step},
                      {"last_step", g.last_step}});
  }
  j["guides"] = guides;
  json steps = json::array();
  for (const TutorialStep& s : t.steps) {
    json e = json::array();
    for (const Segment3& seg : s.edges) e.push_back(json::array({vec_json(seg[0]), vec_json(seg[1])}));
    json p = json::array();
    for (const Polyline& l : s.polylines) p.push_back(polyline_json(l));
    steps.push_back({{"index", s.index},
                     {"kind", std::string(to_string(s.kind))},
                     {"part_id", s.part_id},
                     {"text", s.text},
                     {"inset_candidate", s.inset_candidate},
                     {"draw_guides", s.draw_guides},
                     {"use_guides", s.use_guides},
                     {"erase_guides", s.erase_guides},
                     {"edges", e},
                     {"polylines", p}});
  }
  j["steps"] = steps;
  j["part_order"] = t.part_order;
  j["skipped_parts"] = t.skipped_parts;
  json scaffold = json::array();
  for (const ScaffoldItem& s : t.scaffold) {
    scaffold.push_back({{"part_id", s.part_id},
                        {"candidate", s.candidate},
                        {"kind", std::string(to_string(s.kind))},
                        {"min", vec_json(s.box.min())},
                        {"max", vec_json(s.box.max())}});
  }
  j["scaffold"] = scaffold;
  j["warnings"] = t.warnings;
  return j;
}

namespace {

int axis_of(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "X") return 0;
  if (s == "Y") return 1;
  if (s == "Z") return 2;
  throw FormatError("unknown axis '" + s + "'", 0, 0);
}

}  // namespace

Tutorial tutorial_from_json(const json& j) {
  try {
    if (j.at("version").get<int>() != 1) throw FormatError("unsupported tutorial version", 0, 0);
    Tutorial t;
    t.camera = camera_from_json(j.at("camera"));
    t.ability = ability_from_string(j.at("ability").get<std::string>());
    t.up_axis = static_cast<Axis>(axis_of(j.at("up_axis")));
    t.bbox_diagonal = j.at("bbox_diagonal").get<double>();
    t.config_hash = std::strtoull(j.at("config_hash").get<std::string>().c_str(), nullptr, 16);
    const json& vps = j.at("vanishing_points");
    for (int a = 0; a < 3; ++a) {
      const json& v = vps.at(a);
      t.vanishing[a].axis = axis_of(v.at("axis"));
      t.vanishing[a].on_canvas = v.at("on_canvas").get<bool>();
      if (!v.at("point").is_null()) {
        t.vanishing[a].point = Vec2(v["point"].at(0).get<double>(), v["point"].at(1).get<double>());
      }
    }
    t.horizon = vec_of(j.at("horizon"));
    for (const json& g : j.at("guides")) {
      GuideLine l;
      l.id = g.at("id").get<int>();
      l.kind = guide_kind_from_string(g.at("kind").get<std::string>());
      l.a = vec_of(g.at("a"));
      l.b = vec_of(g.at("b"));
      l.host.candidate = g.at("host").at("candidate").get<int>();
      l.host.normal_axis = axis_of(g.at("host").at("normal_axis"));
      l.host.side = g.at("host").at("side").get<int>();
      l.recipe_step = g.at("recipe_step").get<int>();
      l.visible_to = ability_from_string(g.at("visible_to").get<std::string>());
      l.first_step = g.at("first_step").get<int>();
      l.last_step = g.at("last_step").get<int>();
      if (l.id != static_cast<int>(t.guides.size())) throw FormatError("guide ids must be dense", 0, 0);
      t.guides.push_back(l);
    }
    for (const json& s : j.at("steps")) {
      TutorialStep st;
      st.index = s.at("index").get<int>();
      st.kind = step_kind_from_string(s.at("kind").get<std::string>());
      st.part_id = s.at("part_id").get<int>();
      st.text = s.at("text").get<std::string>();
      st.inset_candidate = s.at("inset_candidate").get<int>();
      st.draw_guides = s.at("draw_guides").get<std::vector<int>>();
      st.use_guides = s.at("use_guides").get<std::vector<int>>();
      st.erase_guides = s.at("erase_guides").get<std::vector<int>>();
      for (const json& e : s.at("edges")) st.edges.push_back({vec_of(e.at(0)), vec_of(e.at(1))});
      for (const json& p : s.at("polylines")) st.polylines.push_back(polyline_of(p));
      if (st.index != static_cast<int>(t.steps.size())) throw FormatError("step indices must be dense", 0, 0);
      t.steps.push_back(std::move(st));
    }
    t.part_order = j.at("part_order").get<std::vector<int>>();
    t.skipped_parts = j.at("skipped_parts").get<std::vector<int>>();
    for (const json& s : j.at("scaffold")) {
      ScaffoldItem item;
      item.part_id = s.at("part_id").get<int>();
      item.candidate = s.at("candidate").get<int>();
      item.kind = primitive_kind_from_string(s.at("kind").get<std::string>());
      item.box = Box3(vec_of(s.at("min")), vec_of(s.at("max")));
      t.scaffold.push_back(item);
    }
    t.warnings = j.at("warnings").get<std::vector<std::string>>();
    return t;
  } catch (const json::exception& e) {
    throw FormatError(std::string("tutorial document: ") + e.what(), 0, 0);
  }
}

std::string export_tutorial(const Tutorial& t) { return tutorial_to_json(t).dump(1) + "\n"; }

Tutorial import_tutorial(std::string_view text) { return tutorial_from_json(parse_json_text(text)); }

}  // namespace h2s
