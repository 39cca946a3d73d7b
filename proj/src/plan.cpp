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

#include "h2s/plan.hpp"

#include <algorithm>
#include <limits>

#include "h2s/errors.hpp"

namespace h2s {

using nlohmann::json;

namespace {

json box_to_json(const Box3& b) {
  return {{"min", vec_to_json(b.min())}, {"max", vec_to_json(b.max())}};
}

Box3 box_from_json(const json& j) {
  return Box3(vec_from_json(j.at("min")), vec_from_json(j.at("max")));
}

json spec_to_json(const SideSpec& s) {
  if (!s.guided()) return nullptr;
  return {{"parent", s.parent},
          {"feature", to_string(s.feature)},
          {"ratio", to_string(s.ratio)},
          {"mirrored", s.mirrored},
          {"host", {{"candidate", s.host.candidate},
                    {"normal_axis", s.host.normal_axis},
                    {"side", s.host.side}}}};
}

SideSpec spec_from_json(const json& j) {
  SideSpec s;
  if (j.is_null()) return s;
  s.parent = j.at("parent").get<int>();
  s.feature = feature_from_string(j.at("feature").get<std::string>());
  s.ratio = anchor_ratio_from_string(j.at("ratio").get<std::string>());
  s.mirrored = j.at("mirrored").get<bool>();
  const json& h = j.at("host");
  s.host = HostFace{h.at("candidate").get<int>(), h.at("normal_axis").get<int>(),
                    h.at("side").get<int>()};
  return s;
}

}  // namespace

json vec_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("expected a 3-vector", 0, 0);
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json primitive_to_json(const Primitive& p) {
  json j = {{"part_id", p.part_id},      {"kind", to_string(p.kind)}, {"box", box_to_json(p.box)},
            {"residue", p.residue},      {"level", p.level},          {"cyl_axis", p.cyl_axis},
            {"vertical_axis", p.vertical_axis}};
  if (p.pyramid_bottom) j["pyramid_bottom"] = box_to_json(*p.pyramid_bottom);
  if (p.pyramid_top) j["pyramid_top"] = box_to_json(*p.pyramid_top);
  return j;
}

Primitive primitive_from_json(const json& j) {
  Primitive p;
  p.part_id = j.at("part_id").get<int>();
  p.kind = primitive_kind_from_string(j.at("kind").get<std::string>());
  p.box = box_from_json(j.at("box"));
  p.residue = j.at("residue").get<double>();
  p.level = j.at("level").get<int>();
  p.cyl_axis = j.at("cyl_axis").get<int>();
  p.vertical_axis = j.at("vertical_axis").get<int>();
  if (j.contains("pyramid_bottom")) p.pyramid_bottom = box_from_json(j.at("pyramid_bottom"));
  if (j.contains("pyramid_top")) p.pyramid_top = box_from_json(j.at("pyramid_top"));
  return p;
}

json relation_to_json(const Relation& r) {
  return {{"i", r.i},       {"j", r.j},           {"kind", to_string(r.kind)},
          {"axis", r.axis}, {"side_i", r.side_i}, {"side_j", r.side_j}};
}

Relation relation_from_json(const json& j) {
  Relation r;
  r.i = j.at("i").get<int>();
  r.j = j.at("j").get<int>();
  r.kind = relation_kind_from_string(j.at("kind").get<std::string>());
  r.axis = j.at("axis").get<int>();
  r.side_i = j.at("side_i").get<int>();
  r.side_j = j.at("side_j").get<int>();
  return r;
}

json candidate_to_json(const Candidate& c) {
  json anchors = json::array();
  for (const AxisAnchor& a : c.anchors) {
    anchors.push_back({{"axis", a.axis}, {"pin", a.pin}, {"lo", spec_to_json(a.lo)},
                       {"hi", spec_to_json(a.hi)}});
  }
  return {{"id", c.id},
          {"part_id", c.part_id},
          {"level", c.level},
          {"parents", c.parents},
          {"e_d", c.e_d},
          {"e_e", c.e_e},
          {"cost", c.cost()},
          {"restored_relations", c.restored_relations},
          {"geometry", primitive_to_json(c.geometry)},
          {"anchors", anchors}};
}

Candidate candidate_from_json(const json& j) {
  Candidate c;
  c.id = j.at("id").get<int>();
  c.part_id = j.at("part_id").get<int>();
  c.level = j.at("level").get<int>();
  c.parents = j.at("parents").get<std::vector<int>>();
  c.e_d = j.at("e_d").get<double>();
  c.e_e = j.at("e_e").get<double>();
  c.restored_relations = j.at("restored_relations").get<std::vector<int>>();
  c.geometry = primitive_from_json(j.at("geometry"));
  const json& anchors = j.at("anchors");
  if (!anchors.is_array() || anchors.size() != 3) throw FormatError("expected 3 anchors", 0, 0);
  for (int k = 0; k < kAxes; ++k) {
    AxisAnchor& a = c.anchors[k];
    a.axis = anchors[k].at("axis").get<int>();
    a.pin = anchors[k].at("pin").get<int>();
    a.lo = spec_from_json(anchors[k].at("lo"));
    a.hi = spec_from_json(anchors[k].at("hi"));
  }
  return c;
}

json candidates_to_json(const CandidateSet& set) {
  json list = json::array();
  for (const Candidate& c : set.candidates) list.push_back(candidate_to_json(c));
  json pairs = json::array();
  for (auto [i, j] : set.pairs) pairs.push_back({i, j});
  return {{"candidates", list}, {"pairs", pairs}, {"model_max_face_area", set.model_max_face_area}};
}

json selection_to_json(const Selection& s) {
  json chosen = json::array();
  for (const auto& [part, id] : s.chosen) chosen.push_back({{"part", part}, {"candidate", id}});
  json edges = json::array();
  for (auto [a, b] : s.order_edges) edges.push_back({a, b});
  return {{"chosen", chosen},   {"objective", s.objective}, {"optimal", s.optimal},
          {"method", s.method}, {"order_edges", edges},     {"order", s.order}};
}

Selection selection_from_json(const json& j) {
  Selection s;
  for (const json& c : j.at("chosen")) s.chosen[c.at("part").get<int>()] = c.at("candidate").get<int>();
  s.objective = j.at("objective").get<double>();
  s.optimal = j.at("optimal").get<bool>();
  s.method = j.at("method").get<std::string>();
  for (const json& e : j.at("order_edges")) s.order_edges.push_back({e[0].get<int>(), e[1].get<int>()});
  s.order = j.at("order").get<std::vector<int>>();
  return s;
}

Box3 Plan::drawn_box(int part) const {
  for (const CustomPlacement& c : custom_parts) {
    if (c.part_id == part) {
      const Box3& b = primitives.at(part).box;
      return Box3(b.min() + c.shift, b.max() + c.shift);
    }
  }
  return candidates.candidates.at(selection.chosen.at(part)).geometry.box;
}

std::vector<std::pair<int, int>> Plan::dependency_edges() const {
  std::vector<std::pair<int, int>> edges = selection.order_edges;
  for (const CustomPlacement& c : custom_parts) {
    if (c.host_part >= 0) edges.push_back({c.host_part, c.part_id});
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::map<int, double> part_volumes(const std::vector<Primitive>& primitives) {
  std::map<int, double> v;
  for (const Primitive& p : primitives) v[p.part_id] = p.box.volume();
  return v;
}

Plan make_plan(const SegmentedModel& input, const EngineConfig& config, const PlanOptions& options) {
  config.validate();
  Plan plan;
  plan.config = config;
  plan.model = normalize(input);
  const double diag = plan.model.bbox_diagonal;
  plan.primitives = fit_all(plan.model, config);
  plan.relations = detect_relations(plan.primitives, config, diag);
  plan.candidates = generate_candidates(plan.primitives, plan.relations, config, diag);
  const SelectionProblem problem =
      build_problem(plan.candidates, plan.relations, config.relation_distance_tol * diag);
  if (options.greedy) {
    plan.selection = greedy_baseline(problem, part_volumes(plan.primitives));
  } else {
    SolveOptions so;
    so.time_limit_seconds = options.time_limit_seconds;
    plan.selection = solve(problem, so);
  }
  extract_order(plan.selection, plan.candidates.candidates);

  for (const Primitive& p : plan.primitives) {
    if (!p.custom()) continue;
    CustomPlacement cp;
    cp.part_id = p.part_id;
    double best_gap = std::numeric_limits<double>::infinity();
    double best_dist = best_gap;
    for (const Primitive& q : plan.primitives) {
      if (q.custom()) continue;
      const double gap = box_gap(p.box, q.box);
      const double dist = (p.box.center() - q.box.center()).norm();
      if (gap < best_gap || (gap == best_gap && dist < best_dist)) {
        best_gap = gap;
        best_dist = dist;
        cp.host_part = q.part_id;
      }
    }
    if (cp.host_part >= 0) {
      cp.shift = plan.drawn_box(cp.host_part).center() - plan.primitives[cp.host_part].box.center();
    }
    plan.custom_parts.push_back(cp);
  }
  return plan;
}

json fit_document(const SegmentedModel& model, const std::vector<Primitive>& primitives,
                  const std::vector<Relation>& relations) {
  json prims = json::array();
  for (const Primitive& p : primitives) prims.push_back(primitive_to_json(p));
  json rels = json::array();
  for (const Relation& r : relations) rels.push_back(relation_to_json(r));
  return {{"version", 1},
          {"bbox_diagonal", model.bbox_diagonal},
          {"up_axis", axis_name(static_cast<int>(model.up_axis))},
          {"primitives", prims},
          {"relations", rels}};
}

json plan_to_json(const Plan& plan) {
  json prims = json::array();
  for (const Primitive& p : plan.primitives) prims.push_back(primitive_to_json(p));
  json rels = json::array();
  for (const Relation& r : plan.relations) rels.push_back(relation_to_json(r));
  json customs = json::array();
  for (const CustomPlacement& c : plan.custom_parts) {
    customs.push_back({{"part_id", c.part_id}, {"host_part", c.host_part}, {"shift", vec_to_json(c.shift)}});
  }
  return {{"version", 1},
          {"config", config_to_json(plan.config)},
          {"model", model_to_json(plan.model)},
          {"primitives", prims},
          {"relations", rels},
          {"candidate_set", candidates_to_json(plan.candidates)},
          {"selection", selection_to_json(plan.selection)},
          {"custom_parts", customs}};
}

Plan plan_from_json(const json& j) {
  try {
    if (j.at("version").get<int>() != 1) throw FormatError("unsupported plan version", 0, 0);
    Plan plan;
    plan.config = config_from_json(j.at("config"));
    plan.model = model_from_json(j.at("model"));
    for (const json& p : j.at("primitives")) plan.primitives.push_back(primitive_from_json(p));
    for (const json& r : j.at("relations")) plan.relations.push_back(relation_from_json(r));
    const json& cs = j.at("candidate_set");
    plan.candidates.per_part.assign(plan.primitives.size(), {});
    for (const json& c : cs.at("candidates")) {
      Candidate cand = candidate_from_json(c);
      if (cand.id != static_cast<int>(plan.candidates.candidates.size())) {
        throw FormatError("candidate ids must be dense and ordered", 0, 0);
      }
      plan.candidates.per_part.at(cand.part_id).push_back(cand.id);
      plan.candidates.candidates.push_back(std::move(cand));
    }
    for (const json& p : cs.at("pairs")) plan.candidates.pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    plan.candidates.model_max_face_area = cs.at("model_max_face_area").get<double>();
    plan.selection = selection_from_json(j.at("selection"));
    for (const json& c : j.at("custom_parts")) {
      plan.custom_parts.push_back({c.at("part_id").get<int>(), c.at("host_part").get<int>(),
                                   vec_from_json(c.at("shift"))});
    }
    return plan;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed plan document: ") + e.what(), 0, 0);
  }
}

std::string serialize_plan(const Plan& plan) { return plan_to_json(plan).dump(1) + "\n"; }

Plan parse_plan(std::string_view text) { return plan_from_json(parse_json_text(text)); }

}  // namespace h2s
