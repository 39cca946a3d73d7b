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

#include "h2s/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "h2s/errors.hpp"

namespace h2s {

namespace {

constexpr int kDocumentVersion = 1;
constexpr double kDedupTol = 1e-9;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

Axis axis_from_string(const std::string& s) {
  if (s == "X" || s == "x") return Axis::X;
  if (s == "Y" || s == "y") return Axis::Y;
  if (s == "Z" || s == "z") return Axis::Z;
  throw ValidationError("up_axis must be one of X, Y, Z (got '" + s + "')");
}

std::vector<Vec3> unflatten_points(const nlohmann::json& flat, const std::string& what) {
  if (!flat.is_array() || flat.size() % 3 != 0) {
    throw FormatError(what + ": expected a flat array of coordinate triples", 0, 0);
  }
  std::vector<Vec3> out;
  out.reserve(flat.size() / 3);
  for (std::size_t i = 0; i < flat.size(); i += 3) {
    out.emplace_back(flat[i].get<double>(), flat[i + 1].get<double>(), flat[i + 2].get<double>());
  }
  return out;
}

nlohmann::json flatten_points(const std::vector<Vec3>& pts) {
  nlohmann::json flat = nlohmann::json::array();
  for (const Vec3& p : pts) {
    flat.push_back(p.x());
    flat.push_back(p.y());
    flat.push_back(p.z());
  }
  return flat;
}

}  // namespace

Box3 Segment::bounds() const {
  Box3 box;
  box.setEmpty();
  for (const Vec3& v : vertices) box.extend(v);
  return box;
}

Box3 SegmentedModel::bounds() const {
  Box3 box;
  box.setEmpty();
  for (const Segment& s : segments) box.extend(s.bounds());
  return box;
}

const Segment& SegmentedModel::segment(int id) const {
  for (const Segment& s : segments) {
    if (s.id == id) return s;
  }
  throw ValidationError("no segment with id " + std::to_string(id), id);
}

SegmentedModel validate_model(SegmentedModel model) {
  if (model.segments.empty()) throw ValidationError("model has no segments");
  std::set<int> ids;
  for (const Segment& s : model.segments) {
    if (!ids.insert(s.id).second) {
      throw ValidationError("duplicate segment id " + std::to_string(s.id), s.id);
    }
    if (s.triangles.empty()) {
      throw ValidationError("segment " + std::to_string(s.id) + " has no triangles", s.id);
    }
    for (const Vec3& v : s.vertices) {
      if (!v.allFinite()) {
        throw ValidationError("segment " + std::to_string(s.id) + " has a non-finite vertex", s.id);
      }
    }
    const int n = static_cast<int>(s.vertices.size());
    for (const auto& t : s.triangles) {
      for (int idx : t) {
        if (idx < 0 || idx >= n) {
          throw ValidationError("segment " + std::to_string(s.id) + " has triangle index " +
                                    std::to_string(idx) + " out of range",
                                s.id);
        }
      }
    }
  }
  model.bbox_diagonal = model.bounds().diagonal().norm();
  if (!(model.bbox_diagonal > 0.0)) throw ValidationError("model bounding box is degenerate");
  return model;
}

SegmentedModel model_from_json(const nlohmann::json& j) {
  SegmentedModel model;
  try {
    const int version = j.at("version").get<int>();
    if (version != kDocumentVersion) {
      throw FormatError("unsupported document version " + std::to_string(version), 0, 0);
    }
    model.up_axis = axis_from_string(j.value("up_axis", std::string("Y")));
    for (const auto& js : j.at("segments")) {
      Segment s;
      s.id = js.at("id").get<int>();
      s.name = js.value("name", std::string());
      s.vertices = unflatten_points(js.at("vertices"), "segment vertices");
      const auto& tris = js.at("triangles");
      if (!tris.is_array() || tris.size() % 3 != 0) {
        throw FormatError("segment triangles: expected a flat array of index triples", 0, 0);
      }
      for (std::size_t i = 0; i < tris.size(); i += 3) {
        s.triangles.push_back({tris[i].get<int>(), tris[i + 1].get<int>(), tris[i + 2].get<int>()});
      }
      if (js.contains("contours")) {
        std::vector<Polyline> contours;
        for (const auto& c : js.at("contours")) contours.push_back(unflatten_points(c, "contour"));
        s.contours = std::move(contours);
      }
      model.segments.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed segmented-mesh document: ") + e.what(), 0, 0);
  }
  return validate_model(std::move(model));
}

nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("parse error: ") + e.what(), line_of_offset(text, e.byte),
                      e.byte);
  }
}

SegmentedModel parse_model_document(std::string_view text) {
  return model_from_json(parse_json_text(text));
}

SegmentedModel parse_obj(std::string_view text) {
  SegmentedModel model;
  std::vector<Vec3> positions;
  // Per segment: global vertex index -> local index.
  std::vector<std::map<int, int>> remaps;
  int current = -1;

  auto start_segment = [&](std::string name) {
    Segment s;
    s.id = static_cast<int>(model.segments.size());
    s.name = std::move(name);
    model.segments.push_back(std::move(s));
    remaps.emplace_back();
    current = static_cast<int>(model.segments.size()) - 1;
  };

  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    const std::size_t end = std::min(text.find('\n', offset), text.size());
    std::string line(text.substr(offset, end - offset));
    const std::size_t line_offset = offset;
    offset = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto fail = [&](const std::string& why) {
      throw FormatError("obj line " + std::to_string(line_no) + ": " + why, line_no, line_offset);
    };
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) fail("expected three coordinates");
      positions.emplace_back(x, y, z);
    } else if (tag == "g" || tag == "o") {
      std::string name;
      std::getline(ls, name);
      const auto first = name.find_first_not_of(" \t");
      name = first == std::string::npos ? std::string("segment") : name.substr(first);
      start_segment(name);
    } else if (tag == "f") {
      if (current < 0) start_segment("default");
      std::vector<int> face;
      std::string tok;
      while (ls >> tok) {
        const std::string head = tok.substr(0, tok.find('/'));
        int idx = 0;
        const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
        if (ec != std::errc() || ptr != head.data() + head.size() || idx == 0) {
          fail("bad vertex reference '" + tok + "'");
        }
        const int global = idx > 0 ? idx - 1 : static_cast<int>(positions.size()) + idx;
        if (global < 0 || global >= static_cast<int>(positions.size())) {
          fail("vertex reference out of range");
        }
        auto& remap = remaps[current];
        auto [it, inserted] = remap.emplace(global, static_cast<int>(remap.size()));
        if (inserted) model.segments[current].vertices.push_back(positions[global]);
        face.push_back(it->second);
      }
      if (face.size() < 3) fail("face needs at least three vertices");
      for (std::size_t k = 1; k + 1 < face.size(); ++k) {
        model.segments[current].triangles.push_back({face[0], face[k], face[k + 1]});
      }
    }
    if (end == text.size()) break;
  }
  return validate_model(std::move(model));
}

SegmentedModel load_model(const std::filesystem::path& path, ModelFormat format) {
  const std::string text = read_file(path);
  return format == ModelFormat::ObjWithSegmentLabels ? parse_obj(text)
                                                      : parse_model_document(text);
}

SegmentedModel load_model(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return load_model(path, ext == ".obj" || ext == ".OBJ" ? ModelFormat::ObjWithSegmentLabels
                                                         : ModelFormat::SegmentedMeshDocument);
}

SegmentedModel normalize(const SegmentedModel& model) {
  SegmentedModel out;
  out.up_axis = model.up_axis;
  struct CellHash {
    std::size_t operator()(const std::array<long long, 3>& c) const {
      std::size_t h = 1469598103934665603ull;
      for (long long v : c) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
      return h;
    }
  };
  for (std::size_t si = 0; si < model.segments.size(); ++si) {
    const Segment& in = model.segments[si];
    Segment s;
    s.id = static_cast<int>(si);
    s.name = in.name;
    s.contours = in.contours;
    // Grid of cell size kDedupTol; a match is searched in the 27 neighbour cells.
    std::unordered_map<std::array<long long, 3>, std::vector<int>, CellHash> grid;
    std::vector<int> remap(in.vertices.size());
    for (std::size_t vi = 0; vi < in.vertices.size(); ++vi) {
      const Vec3& p = in.vertices[vi];
      const std::array<long long, 3> cell{static_cast<long long>(std::floor(p.x() / kDedupTol)),
                                          static_cast<long long>(std::floor(p.y() / kDedupTol)),
                                          static_cast<long long>(std::floor(p.z() / kDedupTol))};
      int match = -1;
      for (int dx = -1; dx <= 1 && match < 0; ++dx) {
        for (int dy = -1; dy <= 1 && match < 0; ++dy) {
          for (int dz = -1; dz <= 1 && match < 0; ++dz) {
            auto it = grid.find({cell[0] + dx, cell[1] + dy, cell[2] + dz});
            if (it == grid.end()) continue;
            for (int k : it->second) {
              if ((s.vertices[k] - p).cwiseAbs().maxCoeff() <= kDedupTol) {
                if (match < 0 || k < match) match = k;
              }
            }
          }
        }
      }
      if (match < 0) {
        match = static_cast<int>(s.vertices.size());
        s.vertices.push_back(p);
        grid[cell].push_back(match);
      }
      remap[vi] = match;
    }
    for (const auto& t : in.triangles) s.triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
    out.segments.push_back(std::move(s));
  }
  return validate_model(std::move(out));
}

nlohmann::json model_to_json(const SegmentedModel& model) {
  nlohmann::json segs = nlohmann::json::array();
  for (const Segment& s : model.segments) {
    nlohmann::json tris = nlohmann::json::array();
    for (const auto& t : s.triangles) {
      tris.push_back(t[0]);
      tris.push_back(t[1]);
      tris.push_back(t[2]);
    }
    nlohmann::json js = {
        {"id", s.id}, {"name", s.name}, {"vertices", flatten_points(s.vertices)}, {"triangles", tris}};
    if (s.contours) {
      nlohmann::json cs = nlohmann::json::array();
      for (const Polyline& c : *s.contours) cs.push_back(flatten_points(c));
      js["contours"] = cs;
    }
    segs.push_back(std::move(js));
  }
  return {{"version", kDocumentVersion},
          {"up_axis", axis_name(static_cast<int>(model.up_axis))},
          {"segments", segs}};
}

std::string serialize_model(const SegmentedModel& model) { return model_to_json(model).dump(1) + "\n"; }

}  // namespace h2s
