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

#ifndef H2S_MODEL_HPP
#define H2S_MODEL_HPP

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "h2s/errors.hpp"
#include "h2s/geometry.hpp"

namespace h2s {

using Polyline = std::vector<Vec3>;

/// One labelled part of the input mesh.
struct Segment {
  int id = 0;
  std::string name;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::optional<std::vector<Polyline>> contours;

  Box3 bounds() const;
  bool operator==(const Segment&) const = default;
};

/// A part-segmented triangle mesh. Coordinates are in model units and are
/// never rescaled.
struct SegmentedModel {
  std::vector<Segment> segments;
  double bbox_diagonal = 0.0;
  Axis up_axis = Axis::Y;

  Box3 bounds() const;
  const Segment& segment(int id) const;
  bool operator==(const SegmentedModel&) const = default;
};

enum class ModelFormat { SegmentedMeshDocument, ObjWithSegmentLabels };

/// Reads and validates a model. Throws FormatError on parse failure and
/// ValidationError when an invariant does not hold.
SegmentedModel load_model(const std::filesystem::path& path, ModelFormat format);

/// Picks the format from the file extension (.obj for OBJ, anything else is
/// treated as a segmented-mesh document).
SegmentedModel load_model(const std::filesystem::path& path);

SegmentedModel parse_model_document(std::string_view text);

/// Parses structured text; syntax errors become FormatError with line and offset.
nlohmann::json parse_json_text(std::string_view text);
SegmentedModel parse_obj(std::string_view text);

/// Checks every invariant, recomputes bbox_diagonal, and returns the model.
SegmentedModel validate_model(SegmentedModel model);

/// Merges vertices closer than 1e-9 (per coordinate) within each segment,
/// recomputes the diagonal and remaps segment ids densely in input order.
SegmentedModel normalize(const SegmentedModel& model);

nlohmann::json model_to_json(const SegmentedModel& model);
SegmentedModel model_from_json(const nlohmann::json& j);

/// Canonical document text; byte-stable for a given model.
std::string serialize_model(const SegmentedModel& model);

}  // namespace h2s

#endif  // H2S_MODEL_HPP
