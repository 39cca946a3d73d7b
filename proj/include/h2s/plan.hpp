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

#ifndef H2S_PLAN_HPP
#define H2S_PLAN_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "h2s/candidates.hpp"
#include "h2s/config.hpp"
#include "h2s/model.hpp"
#include "h2s/primitives.hpp"
#include "h2s/relations.hpp"
#include "h2s/selection.hpp"

namespace h2s {

/// A Custom part follows the chosen geometry of its nearest regular part.
struct CustomPlacement {
  int part_id = 0;
  int host_part = -1;  // -1 when the model has no regular part
  Vec3 shift = Vec3::Zero();
};

/// The view-independent result: fitted primitives, relations, candidates and
/// the chosen candidate per part.
struct Plan {
  EngineConfig config;
  SegmentedModel model;
  std::vector<Primitive> primitives;
  std::vector<Relation> relations;
  CandidateSet candidates;
  Selection selection;
  std::vector<CustomPlacement> custom_parts;

  /// Box each part is drawn with: the chosen candidate's, or for a Custom
  /// part its own box moved along with its host.
  Box3 drawn_box(int part) const;
  /// (parent part, child part) edges of the drawing order: the selection's
  /// anchoring edges plus host -> Custom part.
  std::vector<std::pair<int, int>> dependency_edges() const;
};

struct PlanOptions {
  bool greedy = false;
  double time_limit_seconds = 0.0;
};

/// Runs fitting, relation detection, candidate generation and selection.
Plan make_plan(const SegmentedModel& model, const EngineConfig& config,
               const PlanOptions& options = {});

/// Part volumes used to order the greedy baseline (plane parts have volume 0).
std::map<int, double> part_volumes(const std::vector<Primitive>& primitives);

nlohmann::json vec_to_json(const Vec3& v);
Vec3 vec_from_json(const nlohmann::json& j);
nlohmann::json primitive_to_json(const Primitive& p);
Primitive primitive_from_json(const nlohmann::json& j);
nlohmann::json relation_to_json(const Relation& r);
Relation relation_from_json(const nlohmann::json& j);
nlohmann::json candidate_to_json(const Candidate& c);
Candidate candidate_from_json(const nlohmann::json& j);
nlohmann::json candidates_to_json(const CandidateSet& set);
nlohmann::json selection_to_json(const Selection& s);
Selection selection_from_json(const nlohmann::json& j);

/// Output of `h2s fit`: primitives and relations.
nlohmann::json fit_document(const SegmentedModel& model, const std::vector<Primitive>& primitives,
                            const std::vector<Relation>& relations);

nlohmann::json plan_to_json(const Plan& plan);
Plan plan_from_json(const nlohmann::json& j);
std::string serialize_plan(const Plan& plan);
Plan parse_plan(std::string_view text);

}  // namespace h2s

#endif  // H2S_PLAN_HPP
