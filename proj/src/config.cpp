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

#include "h2s/config.hpp"

#include <algorithm>

#include "h2s/errors.hpp"

namespace h2s {

std::string_view to_string(AnchorRatio r) {
  switch (r) {
    case AnchorRatio::Half: return "half";
    case AnchorRatio::Third: return "third";
    case AnchorRatio::Quarter: return "quarter";
    case AnchorRatio::ExtendHalf: return "extend_half";
    case AnchorRatio::ExtendOne: return "extend_one";
    case AnchorRatio::ExtendTwo: return "extend_two";
    case AnchorRatio::Align: return "align";
  }
  return "?";
}

AnchorRatio anchor_ratio_from_string(std::string_view s) {
  for (AnchorRatio r : kAllRatios) {
    if (to_string(r) == s) return r;
  }
  throw ValidationError("unknown anchor ratio '" + std::string(s) + "'");
}

bool EngineConfig::ratio_enabled(AnchorRatio r) const {
  return std::find(ratio_catalog.begin(), ratio_catalog.end(), r) != ratio_catalog.end();
}

void EngineConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("invalid engine config: ") + what);
  };
  require(prune_fraction > 0.0 && prune_fraction < 0.5, "prune_fraction must be in (0, 0.5)");
  require(relation_distance_tol > 0.0, "relation_distance_tol must be > 0");
  require(relation_angle_tol > 0.0, "relation_angle_tol must be > 0");
  require(difficulty_weight > 0.0, "difficulty_weight must be > 0");
  require(unguided_axis_penalty > 0.0, "unguided_axis_penalty must be > 0");
  require(eyeball_fraction > 0.0, "eyeball_fraction must be > 0");
  require(guide_merge_tol > 0.0, "guide_merge_tol must be > 0");
  require(max_candidates_per_part >= 1, "max_candidates_per_part must be >= 1");
  require(custom_fit_tol > 0.0, "custom_fit_tol must be > 0");
}

nlohmann::json config_to_json(const EngineConfig& config) {
  nlohmann::json ratios = nlohmann::json::array();
  for (AnchorRatio r : config.ratio_catalog) ratios.push_back(std::string(to_string(r)));
  return {
      {"prune_fraction", config.prune_fraction},
      {"relation_distance_tol", config.relation_distance_tol},
      {"relation_angle_tol", config.relation_angle_tol},
      {"difficulty_weight", config.difficulty_weight},
      {"unguided_axis_penalty", config.unguided_axis_penalty},
      {"eyeball_fraction", config.eyeball_fraction},
      {"guide_merge_tol", config.guide_merge_tol},
      {"ratio_catalog", ratios},
      {"max_candidates_per_part", config.max_candidates_per_part},
      {"custom_fit_tol", config.custom_fit_tol},
  };
}

EngineConfig config_from_json(const nlohmann::json& j) {
  EngineConfig c;
  auto read = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  read("prune_fraction", c.prune_fraction);
  read("relation_distance_tol", c.relation_distance_tol);
  read("relation_angle_tol", c.relation_angle_tol);
  read("difficulty_weight", c.difficulty_weight);
  read("unguided_axis_penalty", c.unguided_axis_penalty);
  read("eyeball_fraction", c.eyeball_fraction);
  read("guide_merge_tol", c.guide_merge_tol);
  read("max_candidates_per_part", c.max_candidates_per_part);
  read("custom_fit_tol", c.custom_fit_tol);
  if (j.contains("ratio_catalog")) {
    c.ratio_catalog.clear();
    for (const auto& r : j.at("ratio_catalog")) {
      c.ratio_catalog.push_back(anchor_ratio_from_string(r.get<std::string>()));
    }
  }
  c.validate();
  return c;
}

std::uint64_t config_hash(const EngineConfig& config) {
  const std::string text = config_to_json(config).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace h2s
