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

#ifndef H2S_CONFIG_HPP
#define H2S_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace h2s {

/// Easy-to-construct ratios an axis end can be anchored at.
enum class AnchorRatio { Half, Third, Quarter, ExtendHalf, ExtendOne, ExtendTwo, Align };

inline constexpr AnchorRatio kAllRatios[] = {
    AnchorRatio::Half,       AnchorRatio::Third,     AnchorRatio::Quarter, AnchorRatio::ExtendHalf,
    AnchorRatio::ExtendOne,  AnchorRatio::ExtendTwo, AnchorRatio::Align,
};

std::string_view to_string(AnchorRatio r);
AnchorRatio anchor_ratio_from_string(std::string_view s);

/// Tunable constants of the engine. Distances are fractions of the model's
/// bounding-box diagonal so the whole pipeline is scale-invariant.
struct EngineConfig {
  double prune_fraction = 0.10;
  double relation_distance_tol = 0.01;
  double relation_angle_tol = 1.0;  // degrees; all primitives are axis-aligned
  double difficulty_weight = 0.05;
  double unguided_axis_penalty = 2.0;
  double eyeball_fraction = 0.002;
  double guide_merge_tol = 1e-4;
  std::vector<AnchorRatio> ratio_catalog{std::begin(kAllRatios), std::end(kAllRatios)};
  // Per-part candidate cap; originals are always kept.
  int max_candidates_per_part = 400;
  // A fit whose residue or surface coverage exceeds this fraction of the
  // segment's own diagonal is rejected; segments with no accepted fit are Custom.
  double custom_fit_tol = 0.05;

  bool ratio_enabled(AnchorRatio r) const;

  /// Throws ValidationError if a field is out of range.
  void validate() const;
};

nlohmann::json config_to_json(const EngineConfig& config);
EngineConfig config_from_json(const nlohmann::json& j);

/// FNV-1a over the canonical JSON dump of the config.
std::uint64_t config_hash(const EngineConfig& config);

}  // namespace h2s

#endif  // H2S_CONFIG_HPP
