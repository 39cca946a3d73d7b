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

#ifndef H2S_RENDER_HPP
#define H2S_RENDER_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "h2s/tutorial.hpp"

namespace h2s {

inline constexpr const char* kPriorArtColor = "#BBBBBB";
inline constexpr const char* kFreshColor = "#E8860C";
inline constexpr const char* kRetainedColor = "#2B6CB0";
inline constexpr const char* kEdgeColor = "#000000";
inline constexpr const char* kVanishingColor = "#2F855A";

enum class GuideState { Absent, Fresh, Retained };

/// State of guide `id` on the sheet of step `step`: fresh on its first
/// step, retained until its last use, absent before and after.
GuideState guide_state(const Tutorial& t, int id, int step);

struct StepSheet {
  int step_index = 0;
  std::string svg;
  std::vector<std::string> warnings;
};

StepSheet render_step(const Tutorial& t, int step);
std::string render_contact_sheet(const Tutorial& t);

/// Writes step_000.svg... and contact_sheet.svg; returns the written paths.
std::vector<std::filesystem::path> write_sheets(const Tutorial& t,
                                                const std::filesystem::path& outdir);

/// Rounds to 9 significant digits.
double round9(double v);

nlohmann::json camera_to_json(const Camera& c);
Camera camera_from_json(const nlohmann::json& j);

nlohmann::json tutorial_to_json(const Tutorial& t);
Tutorial tutorial_from_json(const nlohmann::json& j);

/// Canonical document text; export(import(export(t))) == export(t).
std::string export_tutorial(const Tutorial& t);
Tutorial import_tutorial(std::string_view text);

}  // namespace h2s

#endif  // H2S_RENDER_HPP
