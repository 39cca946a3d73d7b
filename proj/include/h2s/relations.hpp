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

#ifndef H2S_RELATIONS_HPP
#define H2S_RELATIONS_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "h2s/config.hpp"
#include "h2s/primitives.hpp"

namespace h2s {

enum class RelationKind { Coplanar, Coaxial, CommonBisectorPlane };

std::string_view to_string(RelationKind kind);
RelationKind relation_kind_from_string(std::string_view s);

/// Pairwise constraint between two parts, with i < j.
///
/// Coplanar: face of i on `axis` at `side_i` shares a plane with the face of
/// j at `side_j` (side 0 = lo, 1 = hi). Coaxial: the center lines along
/// `axis` coincide. CommonBisectorPlane: the mid-planes perpendicular to
/// `axis` coincide.
struct Relation {
  int i = 0;
  int j = 0;
  RelationKind kind = RelationKind::Coplanar;
  int axis = 0;
  int side_i = 0;
  int side_j = 0;

  bool operator==(const Relation&) const = default;
};

/// Classifies one pair of boxes, or returns nothing when unrelated.
///
/// Center coordinates that coincide within `tol` decide the kind: all three
/// give CommonBisectorPlane (priority over Coaxial, lowest axis recorded);
/// exactly two give Coaxial along the remaining axis; exactly one gives
/// CommonBisectorPlane on that axis. Otherwise the closest shared face
/// plane, if any, gives Coplanar.
std::optional<Relation> classify_pair(int i, const Box3& a, int j, const Box3& b, double tol);

/// True when boxes `a` (part rel.i) and `b` (part rel.j) still satisfy the
/// constraint encoded by `rel` within `tol`.
bool relation_holds(const Relation& rel, const Box3& a, const Box3& b, double tol);

/// Tests every unordered pair of non-Custom primitives; output sorted by (i, j).
std::vector<Relation> detect_relations(const std::vector<Primitive>& primitives,
                                       const EngineConfig& config, double bbox_diagonal);

}  // namespace h2s

#endif  // H2S_RELATIONS_HPP
