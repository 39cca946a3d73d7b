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

#include "h2s/relations.hpp"

#include <algorithm>
#include <cmath>

#include "h2s/errors.hpp"

namespace h2s {

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Coplanar: return "coplanar";
    case RelationKind::Coaxial: return "coaxial";
    case RelationKind::CommonBisectorPlane: return "common_bisector_plane";
  }
  return "?";
}

RelationKind relation_kind_from_string(std::string_view s) {
  for (RelationKind k :
       {RelationKind::Coplanar, RelationKind::Coaxial, RelationKind::CommonBisectorPlane}) {
    if (to_string(k) == s) return k;
  }
  throw FormatError("unknown relation kind '" + std::string(s) + "'", 0, 0);
}

std::optional<Relation> classify_pair(int i, const Box3& a, int j, const Box3& b, double tol) {
  Relation rel;
  rel.i = i;
  rel.j = j;
  const Vec3 ca = a.center();
  const Vec3 cb = b.center();
  int coincident = 0;
  int first_same = -1;
  int first_diff = -1;
  for (int k = 0; k < kAxes; ++k) {
    if (std::abs(ca[k] - cb[k]) <= tol) {
      ++coincident;
      if (first_same < 0) first_same = k;
    } else if (first_diff < 0) {
      first_diff = k;
    }
  }
  if (coincident == 3 || coincident == 1) {
    rel.kind = RelationKind::CommonBisectorPlane;
    rel.axis = first_same;
    return rel;
  }
  if (coincident == 2) {
    rel.kind = RelationKind::Coaxial;
    rel.axis = first_diff;
    return rel;
  }
  double best = tol;
  bool found = false;
  for (int k = 0; k < kAxes; ++k) {
    for (int si = 0; si < 2; ++si) {
      for (int sj = 0; sj < 2; ++sj) {
        const double d = std::abs(face_coordinate(a, k, si) - face_coordinate(b, k, sj));
        if (d < best || (!found && d <= tol)) {
          best = d;
          found = true;
          rel.kind = RelationKind::Coplanar;
          rel.axis = k;
          rel.side_i = si;
          rel.side_j = sj;
        }
      }
    }
  }
  if (!found) return std::nullopt;
  return rel;
}

bool relation_holds(const Relation& rel, const Box3& a, const Box3& b, double tol) {
  const Vec3 ca = a.center();
  const Vec3 cb = b.center();
  switch (rel.kind) {
    case RelationKind::Coplanar:
      return std::abs(face_coordinate(a, rel.axis, rel.side_i) -
                      face_coordinate(b, rel.axis, rel.side_j)) <= tol;
    case RelationKind::Coaxial:
      for (int k : other_axes(rel.axis)) {
        if (std::abs(ca[k] - cb[k]) > tol) return false;
      }
      return true;
    case RelationKind::CommonBisectorPlane:
      return std::abs(ca[rel.axis] - cb[rel.axis]) <= tol;
  }
  return false;
}

std::vector<Relation> detect_relations(const std::vector<Primitive>& primitives,
                                       const EngineConfig& config, double bbox_diagonal) {
  const double tol = config.relation_distance_tol * bbox_diagonal;
  std::vector<const Primitive*> sorted;
  for (const Primitive& p : primitives) {
    if (!p.custom()) sorted.push_back(&p);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Primitive* x, const Primitive* y) { return x->part_id < y->part_id; });
  std::vector<Relation> out;
  for (std::size_t x = 0; x < sorted.size(); ++x) {
    for (std::size_t y = x + 1; y < sorted.size(); ++y) {
      if (auto rel = classify_pair(sorted[x]->part_id, sorted[x]->box, sorted[y]->part_id,
                                   sorted[y]->box, tol)) {
        out.push_back(*rel);
      }
    }
  }
  return out;
}

}  // namespace h2s
