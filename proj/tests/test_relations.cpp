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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "h2s/relations.hpp"

using namespace h2s;

namespace {

std::vector<Relation> relations_of(const SegmentedModel& m) {
  return detect_relations(fit_all(m), EngineConfig{}, m.bbox_diagonal);
}

const Relation* find(const std::vector<Relation>& rels, int i, int j) {
  for (const Relation& r : rels) {
    if (r.i == i && r.j == j) return &r;
  }
  return nullptr;
}

Box3 shifted(const Box3& b, int axis, double d) {
  Vec3 t = Vec3::Zero();
  t[axis] = d;
  return Box3(b.min() + t, b.max() + t);
}

}  // namespace

TEST_CASE("mixer bowl and beater are coaxial about the vertical axis") {
  const auto rels = relations_of(fixtures::mixer());
  const Relation* r = find(rels, 2, 5);
  REQUIRE(r != nullptr);
  CHECK(r->kind == RelationKind::Coaxial);
  CHECK(r->axis == 1);
}

TEST_CASE("flush bottoms are coplanar on the bottom faces") {
  const auto rels = relations_of(fixtures::two_cuboids());
  REQUIRE(rels.size() == 1);
  CHECK(rels[0].kind == RelationKind::Coplanar);
  CHECK(rels[0].axis == 1);
  CHECK(rels[0].side_i == 0);
  CHECK(rels[0].side_j == 0);
}

TEST_CASE("coaxial and sharing a bisector plane reports only the bisector plane") {
  const Box3 a(Vec3(-1, 0, -1), Vec3(1, 2, 1));
  const Box3 b(Vec3(-0.3, 0.5, -0.3), Vec3(0.3, 1.5, 0.3));
  const auto r = classify_pair(0, a, 1, b, 0.01);
  REQUIRE(r.has_value());
  CHECK(r->kind == RelationKind::CommonBisectorPlane);
}

TEST_CASE("one shared mid-plane is a bisector relation on that axis") {
  const Box3 a(Vec3(0, 0, 0), Vec3(1, 1, 1));
  const Box3 b(Vec3(3, 0.2, 5), Vec3(4, 0.8, 6));
  const auto r = classify_pair(0, a, 1, b, 0.01);
  REQUIRE(r.has_value());
  CHECK(r->kind == RelationKind::CommonBisectorPlane);
  CHECK(r->axis == 1);
}

TEST_CASE("unrelated boxes give nothing") {
  const Box3 a(Vec3(0, 0, 0), Vec3(1, 1, 1));
  const Box3 b(Vec3(3, 2.3, 5), Vec3(4.5, 2.8, 6.1));
  CHECK_FALSE(classify_pair(0, a, 1, b, 0.01).has_value());
}

TEST_CASE("perturbation below tol/2 keeps a relation, beyond 2 tol drops it") {
  const double tol = 0.01;
  SUBCASE("coaxial") {
    const Box3 a(Vec3(-0.5, 0, -0.5), Vec3(0.5, 1, 0.5));
    const Box3 b(Vec3(-0.1, 1, -0.1), Vec3(0.1, 1.6, 0.1));
    REQUIRE(classify_pair(0, a, 1, b, tol)->kind == RelationKind::Coaxial);
    for (int axis : {0, 2}) {
      const auto near = classify_pair(0, a, 1, shifted(b, axis, 0.49 * tol), tol);
      REQUIRE(near.has_value());
      CHECK(near->kind == RelationKind::Coaxial);
      const auto far = classify_pair(0, a, 1, shifted(b, axis, 2.01 * tol), tol);
      CHECK((!far || far->kind != RelationKind::Coaxial));
    }
  }
  SUBCASE("coplanar") {
    const Box3 a(Vec3(0, 0, 0), Vec3(1, 1, 1));
    const Box3 b(Vec3(1.5, 0, 0.2), Vec3(2.3, 0.6, 0.9));
    const auto near = classify_pair(0, a, 1, shifted(b, 1, 0.49 * tol), tol);
    REQUIRE(near.has_value());
    CHECK(near->kind == RelationKind::Coplanar);
    CHECK(near->axis == 1);
    CHECK_FALSE(classify_pair(0, a, 1, shifted(b, 1, 2.01 * tol), tol).has_value());
  }
  SUBCASE("bisector") {
    const Box3 a(Vec3(0, 0, 0), Vec3(1, 1, 1));
    const Box3 b(Vec3(3, 0.2, 5), Vec3(4, 0.8, 6));
    CHECK(classify_pair(0, a, 1, shifted(b, 1, 0.49 * tol), tol)->kind ==
          RelationKind::CommonBisectorPlane);
    CHECK_FALSE(classify_pair(0, a, 1, shifted(b, 1, 2.01 * tol), tol).has_value());
  }
}

TEST_CASE("detected relations hold under relation_holds") {
  for (const auto& f : fixtures::all()) {
    CAPTURE(f.name);
    const auto prims = fit_all(f.model);
    const double tol = EngineConfig{}.relation_distance_tol * f.model.bbox_diagonal;
    for (const Relation& r : detect_relations(prims, EngineConfig{}, f.model.bbox_diagonal)) {
      CHECK(relation_holds(r, prims[r.i].box, prims[r.j].box, tol));
    }
  }
}

TEST_CASE("at most one relation per pair, canonical order, independent of input order") {
  std::mt19937 rng(7);
  for (const auto& f : fixtures::all()) {
    CAPTURE(f.name);
    auto prims = fit_all(f.model);
    const auto base = detect_relations(prims, EngineConfig{}, f.model.bbox_diagonal);
    std::set<std::pair<int, int>> pairs;
    for (const Relation& r : base) {
      CHECK(r.i < r.j);
      CHECK(pairs.insert({r.i, r.j}).second);
      CHECK_FALSE(prims[r.i].custom());
      CHECK_FALSE(prims[r.j].custom());
    }
    for (int trial = 0; trial < 5; ++trial) {
      std::shuffle(prims.begin(), prims.end(), rng);
      CHECK(detect_relations(prims, EngineConfig{}, f.model.bbox_diagonal) == base);
    }
  }
}

TEST_CASE("kind names round-trip") {
  for (RelationKind k :
       {RelationKind::Coplanar, RelationKind::Coaxial, RelationKind::CommonBisectorPlane}) {
    CHECK(relation_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(relation_kind_from_string("parallel"), FormatError);
}
