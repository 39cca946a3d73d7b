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

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "h2s/plan.hpp"
#include "h2s/selection.hpp"
#include "oracles.hpp"

using namespace h2s;

namespace {

// Hand-built problem: parts given as cost lists, originals first.
SelectionProblem make_problem(const std::vector<std::vector<double>>& parts,
                              std::vector<std::pair<int, int>> deps = {},
                              std::vector<std::pair<int, int>> conflicts = {}) {
  SelectionProblem pb;
  for (std::size_t part = 0; part < parts.size(); ++part) {
    std::vector<int> ids;
    for (double c : parts[part]) {
      ids.push_back(pb.size());
      pb.part_of.push_back(static_cast<int>(part));
      pb.cost.push_back(c);
    }
    pb.per_part.push_back({static_cast<int>(part), ids});
    pb.originals.push_back(ids.front());
  }
  pb.dependency_pairs = std::move(deps);
  pb.conflict_pairs = std::move(conflicts);
  return pb;
}

Candidate cand(int id, int part, int level, std::vector<int> parents) {
  Candidate c;
  c.id = id;
  c.part_id = part;
  c.level = level;
  c.parents = std::move(parents);
  return c;
}

// Relation test written from raw box coordinates.
bool oracle_holds(const Relation& r, const Box3& a, const Box3& b, double tol) {
  auto face = [](const Box3& x, int axis, int side) {
    return side == 0 ? x.min()[axis] : x.max()[axis];
  };
  auto mid = [](const Box3& x, int axis) { return 0.5 * (x.min()[axis] + x.max()[axis]); };
  switch (r.kind) {
    case RelationKind::Coplanar:
      return std::abs(face(a, r.axis, r.side_i) - face(b, r.axis, r.side_j)) <= tol;
    case RelationKind::Coaxial:
      for (int k = 0; k < 3; ++k) {
        if (k != r.axis && std::abs(mid(a, k) - mid(b, k)) > tol) return false;
      }
      return true;
    case RelationKind::CommonBisectorPlane:
      return std::abs(mid(a, r.axis) - mid(b, r.axis)) <= tol;
  }
  return false;
}

}  // namespace

TEST_CASE("solver matches exhaustive enumeration on random instances") {
  int nontrivial = 0;
  for (std::uint32_t seed = 1; seed <= 300; ++seed) {
    CAPTURE(seed);
    const SelectionProblem pb = oracles::random_problem(seed);
    REQUIRE(pb.size() <= 14);
    const auto oracle = oracles::brute_force(pb);
    REQUIRE(oracle.has_value());
    const Selection s = solve(pb);
    CHECK(s.optimal);
    CHECK(s.method == "exact");
    CHECK(s.objective == doctest::Approx(oracle->objective).epsilon(1e-12));
    CHECK(s.chosen == oracle->chosen);
    if (oracle->objective < 6.0 * static_cast<double>(pb.per_part.size())) ++nontrivial;
  }
  // The instances must exercise anchored choices, not just originals.
  CHECK(nontrivial > 200);
}

TEST_CASE("linearized constraints agree with the quadratic forms on all assignments") {
  for (int xc = 0; xc <= 1; ++xc) {
    for (int xp = 0; xp <= 1; ++xp) {
      CHECK((xc * xp - xc >= 0) == (xc <= xp));
      CHECK((xc * xp == 0) == (xc + xp <= 1));
    }
  }
  // Same tables through constraint_violations on a two-variable problem.
  const SelectionProblem dep = make_problem({{1.0}, {1.0}}, {{0, 1}});
  const SelectionProblem con = make_problem({{1.0}, {1.0}}, {}, {{0, 1}});
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      const std::vector<int> x{a, b};
      int dep_msgs = 0;
      for (const auto& m : constraint_violations(dep, x)) dep_msgs += m.find("parent") != std::string::npos;
      CHECK((dep_msgs == 0) == (a <= b));
      int con_msgs = 0;
      for (const auto& m : constraint_violations(con, x)) con_msgs += m.find("conflicting") != std::string::npos;
      CHECK((con_msgs == 0) == (a + b <= 1));
    }
  }
}

TEST_CASE("constraint_violations reports each kind") {
  const SelectionProblem pb = make_problem({{6, 1}, {6, 1}}, {{1, 3}}, {{1, 3}});
  CHECK(constraint_violations(pb, {1, 0, 1, 0}).empty());
  CHECK(constraint_violations(pb, {1, 1, 1, 0}).size() == 2);   // two picks, 1 without 3
  CHECK(constraint_violations(pb, {0, 1, 1, 0}).size() == 1);   // parent missing
  CHECK(constraint_violations(pb, {0, 1, 0, 1}).size() == 1);   // conflict
  CHECK(constraint_violations(pb, {0, 0, 1, 0}).size() == 1);   // no pick
}

TEST_CASE("originals only: the originals are chosen") {
  const SelectionProblem pb = make_problem({{6.0}, {4.0}, {6.0}});
  const Selection s = solve(pb);
  CHECK(s.chosen == std::map<int, int>{{0, 0}, {1, 1}, {2, 2}});
  CHECK(s.objective == 16.0);
  const Selection g = greedy_baseline(pb, {});
  CHECK(g.chosen == s.chosen);
}

TEST_CASE("parent blocked by a forced conflict: the child falls back") {
  // A = {a0, a1}, B = {b0, b1}, C = {c0}. a1 needs b1; b1 conflicts with c0.
  const SelectionProblem pb = make_problem({{6, 0.5}, {6, 0.5}, {6}}, {{1, 3}}, {{3, 4}});
  const Selection s = solve(pb);
  CHECK(s.chosen == std::map<int, int>{{0, 0}, {1, 2}, {2, 4}});
  CHECK(s.objective == 18.0);
  CHECK(oracles::brute_force(pb)->chosen == s.chosen);
}

TEST_CASE("equal objectives resolve to the smallest chosen-id vector") {
  const SelectionProblem pb = make_problem({{6, 1, 1}, {6, 2, 2}});
  const Selection s = solve(pb);
  CHECK(s.chosen == std::map<int, int>{{0, 1}, {1, 4}});
}

TEST_CASE("greedy is valid and never beats the exact solver") {
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    CAPTURE(seed);
    const SelectionProblem pb = oracles::random_problem(seed);
    std::map<int, double> volume;
    for (const auto& [part, ids] : pb.per_part) volume[part] = 1.0 + part % 3;
    const Selection g = greedy_baseline(pb, volume);
    CHECK(g.method == "greedy");
    CHECK(oracles::valid(pb, indicator_of(pb, g.chosen)));
    CHECK(g.objective >= solve(pb).objective - 1e-12);
  }
}

TEST_CASE("exact objective never exceeds the all-originals assignment; solve is deterministic") {
  for (std::uint32_t seed = 500; seed < 540; ++seed) {
    const SelectionProblem pb = oracles::random_problem(seed);
    std::map<int, int> originals;
    for (std::size_t k = 0; k < pb.per_part.size(); ++k) originals[pb.per_part[k].first] = pb.originals[k];
    const Selection a = solve(pb);
    CHECK(a.objective <= objective(pb, originals));
    CHECK(solve(pb).chosen == a.chosen);
  }
}

TEST_CASE("every valid selection with an anchored pick has a level-0 root") {
  for (std::uint32_t seed = 1; seed <= 100; ++seed) {
    const SelectionProblem pb = oracles::random_problem(seed);
    const Selection s = solve(pb);
    bool anchored = false;
    bool root = false;
    for (const auto& [part, v] : s.chosen) {
      bool has_parent = false;
      for (auto [c, p] : pb.dependency_pairs) has_parent = has_parent || c == v;
      (has_parent ? anchored : root) = true;
    }
    if (anchored) CHECK(root);
  }
}

TEST_CASE("extract_order examples") {
  SUBCASE("all originals: no edges") {
    Selection s;
    s.chosen = {{0, 0}, {1, 1}, {2, 2}};
    const std::vector<Candidate> pool{cand(0, 0, 0, {}), cand(1, 1, 0, {}), cand(2, 2, 0, {})};
    extract_order(s, pool);
    CHECK(s.order_edges.empty());
    CHECK(s.order.size() == 3);
  }
  SUBCASE("chain 1 -> 2 -> 3") {
    const std::vector<Candidate> pool{cand(0, 1, 0, {}), cand(1, 2, 1, {0}), cand(2, 3, 2, {1})};
    Selection s;
    s.chosen = {{1, 0}, {2, 1}, {3, 2}};
    extract_order(s, pool);
    CHECK(s.order == std::vector<int>{1, 2, 3});
    CHECK(s.order_edges == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
  }
  SUBCASE("two parts anchored on part 1") {
    const std::vector<Candidate> pool{cand(0, 1, 0, {}), cand(1, 2, 1, {0}), cand(2, 3, 1, {0})};
    Selection s;
    s.chosen = {{1, 0}, {2, 1}, {3, 2}};
    extract_order(s, pool);
    CHECK(s.order.front() == 1);
    CHECK(s.order_edges == std::vector<std::pair<int, int>>{{1, 2}, {1, 3}});
  }
}

TEST_CASE("dependency and conflict pairs match a raw rescan on every fixture") {
  std::size_t total_conflicts = 0;
  for (const auto& f : fixtures::all()) {
    CAPTURE(f.name);
    const SegmentedModel& m = f.model;
    const EngineConfig config;
    const auto prims = fit_all(m, config);
    const auto rels = detect_relations(prims, config, m.bbox_diagonal);
    const CandidateSet set = generate_candidates(prims, rels, config, m.bbox_diagonal);
    const double tol = config.relation_distance_tol * m.bbox_diagonal;
    const SelectionProblem pb = build_problem(set, rels, tol);

    std::set<std::pair<int, int>> deps;
    for (const Candidate& c : set.candidates) {
      for (int p : c.parents) deps.insert({c.id, p});
    }
    CHECK(std::set<std::pair<int, int>>(pb.dependency_pairs.begin(), pb.dependency_pairs.end()) ==
          deps);
    CHECK(pb.dependency_pairs.size() == deps.size());

    std::set<std::pair<int, int>> conflicts;
    for (const Relation& r : rels) {
      for (const Candidate& a : set.candidates) {
        if (a.part_id != r.i) continue;
        for (const Candidate& b : set.candidates) {
          if (b.part_id != r.j) continue;
          if (!oracle_holds(r, a.geometry.box, b.geometry.box, tol)) {
            conflicts.insert({std::min(a.id, b.id), std::max(a.id, b.id)});
          }
        }
      }
    }
    CHECK(std::set<std::pair<int, int>>(pb.conflict_pairs.begin(), pb.conflict_pairs.end()) ==
          conflicts);
    CHECK(pb.conflict_pairs.size() == conflicts.size());
    total_conflicts += conflicts.size();
    MESSAGE(f.name << ": " << set.candidates.size() << " candidates, " << deps.size()
                   << " dependency pairs, " << conflicts.size() << " conflict pairs");
  }
  CHECK(total_conflicts > 0);
}

TEST_CASE("fig6 fixture: two parts anchored, two siblings tied in the order") {
  const Plan p = make_plan(fixtures::fig6(), EngineConfig{});
  CHECK(p.selection.optimal);
  CHECK(p.selection.order.size() == 4);
  std::set<int> roots;
  for (const auto& [part, id] : p.selection.chosen) {
    if (p.candidates.candidates[id].level == 0) roots.insert(part);
  }
  CHECK(!roots.empty());
  for (auto [a, b] : p.selection.order_edges) {
    const auto& order = p.selection.order;
    CHECK(std::find(order.begin(), order.end(), a) < std::find(order.begin(), order.end(), b));
  }
}

TEST_CASE("chain4: greedy is strictly worse than the exact solver") {
  PlanOptions greedy;
  greedy.greedy = true;
  const Plan exact = make_plan(fixtures::chain4(), EngineConfig{});
  const Plan g = make_plan(fixtures::chain4(), EngineConfig{}, greedy);
  CHECK(g.selection.objective > exact.selection.objective + 1e-6);
}

TEST_CASE("a zero time budget still returns a valid selection flagged not optimal") {
  const SelectionProblem pb = oracles::random_problem(42);
  SolveOptions opt;
  opt.time_limit_seconds = 1e-9;
  const Selection s = solve(pb, opt);
  CHECK(oracles::valid(pb, indicator_of(pb, s.chosen)));
}
