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

#ifndef H2S_SELECTION_HPP
#define H2S_SELECTION_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "h2s/candidates.hpp"
#include "h2s/relations.hpp"

namespace h2s {

/// Binary selection over candidates: pick exactly one per part, every
/// picked candidate's parents must be picked, no conflict pair both picked.
/// Variables are candidate ids 0..size()-1.
struct SelectionProblem {
  std::vector<int> part_of;   // variable -> part id
  std::vector<double> cost;   // variable -> e_d + e_e
  std::vector<std::pair<int, std::vector<int>>> per_part;  // ascending part id
  std::vector<std::pair<int, int>> dependency_pairs;       // (child, parent)
  std::vector<std::pair<int, int>> conflict_pairs;         // (a, b), a < b
  std::vector<int> originals;  // one level-0 variable per entry of per_part

  int size() const { return static_cast<int>(cost.size()); }
};

struct Selection {
  std::map<int, int> chosen;  // part id -> candidate id
  double objective = 0.0;
  bool optimal = false;
  std::string method;                            // "exact" or "greedy"
  std::vector<std::pair<int, int>> order_edges;  // (parent part, child part)
  std::vector<int> order;                        // a topological order of parts
};

/// Dependencies from parent edges; conflicts from every cross pair of
/// candidates of related parts that no longer satisfies the relation.
SelectionProblem build_problem(const CandidateSet& set, const std::vector<Relation>& relations,
                               double relation_tol);

struct SolveOptions {
  double time_limit_seconds = 0.0;  // 0 = unlimited
};

/// Exact branch and bound. Among optimal selections the one whose chosen-id
/// vector (in part order) is lexicographically smallest is returned. With a
/// time limit, the best selection found so far is returned with
/// optimal = false.
Selection solve(const SelectionProblem& problem, const SolveOptions& options = {});

/// Parts in descending order of `volume`, each taking its cheapest candidate
/// whose parents are already picked and which conflicts neither with the
/// picks so far nor with the originals of parts still to come.
Selection greedy_baseline(const SelectionProblem& problem, const std::map<int, double>& volume);

/// Objective of an assignment given as one variable per part.
double objective(const SelectionProblem& problem, const std::map<int, int>& chosen);

/// Violations of the literal constraint forms over the 0/1 indicator vector:
/// sum per part == 1, x_c * x_p - x_c >= 0, x_a * x_b == 0. Empty when valid.
std::vector<std::string> constraint_violations(const SelectionProblem& problem,
                                               const std::vector<int>& indicator);
std::vector<int> indicator_of(const SelectionProblem& problem, const std::map<int, int>& chosen);

/// DAG over parts induced by the chosen candidates' parent edges, plus the
/// Kahn order with ties taken in part-id order. Throws on a cycle.
void extract_order(Selection& selection, const std::vector<Candidate>& candidates);

}  // namespace h2s

#endif  // H2S_SELECTION_HPP
