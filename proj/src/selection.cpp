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

#include "h2s/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "h2s/errors.hpp"

namespace h2s {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tie_tol(double z) { return 1e-9 * std::max(1.0, std::abs(z)); }

class BranchAndBound {
 public:
  BranchAndBound(const SelectionProblem& pb, const SolveOptions& opt) : pb_(pb), opt_(opt) {
    const int n = pb.size();
    slot_.assign(n, -1);
    for (std::size_t k = 0; k < pb.per_part.size(); ++k) {
      for (int v : pb.per_part[k].second) slot_[v] = static_cast<int>(k);
      ascending_.push_back(pb.per_part[k].second);
      std::sort(ascending_.back().begin(), ascending_.back().end());
    }
    parents_.resize(n);
    children_.resize(n);
    conflicts_.resize(n);
    for (auto [c, p] : pb.dependency_pairs) {
      parents_[c].push_back(p);
      children_[p].push_back(c);
    }
    for (auto [a, b] : pb.conflict_pairs) {
      conflicts_[a].push_back(b);
      conflicts_[b].push_back(a);
    }
    start_ = std::chrono::steady_clock::now();
  }

  Selection run() {
    State root;
    root.alive.assign(pb_.size(), 1);
    root.choice.assign(pb_.per_part.size(), -1);
    bool root_ok = propagate(root, {});

    // Incumbent: the all-originals assignment when it is valid.
    if (pb_.originals.size() == pb_.per_part.size()) {
      std::map<int, int> orig;
      for (std::size_t k = 0; k < pb_.per_part.size(); ++k) {
        orig[pb_.per_part[k].first] = pb_.originals[k];
      }
      if (constraint_violations(pb_, indicator_of(pb_, orig)).empty()) {
        best_ = objective(pb_, orig);
        best_choice_.assign(pb_.originals.begin(), pb_.originals.end());
      }
    }

    if (root_ok) minimize(root);
    const bool proven = !timed_out_;
    if (proven && root_ok && std::isfinite(best_)) {
      // Second pass: first assignment in lexicographic order within the tie band.
      target_ = best_ + tie_tol(best_);
      std::vector<int> lex;
      if (lexmin(root, lex)) best_choice_ = lex;
    }
    if (!std::isfinite(best_)) {
      throw Error("selection problem has no valid assignment");
    }

    Selection s;
    for (std::size_t k = 0; k < pb_.per_part.size(); ++k) {
      s.chosen[pb_.per_part[k].first] = best_choice_[k];
    }
    s.objective = objective(pb_, s.chosen);
    s.optimal = proven;
    s.method = "exact";
    return s;
  }

 private:
  struct State {
    std::vector<char> alive;
    std::vector<int> choice;  // per slot
    double fixed = 0.0;
  };

  bool choose(State& s, int v, std::vector<int>& chosen_q) {
    if (!s.alive[v]) return false;
    const int k = slot_[v];
    if (s.choice[k] == v) return true;
    if (s.choice[k] != -1) return false;
    s.choice[k] = v;
    s.fixed += pb_.cost[v];
    chosen_q.push_back(v);
    return true;
  }

  bool kill(State& s, int v) {
    std::vector<int> stack{v};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      if (!s.alive[x]) continue;
      if (s.choice[slot_[x]] == x) return false;
      s.alive[x] = 0;
      for (int c : children_[x]) stack.push_back(c);
    }
    return true;
  }

  // Exactly-one, dependency and conflict propagation to a fixpoint.
  bool propagate(State& s, std::vector<int> chosen_q) {
    for (;;) {
      while (!chosen_q.empty()) {
        const int v = chosen_q.back();
        chosen_q.pop_back();
        for (int u : pb_.per_part[slot_[v]].second) {
          if (u != v && !kill(s, u)) return false;
        }
        for (int u : conflicts_[v]) {
          if (!kill(s, u)) return false;
        }
        for (int p : parents_[v]) {
          if (!choose(s, p, chosen_q)) return false;
        }
      }
      bool forced = false;
      for (std::size_t k = 0; k < pb_.per_part.size(); ++k) {
        if (s.choice[k] != -1) continue;
        int alive = 0;
        int last = -1;
        for (int u : pb_.per_part[k].second) {
          if (s.alive[u]) {
            ++alive;
            last = u;
          }
        }
        if (alive == 0) return false;
        if (alive == 1) {
          if (!choose(s, last, chosen_q)) return false;
          forced = true;
        }
      }
      if (!forced) return true;
    }
  }

  double bound(const State& s) const {
    double b = s.fixed;
    for (std::size_t k = 0; k < pb_.per_part.size(); ++k) {
      if (s.choice[k] != -1) continue;
      double m = kInf;
      for (int u : pb_.per_part[k].second) {
        if (s.alive[u]) m = std::min(m, pb_.cost[u]);
      }
      b += m;
    }
    return b;
  }

  bool out_of_time() {
    if (opt_.time_limit_seconds <= 0.0) return false;
    if (timed_out_) return true;
    // The clock is read on the first node and then every 256 nodes.
    if ((nodes_++ & 255) != 0) return false;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    timed_out_ = dt.count() > opt_.time_limit_seconds;
    return timed_out_;
  }

  void minimize(const State& s) {
    if (out_of_time()) return;
    int pick = -1;
    int fewest = std::numeric_limits<int>::max();
    for (std::size_t k = 0; k < pb_.per_part.size(); ++k) {
      if (s.choice[k] != -1) continue;
      int alive = 0;
      for (int u : pb_.per_part[k].second) alive += s.alive[u];
      if (alive < fewest) {
        fewest = alive;
        pick = static_cast<int>(k);
      }
    }
    if (pick < 0) {
      if (s.fixed < best_ - tie_tol(best_) || !std::isfinite(best_)) {
        best_ = s.fixed;
        best_choice_ = s.choice;
      }
      return;
    }
    std::vector<int> values;
    for (int u : pb_.per_part[pick].second) {
      if (s.alive[u]) values.push_back(u);
    }
    std::sort(values.begin(), values.end(), [&](int a, int b) {
      return pb_.cost[a] != pb_.cost[b] ? pb_.cost[a] < pb_.cost[b] : a < b;
    });
    for (int v : values) {
      State t = s;
      std::vector<int> q;
      if (!choose(t, v, q) || !propagate(t, std::move(q))) continue;
      if (std::isfinite(best_) && bound(t) >= best_ - tie_tol(best_)) continue;
      minimize(t);
    }
  }

  bool lexmin(const State& s, std::vector<int>& out) {
    int pick = -1;
    for (std::size_t k = 0; k < pb_.per_part.size(); ++k) {
      if (s.choice[k] == -1) {
        pick = static_cast<int>(k);
        break;
      }
    }
    if (pick < 0) {
      if (s.fixed > target_) return false;
      out = s.choice;
      return true;
    }
    for (int v : ascending_[pick]) {
      if (!s.alive[v]) continue;
      State t = s;
      std::vector<int> q;
      if (!choose(t, v, q) || !propagate(t, std::move(q))) continue;
      if (bound(t) > target_) continue;
      if (lexmin(t, out)) return true;
    }
    return false;
  }

  const SelectionProblem& pb_;
  SolveOptions opt_;
  std::vector<int> slot_;
  std::vector<std::vector<int>> ascending_;
  std::vector<std::vector<int>> parents_, children_, conflicts_;
  double best_ = kInf;
  std::vector<int> best_choice_;
  double target_ = kInf;
  bool timed_out_ = false;
  long long nodes_ = 0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SelectionProblem build_problem(const CandidateSet& set, const std::vector<Relation>& relations,
                               double relation_tol) {
  SelectionProblem pb;
  const int n = static_cast<int>(set.candidates.size());
  pb.part_of.resize(n);
  pb.cost.resize(n);
  for (int v = 0; v < n; ++v) {
    const Candidate& c = set.candidates[v];
    if (c.id != v) throw Error("candidate ids must equal positions");
    pb.part_of[v] = c.part_id;
    pb.cost[v] = c.cost();
    for (int p : c.parents) pb.dependency_pairs.push_back({v, p});
  }
  for (std::size_t part = 0; part < set.per_part.size(); ++part) {
    const auto& ids = set.per_part[part];
    if (ids.empty()) continue;
    pb.per_part.push_back({static_cast<int>(part), ids});
    int orig = -1;
    for (int id : ids) {
      if (set.candidates[id].level == 0) orig = id;
    }
    if (orig < 0) throw Error("part without its original candidate");
    pb.originals.push_back(orig);
  }
  for (const Relation& r : relations) {
    if (r.i >= static_cast<int>(set.per_part.size()) || r.j >= static_cast<int>(set.per_part.size())) {
      continue;
    }
    for (int a : set.per_part[r.i]) {
      for (int b : set.per_part[r.j]) {
        if (!relation_holds(r, set.candidates[a].geometry.box, set.candidates[b].geometry.box,
                            relation_tol)) {
          pb.conflict_pairs.push_back({std::min(a, b), std::max(a, b)});
        }
      }
    }
  }
  std::sort(pb.conflict_pairs.begin(), pb.conflict_pairs.end());
  pb.conflict_pairs.erase(std::unique(pb.conflict_pairs.begin(), pb.conflict_pairs.end()),
                          pb.conflict_pairs.end());
  return pb;
}

double objective(const SelectionProblem& problem, const std::map<int, int>& chosen) {
  double z = 0.0;
  for (const auto& [part, v] : chosen) z += problem.cost[v];
  return z;
}

std::vector<int> indicator_of(const SelectionProblem& problem, const std::map<int, int>& chosen) {
  std::vector<int> x(problem.size(), 0);
  for (const auto& [part, v] : chosen) x[v] = 1;
  return x;
}

std::vector<std::string> constraint_violations(const SelectionProblem& problem,
                                               const std::vector<int>& x) {
  std::vector<std::string> out;
  for (const auto& [part, ids] : problem.per_part) {
    int sum = 0;
    for (int v : ids) sum += x[v];
    if (sum != 1) out.push_back("part " + std::to_string(part) + " has " + std::to_string(sum) + " picks");
  }
  for (auto [c, p] : problem.dependency_pairs) {
    if (x[c] * x[p] - x[c] < 0) {
      out.push_back("candidate " + std::to_string(c) + " picked without parent " + std::to_string(p));
    }
  }
  for (auto [a, b] : problem.conflict_pairs) {
    if (x[a] * x[b] != 0) {
      out.push_back("conflicting candidates " + std::to_string(a) + " and " + std::to_string(b));
    }
  }
  return out;
}

Selection solve(const SelectionProblem& problem, const SolveOptions& options) {
  Selection s = BranchAndBound(problem, options).run();
  const auto bad = constraint_violations(problem, indicator_of(problem, s.chosen));
  if (!bad.empty()) throw Error("solver returned an invalid selection: " + bad.front());
  return s;
}

Selection greedy_baseline(const SelectionProblem& problem, const std::map<int, double>& volume) {
  std::vector<std::size_t> order(problem.per_part.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  auto vol = [&](std::size_t k) {
    auto it = volume.find(problem.per_part[k].first);
    return it == volume.end() ? 0.0 : it->second;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return vol(a) > vol(b); });

  std::set<std::pair<int, int>> conflicts(problem.conflict_pairs.begin(),
                                          problem.conflict_pairs.end());
  auto conflict = [&](int a, int b) {
    return conflicts.count({std::min(a, b), std::max(a, b)}) > 0;
  };
  std::vector<std::vector<int>> parents(problem.size());
  for (auto [c, p] : problem.dependency_pairs) parents[c].push_back(p);

  std::map<int, int> chosen;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const std::size_t k = order[idx];
    std::vector<int> values = problem.per_part[k].second;
    std::sort(values.begin(), values.end(), [&](int a, int b) {
      return problem.cost[a] != problem.cost[b] ? problem.cost[a] < problem.cost[b] : a < b;
    });
    int pick = -1;
    for (int v : values) {
      bool ok = true;
      for (int p : parents[v]) {
        auto it = chosen.find(problem.part_of[p]);
        ok = ok && it != chosen.end() && it->second == p;
      }
      for (const auto& [part, u] : chosen) ok = ok && !conflict(v, u);
      for (std::size_t later = idx + 1; later < order.size() && ok; ++later) {
        ok = !conflict(v, problem.originals[order[later]]);
      }
      if (ok) {
        pick = v;
        break;
      }
    }
    if (pick < 0) pick = problem.originals[k];
    chosen[problem.per_part[k].first] = pick;
  }

  Selection s;
  s.chosen = chosen;
  s.objective = objective(problem, chosen);
  s.optimal = false;
  s.method = "greedy";
  return s;
}

void extract_order(Selection& selection, const std::vector<Candidate>& candidates) {
  std::set<std::pair<int, int>> edges;
  for (const auto& [part, id] : selection.chosen) {
    for (int p : candidates[id].parents) edges.insert({candidates[p].part_id, part});
  }
  selection.order_edges.assign(edges.begin(), edges.end());
  std::map<int, int> indegree;
  for (const auto& [part, id] : selection.chosen) indegree[part] = 0;
  for (auto [a, b] : edges) ++indegree[b];
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (auto [part, d] : indegree) {
    if (d == 0) ready.push(part);
  }
  selection.order.clear();
  while (!ready.empty()) {
    const int part = ready.top();
    ready.pop();
    selection.order.push_back(part);
    for (auto [a, b] : edges) {
      if (a == part && --indegree[b] == 0) ready.push(b);
    }
  }
  if (selection.order.size() != selection.chosen.size()) {
    throw Error("cycle in the anchoring order");
  }
}

}  // namespace h2s
