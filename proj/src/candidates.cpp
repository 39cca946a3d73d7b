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

#include "h2s/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "h2s/errors.hpp"

namespace h2s {

namespace {

struct FeatureDef {
  Feature feature;
  AnchorRatio ratio;
  bool mirrored;
};

constexpr FeatureDef kFeatures[] = {
    {Feature::LoEdge, AnchorRatio::Align, false},
    {Feature::HiEdge, AnchorRatio::Align, true},
    {Feature::HalfLine, AnchorRatio::Half, false},
    {Feature::ThirdLine, AnchorRatio::Third, false},
    {Feature::TwoThirdLine, AnchorRatio::Third, true},
    {Feature::QuarterLine, AnchorRatio::Quarter, false},
    {Feature::ThreeQuarterLine, AnchorRatio::Quarter, true},
    {Feature::ExtendReflection, AnchorRatio::ExtendHalf, false},
    {Feature::ExtendReflection, AnchorRatio::ExtendHalf, true},
    {Feature::ExtendReflection, AnchorRatio::ExtendOne, false},
    {Feature::ExtendReflection, AnchorRatio::ExtendOne, true},
    {Feature::ExtendReflection, AnchorRatio::ExtendTwo, false},
    {Feature::ExtendReflection, AnchorRatio::ExtendTwo, true},
};

SideSpec unguided() { return SideSpec{}; }

Box3 box_from_intervals(const std::array<Interval, 3>& iv) {
  Box3 b;
  for (int k = 0; k < kAxes; ++k) set_axis_interval(b, k, iv[k]);
  return b;
}

// Quantized geometry key: coordinates that agree to 1e-9 of the diagonal
// compare equal, so features reached by different formulas dedupe.
using BoxKey = std::array<long long, 6>;

BoxKey box_key(const Box3& b, double diag) {
  const double q = 1e-9 * diag;
  BoxKey k;
  for (int a = 0; a < kAxes; ++a) {
    k[a] = std::llround(b.min()[a] / q);
    k[3 + a] = std::llround(b.max()[a] / q);
  }
  return k;
}

std::vector<double> anchor_key(const Candidate& c) {
  std::vector<double> k;
  auto push_spec = [&](const SideSpec& s) {
    k.insert(k.end(), {double(s.parent), double(s.feature), double(s.ratio), double(s.mirrored),
                       double(s.host.normal_axis), double(s.host.side)});
  };
  for (const AxisAnchor& a : c.anchors) {
    k.push_back(a.pin);
    push_spec(a.lo);
    push_spec(a.hi);
  }
  return k;
}

bool canonical_less(const Candidate& x, const Candidate& y, double diag) {
  if (x.part_id != y.part_id) return x.part_id < y.part_id;
  const BoxKey kx = box_key(x.geometry.box, diag);
  const BoxKey ky = box_key(y.geometry.box, diag);
  if (kx != ky) return kx < ky;
  if (x.parents != y.parents) return x.parents < y.parents;
  return anchor_key(x) < anchor_key(y);
}

class Generator {
 public:
  Generator(const std::vector<Primitive>& prims, const std::vector<Relation>& rels,
            const EngineConfig& config, double diag)
      : prims_(prims), rels_(rels), config_(config), diag_(diag) {
    ctx_.originals = &prims_;
    ctx_.bbox_diagonal = diag;
    ctx_.config = config;
    for (const Primitive& p : prims_) {
      if (!p.custom()) ctx_.model_max_face_area = std::max(ctx_.model_max_face_area, max_face_area(p.box));
    }
    if (ctx_.model_max_face_area <= 0.0) ctx_.model_max_face_area = 1.0;
    for (std::size_t r = 0; r < rels_.size(); ++r) {
      rel_index_[{rels_[r].i, rels_[r].j}].push_back(static_cast<int>(r));
    }
  }

  CandidateSet run() {
    CandidateSet out;
    out.per_part.assign(prims_.size(), {});
    out.model_max_face_area = ctx_.model_max_face_area;

    original_.assign(prims_.size(), -1);
    for (const Primitive& p : prims_) {
      if (p.custom()) continue;
      Candidate c;
      c.part_id = p.part_id;
      c.geometry = p;
      for (int k = 0; k < kAxes; ++k) c.anchors[k].axis = k;
      c.level = 0;
      c.e_d = cost_e_d(c, ctx_);
      c.e_e = 0.0;
      c.id = static_cast<int>(pool_.size());
      original_[p.part_id] = c.id;
      pool_.push_back(std::move(c));
    }

    find_pairs();
    neighbours_.assign(prims_.size(), {});
    for (auto [i, j] : pairs_) {
      neighbours_[i].push_back(j);
      neighbours_[j].push_back(i);
    }

    // Anchors on the neighbours' originals.
    std::vector<Candidate> level1;
    for (auto [i, j] : pairs_) {
      for (auto [p, c] : {std::pair{i, j}, std::pair{j, i}}) {
        anchor_on(pool_[original_[p]], c, level1);
      }
    }
    const std::size_t first_level1 = pool_.size();
    commit(dedupe_and_cap(std::move(level1), config_.max_candidates_per_part - 1));
    const std::size_t end_level1 = pool_.size();

    // Counterparts restoring relations, then anchors on level-1 candidates.
    std::vector<Candidate> level2;
    for (std::size_t id = first_level1; id < end_level1; ++id) restore_for(pool_[id], level2);
    for (std::size_t id = first_level1; id < end_level1; ++id) {
      const Candidate parent = pool_[id];
      for (int c : neighbours_[parent.part_id]) anchor_on(parent, c, level2);
    }
    std::vector<int> used(prims_.size(), 0);
    for (const Candidate& c : pool_) ++used[c.part_id];
    std::map<int, int> room;
    for (std::size_t part = 0; part < prims_.size(); ++part) {
      room[static_cast<int>(part)] = config_.max_candidates_per_part - used[part];
    }
    commit(dedupe_and_cap(std::move(level2), room));

    out.candidates = pool_;
    for (const Candidate& c : pool_) out.per_part[c.part_id].push_back(c.id);
    out.pairs = pairs_;
    return out;
  }

 private:
  void find_pairs() {
    const double tol = config_.relation_distance_tol * diag_;
    std::set<std::pair<int, int>> pairs;
    for (const Relation& r : rels_) pairs.insert({r.i, r.j});
    for (std::size_t i = 0; i < prims_.size(); ++i) {
      if (prims_[i].custom()) continue;
      for (std::size_t j = i + 1; j < prims_.size(); ++j) {
        if (prims_[j].custom()) continue;
        if (box_gap(prims_[i].box, prims_[j].box) <= tol) {
          pairs.insert({static_cast<int>(i), static_cast<int>(j)});
        }
      }
    }
    pairs_.assign(pairs.begin(), pairs.end());
  }

  bool degenerate_face(const Box3& box, int normal) const {
    return face_area(box, normal) <= 1e-12 * diag_ * diag_;
  }

  static int nearest_side(const Box3& parent, int normal, const Box3& child) {
    const double c = child.center()[normal];
    return std::abs(parent.max()[normal] - c) < std::abs(parent.min()[normal] - c) ? 1 : 0;
  }

  // Options for one child axis anchored on `parent` through `host`; the
  // unguided option comes first.
  std::vector<AxisOption> axis_options(const Primitive& child, const Candidate& parent, int axis,
                                       const HostFace& host) const {
    std::vector<AxisOption> opts;
    AxisOption keep;
    keep.anchor.axis = axis;
    keep.interval = axis_interval(child.box, axis);
    opts.push_back(keep);
    auto more = generate_axis_anchors(axis_interval(child.box, axis),
                                      axis_interval(parent.geometry.box, axis), axis, parent.id,
                                      host, config_);
    opts.insert(opts.end(), more.begin(), more.end());
    return opts;
  }

  // Candidates for part `child_part` whose base plane lies on a face of
  // `parent`; the third axis may come from the same parent or from any
  // original neighbour of the child.
  void anchor_on(const Candidate& parent, int child_part, std::vector<Candidate>& out) {
    const Primitive& child = prims_[child_part];
    if (child.custom() || parent.part_id == child_part) return;
    const Box3& pbox = parent.geometry.box;
    const int flat = child.degenerate_axis();
    for (int n = 0; n < kAxes; ++n) {
      if (flat >= 0 && n != flat) continue;
      if (degenerate_face(pbox, n)) continue;
      const HostFace host{parent.id, n, nearest_side(pbox, n, child.box)};
      const auto [a1, a2] = other_axes(n);
      const auto opts1 = axis_options(child, parent, a1, host);
      const auto opts2 = axis_options(child, parent, a2, host);

      std::vector<AxisOption> third;
      AxisOption keep;
      keep.anchor.axis = n;
      keep.interval = axis_interval(child.box, n);
      third.push_back(keep);
      if (flat < 0) {
        std::vector<const Candidate*> sources{&parent};
        for (int q : neighbours_[child_part]) {
          if (original_[q] != parent.id) sources.push_back(&pool_[original_[q]]);
        }
        for (const Candidate* src : sources) {
          const HostFace h = choose_host(src->geometry.box, src->id, n, child.box);
          if (degenerate_face(src->geometry.box, h.normal_axis)) continue;
          auto more = generate_axis_anchors(axis_interval(child.box, n),
                                            axis_interval(src->geometry.box, n), n, src->id, h,
                                            config_);
          third.insert(third.end(), more.begin(), more.end());
        }
      }

      for (std::size_t x = 0; x < opts1.size(); ++x) {
        for (std::size_t y = 0; y < opts2.size(); ++y) {
          if (x == 0 && y == 0) continue;  // the base plane must be guided
          for (const AxisOption& t : third) {
            std::array<Interval, 3> iv;
            std::array<AxisAnchor, 3> anchors;
            iv[a1] = opts1[x].interval;
            anchors[a1] = opts1[x].anchor;
            iv[a2] = opts2[y].interval;
            anchors[a2] = opts2[y].anchor;
            iv[n] = t.interval;
            anchors[n] = t.anchor;
            emit(child, box_from_intervals(iv), anchors, {}, out);
          }
        }
      }
    }
  }

  // Counterparts for the other part of each relation that `c` breaks or
  // might break, translated so the pair is related as before.
  void restore_for(const Candidate& c, std::vector<Candidate>& out) {
    for (std::size_t r = 0; r < rels_.size(); ++r) {
      const Relation& rel = rels_[r];
      if (rel.i != c.part_id && rel.j != c.part_id) continue;
      const bool c_is_i = rel.i == c.part_id;
      const int m = c_is_i ? rel.j : rel.i;
      bool anchored_on_m = false;
      for (int p : c.parents) anchored_on_m |= pool_[p].part_id == m;
      if (anchored_on_m) continue;

      const Primitive& om = prims_[m];
      const Box3& cbox = c.geometry.box;
      Box3 box = om.box;
      std::array<AxisAnchor, 3> anchors;
      for (int k = 0; k < kAxes; ++k) anchors[k].axis = k;
      bool ok = true;
      auto translate = [&](int axis, double shift, int pin, Feature f, AnchorRatio ratio,
                           bool mirrored) {
        if (axis == om.degenerate_axis()) {
          ok = ok && shift == 0.0;
          return;
        }
        Interval iv = axis_interval(box, axis);
        const Interval orig = iv;
        iv.lo += shift;
        iv.hi += shift;
        if (!within_prune(orig, iv, config_.prune_fraction)) ok = false;
        set_axis_interval(box, axis, iv);
        AxisAnchor& a = anchors[axis];
        a.pin = pin;
        a.lo.parent = c.id;
        a.lo.feature = f;
        a.lo.ratio = ratio;
        a.lo.mirrored = mirrored;
        a.lo.host = choose_host(cbox, c.id, axis, om.box);
      };
      switch (rel.kind) {
        case RelationKind::Coplanar: {
          const int side_c = c_is_i ? rel.side_i : rel.side_j;
          const int side_m = c_is_i ? rel.side_j : rel.side_i;
          const double shift = face_coordinate(cbox, rel.axis, side_c) -
                               face_coordinate(om.box, rel.axis, side_m);
          translate(rel.axis, shift, side_m, side_c == 0 ? Feature::LoEdge : Feature::HiEdge,
                    AnchorRatio::Align, side_c == 1);
          break;
        }
        case RelationKind::Coaxial:
          for (int t : other_axes(rel.axis)) {
            translate(t, cbox.center()[t] - om.box.center()[t], 2, Feature::HalfLine,
                      AnchorRatio::Half, false);
          }
          break;
        case RelationKind::CommonBisectorPlane:
          translate(rel.axis, cbox.center()[rel.axis] - om.box.center()[rel.axis], 2,
                    Feature::HalfLine, AnchorRatio::Half, false);
          break;
      }
      if (!ok) continue;
      emit(om, box, anchors, {static_cast<int>(r)}, out);
    }
  }

  void emit(const Primitive& child, const Box3& box, const std::array<AxisAnchor, 3>& anchors,
            std::vector<int> restored, std::vector<Candidate>& out) const {
    Candidate c;
    c.part_id = child.part_id;
    c.geometry = child.with_box(box);
    c.anchors = anchors;
    std::set<int> parents;
    for (const AxisAnchor& a : anchors) {
      if (a.lo.guided()) parents.insert(a.lo.parent);
      if (a.hi.guided()) parents.insert(a.hi.parent);
    }
    if (parents.empty()) return;
    c.parents.assign(parents.begin(), parents.end());
    int level = 0;
    for (int p : c.parents) level = std::max(level, pool_[p].level + 1);
    c.level = level;
    c.restored_relations = std::move(restored);
    if (!selectable_with_ancestors(c)) return;
    c.e_d = cost_e_d(c, ctx_);
    c.e_e = cost_e_e(c, pool_, ctx_);
    if (!std::isfinite(c.e_e)) return;
    out.push_back(std::move(c));
  }

  // A candidate whose ancestors include another candidate of its own part, or
  // two candidates of one other part, or which breaks a relation with an
  // ancestor, can never be part of a valid selection.
  bool selectable_with_ancestors(const Candidate& c) const {
    std::set<int> closure;
    std::vector<int> stack = c.parents;
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      if (!closure.insert(id).second) continue;
      for (int p : pool_[id].parents) stack.push_back(p);
    }
    std::map<int, int> by_part;
    for (int id : closure) {
      const int part = pool_[id].part_id;
      if (part == c.part_id) return false;
      auto [it, fresh] = by_part.emplace(part, id);
      if (!fresh && it->second != id) return false;
    }
    const double tol = config_.relation_distance_tol * diag_;
    for (int id : closure) {
      const Candidate& a = pool_[id];
      const int i = std::min(a.part_id, c.part_id);
      const int j = std::max(a.part_id, c.part_id);
      auto it = rel_index_.find({i, j});
      if (it == rel_index_.end()) continue;
      for (int r : it->second) {
        const Box3& bi = a.part_id == i ? a.geometry.box : c.geometry.box;
        const Box3& bj = a.part_id == i ? c.geometry.box : a.geometry.box;
        if (!relation_holds(rels_[r], bi, bj, tol)) return false;
      }
    }
    return true;
  }

  std::vector<Candidate> dedupe_and_cap(std::vector<Candidate> raw, int cap) const {
    std::map<int, int> room;
    for (std::size_t part = 0; part < prims_.size(); ++part) room[static_cast<int>(part)] = cap;
    return dedupe_and_cap(std::move(raw), room);
  }

  std::vector<Candidate> dedupe_and_cap(std::vector<Candidate> raw, const std::map<int, int>& room) const {
    using Key = std::tuple<int, BoxKey, std::vector<int>>;
    std::map<Key, Candidate> best;
    for (Candidate& c : raw) {
      Key key{c.part_id, box_key(c.geometry.box, diag_), c.parents};
      auto it = best.find(key);
      if (it == best.end()) {
        best.emplace(std::move(key), std::move(c));
        continue;
      }
      // Same geometry and parents: keep the easier recipe, remember every
      // relation either copy restores.
      std::set<int> restored(c.restored_relations.begin(), c.restored_relations.end());
      restored.insert(it->second.restored_relations.begin(), it->second.restored_relations.end());
      if (c.e_e < it->second.e_e ||
          (c.e_e == it->second.e_e && anchor_key(c) < anchor_key(it->second))) {
        it->second = std::move(c);
      }
      it->second.restored_relations.assign(restored.begin(), restored.end());
    }
    std::map<int, std::vector<Candidate>> by_part;
    for (auto& [key, c] : best) by_part[c.part_id].push_back(std::move(c));
    std::vector<Candidate> kept;
    for (auto& [part, list] : by_part) {
      const int limit = std::max(0, room.at(part));
      if (static_cast<int>(list.size()) > limit) {
        std::stable_sort(list.begin(), list.end(), [&](const Candidate& x, const Candidate& y) {
          if (x.cost() != y.cost()) return x.cost() < y.cost();
          return canonical_less(x, y, diag_);
        });
        list.resize(limit);
      }
      for (Candidate& c : list) kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end(),
              [&](const Candidate& x, const Candidate& y) { return canonical_less(x, y, diag_); });
    return kept;
  }

  void commit(std::vector<Candidate> list) {
    for (Candidate& c : list) {
      c.id = static_cast<int>(pool_.size());
      pool_.push_back(std::move(c));
    }
  }

  const std::vector<Primitive>& prims_;
  const std::vector<Relation>& rels_;
  EngineConfig config_;
  double diag_;
  CostContext ctx_;
  std::map<std::pair<int, int>, std::vector<int>> rel_index_;
  std::vector<Candidate> pool_;
  std::vector<int> original_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<int>> neighbours_;
};

}  // namespace

std::string_view to_string(Feature f) {
  switch (f) {
    case Feature::LoEdge: return "lo_edge";
    case Feature::HiEdge: return "hi_edge";
    case Feature::HalfLine: return "half_line";
    case Feature::ThirdLine: return "third_line";
    case Feature::TwoThirdLine: return "two_third_line";
    case Feature::QuarterLine: return "quarter_line";
    case Feature::ThreeQuarterLine: return "three_quarter_line";
    case Feature::ExtendReflection: return "extend_reflection";
  }
  return "?";
}

Feature feature_from_string(std::string_view s) {
  for (Feature f : {Feature::LoEdge, Feature::HiEdge, Feature::HalfLine, Feature::ThirdLine,
                    Feature::TwoThirdLine, Feature::QuarterLine, Feature::ThreeQuarterLine,
                    Feature::ExtendReflection}) {
    if (to_string(f) == s) return f;
  }
  throw FormatError("unknown feature '" + std::string(s) + "'", 0, 0);
}

double feature_position(Interval p, Feature feature, AnchorRatio ratio, bool mirrored) {
  const double len = p.length();
  switch (feature) {
    case Feature::LoEdge: return p.lo;
    case Feature::HiEdge: return p.hi;
    case Feature::HalfLine: return p.lo + len / 2.0;
    case Feature::ThirdLine: return p.lo + len / 3.0;
    case Feature::TwoThirdLine: return p.lo + 2.0 * len / 3.0;
    case Feature::QuarterLine: return p.lo + len / 4.0;
    case Feature::ThreeQuarterLine: return p.lo + 3.0 * len / 4.0;
    case Feature::ExtendReflection: {
      const double factor = ratio_u(ratio) - 1.0;
      return mirrored ? p.lo - factor * len : p.hi + factor * len;
    }
  }
  return p.lo;
}

bool within_prune(Interval original, Interval adjusted, double prune_fraction) {
  const double len0 = original.length();
  if (len0 <= 0.0) return original == adjusted;
  return std::abs(adjusted.length() - len0) / len0 <= prune_fraction &&
         std::abs(adjusted.mid() - original.mid()) / len0 <= prune_fraction;
}

std::vector<AxisOption> generate_axis_anchors(Interval child, Interval parent, int axis,
                                              int parent_id, const HostFace& host,
                                              const EngineConfig& config) {
  std::vector<AxisOption> out;
  if (child.length() <= 0.0 || parent.length() <= 0.0) return out;
  struct End {
    SideSpec anchor;
    double pos;
  };
  std::vector<End> ends;
  for (const FeatureDef& f : kFeatures) {
    if (!config.ratio_enabled(f.ratio)) continue;
    SideSpec s;
    s.parent = parent_id;
    s.feature = f.feature;
    s.ratio = f.ratio;
    s.mirrored = f.mirrored;
    s.host = host;
    ends.push_back({s, feature_position(parent, f.feature, f.ratio, f.mirrored)});
  }
  std::vector<End> lo_ends{{unguided(), child.lo}};
  std::vector<End> hi_ends{{unguided(), child.hi}};
  lo_ends.insert(lo_ends.end(), ends.begin(), ends.end());
  hi_ends.insert(hi_ends.end(), ends.begin(), ends.end());
  for (const End& lo : lo_ends) {
    for (const End& hi : hi_ends) {
      if (!lo.anchor.guided() && !hi.anchor.guided()) continue;
      const Interval iv{lo.pos, hi.pos};
      if (!(iv.hi > iv.lo)) continue;
      if (!within_prune(child, iv, config.prune_fraction)) continue;
      AxisOption o;
      o.anchor.axis = axis;
      o.anchor.lo = lo.anchor;
      o.anchor.hi = hi.anchor;
      o.interval = iv;
      out.push_back(o);
    }
  }
  return out;
}

double cost_e_d(const Candidate& c, const CostContext& ctx) {
  const Primitive& orig = ctx.original(c.part_id);
  const int flat = orig.degenerate_axis();
  double sum = 0.0;
  for (int k = 0; k < kAxes; ++k) {
    if (k == flat) continue;
    const AxisAnchor& a = c.anchors[k];
    if (!a.guided()) {
      sum += ctx.config.unguided_axis_penalty;
      continue;
    }
    const Interval o = axis_interval(orig.box, k);
    const Interval n = axis_interval(c.geometry.box, k);
    const double len0 = o.length();
    if (len0 <= 0.0) {
      if (o == n) continue;
      throw ValidationError("guided change on a zero-length axis", c.part_id);
    }
    sum += std::abs(n.length() - len0) / len0 + std::abs(n.mid() - o.mid()) / len0;
  }
  return sum;
}

double cost_e_e(const Candidate& c, const std::vector<Candidate>& pool, const CostContext& ctx) {
  double sum = 0.0;
  const double min_area = 1e-12 * ctx.bbox_diagonal * ctx.bbox_diagonal;
  auto add = [&](const SideSpec& s) {
    if (!s.guided()) return;
    const double area = face_area(pool[s.parent].geometry.box, s.host.normal_axis);
    if (area <= min_area) {
      sum = std::numeric_limits<double>::infinity();
      return;
    }
    sum += guide_count(s.ratio) * (ctx.model_max_face_area / area);
  };
  for (const AxisAnchor& a : c.anchors) {
    add(a.lo);
    if (!a.rigid()) add(a.hi);
  }
  return ctx.config.difficulty_weight * sum;
}

HostFace choose_host(const Box3& parent_box, int parent_id, int axis, const Box3& child_box) {
  HostFace best{parent_id, -1, 0};
  double best_area = -1.0;
  for (int n : other_axes(axis)) {
    const double area = face_area(parent_box, n);
    if (area > best_area) {
      best_area = area;
      const double c = child_box.center()[n];
      best.normal_axis = n;
      best.side = std::abs(parent_box.max()[n] - c) < std::abs(parent_box.min()[n] - c) ? 1 : 0;
    }
  }
  return best;
}

FaceQuad host_quad(const Candidate& parent, const HostFace& host, int axis) {
  const Box3& b = parent.geometry.box;
  const double plane = host.side == 2 ? b.center()[host.normal_axis]
                                      : face_coordinate(b, host.normal_axis, host.side);
  return make_face_quad(b, host.normal_axis, plane, axis);
}

CandidateSet generate_candidates(const std::vector<Primitive>& primitives,
                                 const std::vector<Relation>& relations, const EngineConfig& config,
                                 double bbox_diagonal) {
  for (std::size_t k = 0; k < primitives.size(); ++k) {
    if (primitives[k].part_id != static_cast<int>(k)) {
      throw ValidationError("primitives must be indexed by dense part id");
    }
  }
  return Generator(primitives, relations, config, bbox_diagonal).run();
}

std::vector<int> ancestors(const std::vector<Candidate>& pool, int id) {
  std::set<int> seen;
  std::vector<int> stack = pool[id].parents;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    for (int p : pool[x].parents) stack.push_back(p);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace h2s
