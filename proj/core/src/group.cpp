#include "lg/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace lg {

namespace {

std::vector<int> full_ground(const IndexUniverse& u) {
  std::vector<int> g(u.size());
  std::iota(g.begin(), g.end(), 0);
  return g;
}

GroupElement transposition_on_indices(const IndexUniverse& u, int a, int b) {
  GroupElement e;
  e.index_map = full_ground(u);
  std::swap(e.index_map[a], e.index_map[b]);
  return e;
}

GroupElement from_vertex_map(const IndexUniverse& u, std::vector<int> vmap) {
  GroupElement e;
  e.index_map.resize(u.size());
  for (int id = 0; id < u.size(); ++id) {
    auto [a, b] = u.edge_endpoints(id);
    e.index_map[id] = u.edge_id(vmap[a], vmap[b]);
  }
  e.vertex_map = std::move(vmap);
  return e;
}

struct PairVertexHash {
  std::size_t operator()(const std::pair<LVertex, LVertex>& p) const {
    LVertexHash h;
    return h(p.first) * 1000003 + h(p.second);
  }
};

}  // namespace

SymmetryGroup SymmetryGroup::positions(const IndexUniverse& u, std::vector<int> ground,
                                       std::int64_t order_cap) {
  SymmetryGroup g;
  g.kind_ = Kind::Positions;
  g.universe_ = u;
  g.ground_ = ground.empty() ? full_ground(u) : std::move(ground);
  std::sort(g.ground_.begin(), g.ground_.end());
  if (factorial(static_cast<int>(g.ground_.size())) > order_cap)
    throw std::invalid_argument(
        "group order exceeds the exhaustive cap; use sampled mode");
  for (std::size_t i = 0; i + 1 < g.ground_.size(); ++i)
    g.generators_.push_back(transposition_on_indices(u, g.ground_[i], g.ground_[i + 1]));
  return g;
}

SymmetryGroup SymmetryGroup::graph_vertices(int vertices, std::int64_t order_cap) {
  SymmetryGroup g;
  g.kind_ = Kind::GraphVertices;
  g.universe_ = edge_slot_universe(vertices);
  g.ground_.resize(vertices);
  std::iota(g.ground_.begin(), g.ground_.end(), 0);
  if (factorial(vertices) > order_cap)
    throw std::invalid_argument(
        "group order exceeds the exhaustive cap; use sampled mode");
  for (int i = 0; i + 1 < vertices; ++i) {
    std::vector<int> vmap(vertices);
    std::iota(vmap.begin(), vmap.end(), 0);
    std::swap(vmap[i], vmap[i + 1]);
    g.generators_.push_back(from_vertex_map(g.universe_, std::move(vmap)));
  }
  return g;
}

SymmetryGroup SymmetryGroup::sampled_positions(const IndexUniverse& u,
                                               std::vector<int> ground,
                                               std::int64_t samples, std::uint64_t seed) {
  SymmetryGroup g = positions(u, std::move(ground),
                              std::numeric_limits<std::int64_t>::max());
  g.exhaustive_ = false;
  g.samples_ = samples;
  g.seed_ = seed;
  return g;
}

SymmetryGroup SymmetryGroup::sampled_graph_vertices(int vertices, std::int64_t samples,
                                                    std::uint64_t seed) {
  SymmetryGroup g =
      graph_vertices(vertices, std::numeric_limits<std::int64_t>::max());
  g.exhaustive_ = false;
  g.samples_ = samples;
  g.seed_ = seed;
  return g;
}

BigInt SymmetryGroup::order() const {
  return factorial(static_cast<int>(ground_.size()));
}

GroupElement SymmetryGroup::identity() const {
  GroupElement e;
  e.index_map = full_ground(universe_);
  if (kind_ == Kind::GraphVertices) {
    e.vertex_map = std::vector<int>(universe_.n);
    std::iota(e.vertex_map->begin(), e.vertex_map->end(), 0);
  }
  return e;
}

GroupElement SymmetryGroup::random_element(std::mt19937_64& rng) const {
  std::vector<int> perm = ground_;
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> d(0, i - 1);
    std::swap(perm[i - 1], perm[d(rng)]);
  }
  if (kind_ == Kind::GraphVertices) return from_vertex_map(universe_, std::move(perm));
  GroupElement e;
  e.index_map = full_ground(universe_);
  for (std::size_t i = 0; i < ground_.size(); ++i) e.index_map[ground_[i]] = perm[i];
  return e;
}

int act(const GroupElement& g, int index) {
  if (index < 0 || index >= static_cast<int>(g.index_map.size()))
    throw std::invalid_argument("act: index outside the permutation degree");
  return g.index_map[index];
}

LVertex act(const GroupElement& g, const LVertex& v) {
  LVertex out;
  out.queried.reserve(v.queried.size());
  for (int q : v.queried) out.queried.push_back(act(g, q));
  std::sort(out.queried.begin(), out.queried.end());
  if (v.annotation) {
    if (!g.vertex_map)
      throw std::invalid_argument("act: annotated vertex needs a graph-vertex action");
    std::vector<int> ann;
    ann.reserve(v.annotation->size());
    for (int a : *v.annotation) {
      if (a < 0 || a >= static_cast<int>(g.vertex_map->size()))
        throw std::invalid_argument("act: annotation outside the permutation degree");
      ann.push_back((*g.vertex_map)[a]);
    }
    std::sort(ann.begin(), ann.end());
    out.annotation = std::move(ann);
  }
  return out;
}

std::pair<LVertex, LVertex> act(const GroupElement& g, const LVertex& from,
                                const LVertex& to) {
  return {act(g, from), act(g, to)};
}

TransitionOrbit orbit(const LVertex& from, const LVertex& to, const SymmetryGroup& g) {
  if (!g.exhaustive())
    throw std::invalid_argument("orbit: sampled mode; use estimate_speciality");
  TransitionOrbit out;
  out.representative = {from, to};
  std::unordered_set<std::pair<LVertex, LVertex>, PairVertexHash> seen;
  std::deque<std::pair<LVertex, LVertex>> todo;
  seen.insert(out.representative);
  todo.push_back(out.representative);
  while (!todo.empty()) {
    auto cur = todo.front();
    todo.pop_front();
    out.members.push_back(cur);
    for (const GroupElement& gen : g.generators()) {
      auto img = act(gen, cur.first, cur.second);
      if (seen.insert(img).second) todo.push_back(img);
    }
  }
  return out;
}

VertexOrbit orbit(const LVertex& v, const SymmetryGroup& g) {
  if (!g.exhaustive())
    throw std::invalid_argument("orbit: sampled mode; use estimate_speciality");
  VertexOrbit out;
  out.representative = v;
  std::unordered_set<LVertex, LVertexHash> seen{v};
  std::deque<LVertex> todo{v};
  while (!todo.empty()) {
    LVertex cur = todo.front();
    todo.pop_front();
    out.members.push_back(cur);
    for (const GroupElement& gen : g.generators()) {
      LVertex img = act(gen, cur);
      if (seen.insert(img).second) todo.push_back(img);
    }
  }
  return out;
}

namespace {

SpecialityReport make_speciality(std::int64_t orbit_size, std::int64_t valid) {
  if (valid == 0)
    throw std::runtime_error("speciality undefined (empty valid set)");
  SpecialityReport r;
  r.orbit_size = orbit_size;
  r.valid_count = valid;
  r.speciality = Rational(orbit_size, valid);
  return r;
}

}  // namespace

SpecialityReport speciality(const GraphIndex& gi, int stage, const Transition& t,
                            const SymmetryGroup& g, const FlowAssignment& flow) {
  const LearningGraph& lg = gi.graph();
  TransitionOrbit orb = orbit(lg.from_vertex(stage, t), lg.to_vertex(stage, t), g);
  std::int64_t valid = 0;
  for (const auto& [from, to] : orb.members) {
    const Transition* member = gi.transition(stage, from, to);
    if (member && flow.positive(member->id)) ++valid;
  }
  return make_speciality(static_cast<std::int64_t>(orb.members.size()), valid);
}

SpecialityReport vertex_speciality(const GraphIndex& gi, int layer, int vertex_pos,
                                   const SymmetryGroup& g, const FlowAssignment& flow) {
  const LearningGraph& lg = gi.graph();
  VertexOrbit orb = orbit(lg.layers[layer][vertex_pos], g);
  std::int64_t valid = 0;
  for (const LVertex& v : orb.members) {
    int pos = gi.vertex_position(layer, v);
    if (pos >= 0 && vertex_in_flow(lg, layer, pos, flow) > 0) ++valid;
  }
  return make_speciality(static_cast<std::int64_t>(orb.members.size()), valid);
}

StageOrbits stage_orbits(const GraphIndex& gi, int stage, const SymmetryGroup& g) {
  const LearningGraph& lg = gi.graph();
  const auto& transitions = lg.stages[stage];
  StageOrbits out;
  out.orbit_of.assign(transitions.size(), -1);
  for (std::size_t pos = 0; pos < transitions.size(); ++pos) {
    if (out.orbit_of[pos] >= 0) continue;
    int orbit_id = static_cast<int>(out.sizes.size());
    TransitionOrbit orb = orbit(lg.from_vertex(stage, transitions[pos]),
                                lg.to_vertex(stage, transitions[pos]), g);
    for (const auto& [from, to] : orb.members) {
      const Transition* member = gi.transition(stage, from, to);
      if (!member) continue;
      std::size_t member_pos = member - transitions.data();
      out.orbit_of[member_pos] = orbit_id;
    }
    out.sizes.push_back(static_cast<std::int64_t>(orb.members.size()));
  }
  return out;
}

StageOrbits layer_orbits(const GraphIndex& gi, int layer, const SymmetryGroup& g) {
  const LearningGraph& lg = gi.graph();
  const auto& vertices = lg.layers[layer];
  StageOrbits out;
  out.orbit_of.assign(vertices.size(), -1);
  for (std::size_t pos = 0; pos < vertices.size(); ++pos) {
    if (out.orbit_of[pos] >= 0) continue;
    int orbit_id = static_cast<int>(out.sizes.size());
    VertexOrbit orb = orbit(vertices[pos], g);
    for (const LVertex& v : orb.members) {
      int member_pos = gi.vertex_position(layer, v);
      if (member_pos >= 0) out.orbit_of[member_pos] = orbit_id;
    }
    out.sizes.push_back(static_cast<std::int64_t>(orb.members.size()));
  }
  return out;
}

Rational max_speciality(const GraphIndex& gi, int stage, const SymmetryGroup& g,
                        const FlowAssignment& flow) {
  const auto& transitions = gi.graph().stages[stage];
  StageOrbits orbits = stage_orbits(gi, stage, g);
  std::vector<std::int64_t> valid(orbits.sizes.size(), 0);
  for (std::size_t pos = 0; pos < transitions.size(); ++pos)
    if (flow.positive(transitions[pos].id)) ++valid[orbits.orbit_of[pos]];
  Rational best = -1;
  for (std::size_t k = 0; k < orbits.sizes.size(); ++k)
    if (valid[k] > 0) best = std::max(best, Rational(orbits.sizes[k], valid[k]));
  if (best < 0)
    throw std::runtime_error("speciality undefined (empty valid set)");
  return best;
}

Rational max_vertex_speciality(const GraphIndex& gi, int layer, const SymmetryGroup& g,
                               const FlowAssignment& flow) {
  const LearningGraph& lg = gi.graph();
  StageOrbits orbits = layer_orbits(gi, layer, g);
  std::vector<std::int64_t> valid(orbits.sizes.size(), 0);
  for (std::size_t pos = 0; pos < lg.layers[layer].size(); ++pos)
    if (vertex_in_flow(lg, layer, static_cast<int>(pos), flow) > 0)
      ++valid[orbits.orbit_of[pos]];
  Rational best = -1;
  for (std::size_t k = 0; k < orbits.sizes.size(); ++k)
    if (valid[k] > 0) best = std::max(best, Rational(orbits.sizes[k], valid[k]));
  if (best < 0)
    throw std::runtime_error("speciality undefined (empty valid set)");
  return best;
}

EstimateReport estimate_speciality(const GraphIndex& gi, int stage, const Transition& t,
                                   const SymmetryGroup& g, const FlowAssignment& flow,
                                   double z) {
  if (g.exhaustive())
    throw std::invalid_argument("estimate_speciality: group is in exhaustive mode");
  const LearningGraph& lg = gi.graph();
  const LVertex& from = lg.from_vertex(stage, t);
  const LVertex& to = lg.to_vertex(stage, t);

  std::mt19937_64 rng(g.seed());
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < g.samples(); ++i) {
    GroupElement e = g.random_element(rng);
    auto [f, s] = act(e, from, to);
    const Transition* img = gi.transition(stage, f, s);
    if (img && flow.positive(img->id)) ++hits;
  }
  if (hits == 0)
    throw std::runtime_error("estimate diverged; increase samples");

  EstimateReport r;
  r.samples = g.samples();
  r.hits = hits;
  r.seed = g.seed();
  r.z = z;
  double n = static_cast<double>(g.samples());
  double p = static_cast<double>(hits) / n;
  double sigma = std::sqrt(p * (1 - p) / n);
  r.estimate = 1.0 / p;
  double hi_p = std::min(1.0, p + z * sigma);
  double lo_p = p - z * sigma;
  r.lower = 1.0 / hi_p;
  r.upper = lo_p > 0 ? 1.0 / lo_p : std::numeric_limits<double>::infinity();
  return r;
}

namespace {

SymmetryCheck symmetric_check(const std::vector<std::int64_t>& orbit_sizes,
                              const std::vector<std::vector<std::pair<int, Rational>>>&
                                  positive_by_instance,  // (orbit id, flow)
                              const std::string& what) {
  SymmetryCheck out;
  // (a) equal flow on valid members within every orbit, per instance; and
  // (b) the multiset of (orbit size, flow, valid count) identical across
  // instances.
  using Signature = std::map<std::tuple<std::int64_t, Rational, std::int64_t>, int>;
  Signature first;
  for (std::size_t inst = 0; inst < positive_by_instance.size(); ++inst) {
    std::map<int, std::pair<Rational, std::int64_t>> orbit_flow;  // id -> (flow, count)
    for (const auto& [orbit_id, p] : positive_by_instance[inst]) {
      auto it = orbit_flow.find(orbit_id);
      if (it == orbit_flow.end()) {
        orbit_flow.emplace(orbit_id, std::make_pair(p, std::int64_t{1}));
      } else {
        if (it->second.first != p) {
          out.symmetric = false;
          out.issues.push_back("instance " + std::to_string(inst) + ": unequal flows on " +
                               what + " orbit " + std::to_string(orbit_id));
        }
        ++it->second.second;
      }
    }
    Signature sig;
    for (const auto& [orbit_id, fc] : orbit_flow)
      ++sig[{orbit_sizes[orbit_id], fc.first, fc.second}];
    if (inst == 0) {
      first = sig;
    } else if (sig != first) {
      out.symmetric = false;
      out.issues.push_back("instance " + std::to_string(inst) +
                           ": flow/speciality signature differs from instance 0");
    }
  }
  return out;
}

}  // namespace

SymmetryCheck is_symmetric_stage(const GraphIndex& gi, int stage, const SymmetryGroup& g,
                                 const std::vector<FlowAssignment>& flows) {
  const auto& transitions = gi.graph().stages[stage];
  StageOrbits orbits = stage_orbits(gi, stage, g);
  std::vector<std::vector<std::pair<int, Rational>>> positives(flows.size());
  for (std::size_t inst = 0; inst < flows.size(); ++inst)
    for (std::size_t pos = 0; pos < transitions.size(); ++pos) {
      Rational p = flows[inst].at(transitions[pos].id);
      if (p > 0) positives[inst].push_back({orbits.orbit_of[pos], p});
    }
  return symmetric_check(orbits.sizes, positives, "transition");
}

SymmetryCheck is_symmetric_vertex_layer(const GraphIndex& gi, int layer,
                                        const SymmetryGroup& g,
                                        const std::vector<FlowAssignment>& flows) {
  const LearningGraph& lg = gi.graph();
  StageOrbits orbits = layer_orbits(gi, layer, g);
  std::vector<std::vector<std::pair<int, Rational>>> positives(flows.size());
  for (std::size_t inst = 0; inst < flows.size(); ++inst)
    for (std::size_t pos = 0; pos < lg.layers[layer].size(); ++pos) {
      Rational p = vertex_in_flow(lg, layer, static_cast<int>(pos), flows[inst]);
      if (p > 0) positives[inst].push_back({orbits.orbit_of[pos], p});
    }
  return symmetric_check(orbits.sizes, positives, "vertex");
}

}  // namespace lg
