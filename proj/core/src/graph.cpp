#include "lg/graph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace lg {

namespace {

void hash_combine(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

bool is_sorted_unique(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] >= v[i]) return false;
  return true;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::size_t LVertexHash::operator()(const LVertex& v) const {
  std::size_t h = 0x51ed270b;
  for (int x : v.queried) hash_combine(h, static_cast<std::size_t>(x) + 1);
  if (v.annotation) {
    hash_combine(h, 0xa11);
    for (int x : *v.annotation) hash_combine(h, static_cast<std::size_t>(x) + 1);
  }
  return h;
}

std::int64_t LearningGraph::max_transition_id() const {
  std::int64_t m = -1;
  for (const auto& stage : stages)
    for (const auto& t : stage) m = std::max(m, t.id);
  for (const auto& a : attachments)
    if (a.graph) m = std::max(m, a.graph->max_transition_id());
  return m;
}

int transition_length(const LVertex& from, const LVertex& to) {
  int extra = 0;
  for (int x : to.queried)
    if (!std::binary_search(from.queried.begin(), from.queried.end(), x)) ++extra;
  return extra;
}

int transition_length(const LearningGraph& lg, int stage, const Transition& t) {
  return transition_length(lg.from_vertex(stage, t), lg.to_vertex(stage, t));
}

namespace {

void validate_into(const LearningGraph& lg, ValidationReport& report,
                   const std::string& prefix) {
  if (lg.layers.empty() || lg.layers.front().size() != 1 ||
      !lg.layers.front().front().queried.empty()) {
    report.violations.push_back(prefix + "source layer is not { empty set }");
  }
  if (lg.stages.size() + 1 != lg.layers.size()) {
    report.violations.push_back(prefix + "stage count does not match layer count");
    return;
  }

  std::unordered_set<std::int64_t> ids;
  std::vector<int> ground = lg.ground;
  if (ground.empty())
    for (int i = 0; i < lg.universe.size(); ++i) ground.push_back(i);

  for (std::size_t layer = 0; layer < lg.layers.size(); ++layer) {
    std::unordered_set<std::size_t> seen;
    std::unordered_map<LVertex, int, LVertexHash> canon;
    for (std::size_t pos = 0; pos < lg.layers[layer].size(); ++pos) {
      const LVertex& v = lg.layers[layer][pos];
      if (!is_sorted_unique(v.queried))
        report.violations.push_back(prefix + "vertex at layer " + std::to_string(layer) +
                                    " has an unsorted queried set");
      for (int q : v.queried) {
        if (q < 0 || q >= lg.universe.size() ||
            !std::binary_search(ground.begin(), ground.end(), q))
          report.violations.push_back(prefix + "queried index " + std::to_string(q) +
                                      " outside the universe ground");
        if (v.annotation && lg.universe.kind == IndexUniverse::Kind::EdgeSlots) {
          auto [a, b] = lg.universe.edge_endpoints(q);
          const auto& ann = *v.annotation;
          if (!std::binary_search(ann.begin(), ann.end(), a) ||
              !std::binary_search(ann.begin(), ann.end(), b))
            report.violations.push_back(prefix + "edge slot " + lg.universe.index_name(q) +
                                        " has an endpoint outside the annotation");
        }
      }
      if (canon.count(v))
        report.violations.push_back(prefix + "duplicate vertex in layer " +
                                    std::to_string(layer));
      canon.emplace(v, static_cast<int>(pos));
    }
  }

  for (std::size_t s = 0; s < lg.stages.size(); ++s) {
    std::vector<char> has_in(lg.layers[s + 1].size(), 0);
    bool all_zero_length = !lg.stages[s].empty();
    for (const Transition& t : lg.stages[s]) {
      if (t.from < 0 || t.from >= static_cast<int>(lg.layers[s].size()) || t.to < 0 ||
          t.to >= static_cast<int>(lg.layers[s + 1].size())) {
        report.violations.push_back(prefix + "transition in stage " + std::to_string(s + 1) +
                                    " references a missing vertex");
        continue;
      }
      if (!ids.insert(t.id).second)
        report.violations.push_back(prefix + "duplicate transition id " +
                                    std::to_string(t.id));
      has_in[t.to] = 1;
      const LVertex& from = lg.layers[s][t.from];
      const LVertex& to = lg.layers[s + 1][t.to];
      bool queried_grows =
          subset_of(from.queried, to.queried) && from.queried.size() < to.queried.size();
      bool annotation_grows =
          from.queried == to.queried && from.annotation != to.annotation &&
          (!from.annotation ||
           (to.annotation && subset_of(*from.annotation, *to.annotation)));
      // A vertex whose queried set is still empty is the one permitted
      // zero-length degeneracy without annotation growth.
      bool empty_degenerate = from.queried == to.queried && to.queried.empty() &&
                              from.annotation == to.annotation;
      if (!queried_grows && !annotation_grows && !empty_degenerate)
        report.violations.push_back(prefix + "stage " + std::to_string(s + 1) +
                                    " transition target is not a strict superset");
      if (transition_length(from, to) > 0) all_zero_length = false;
    }
    if (all_zero_length)
      report.flags.push_back(prefix + "stage " + std::to_string(s + 1) +
                             " is degenerate: every transition has length 0");
    for (std::size_t pos = 0; pos < has_in.size(); ++pos)
      if (!has_in[pos])
        report.violations.push_back(prefix + "vertex " + std::to_string(pos) +
                                    " in layer " + std::to_string(s + 1) +
                                    " is unreachable (distance != layer)");
  }

  for (const Attachment& a : lg.attachments) {
    if (!a.graph) {
      report.violations.push_back(prefix + "attachment without a graph");
      continue;
    }
    if (a.vertex < 0 || a.vertex >= static_cast<int>(lg.final_layer().size())) {
      report.violations.push_back(prefix + "attachment at a missing final vertex");
      continue;
    }
    const LVertex& host = lg.final_layer()[a.vertex];
    for (int q : a.graph->ground)
      if (std::binary_search(host.queried.begin(), host.queried.end(), q))
        report.violations.push_back(prefix + "attachment ground overlaps its vertex");
    validate_into(*a.graph, report,
                  prefix + "attachment@" + std::to_string(a.vertex) + ": ");
  }
}

}  // namespace

ValidationReport validate_structure(const LearningGraph& lg) {
  ValidationReport report;
  validate_into(lg, report, "");
  return report;
}

LearningGraph with_offset_ids(const LearningGraph& lg, std::int64_t offset) {
  LearningGraph out = lg;
  for (auto& stage : out.stages)
    for (auto& t : stage) t.id += offset;
  for (auto& a : out.attachments)
    if (a.graph)
      a.graph = std::make_shared<const LearningGraph>(with_offset_ids(*a.graph, offset));
  return out;
}

struct GraphIndex::Impl {
  std::vector<std::unordered_map<LVertex, int, LVertexHash>> vertex_at;
  struct PairHash {
    std::size_t operator()(const std::pair<int, int>& p) const {
      return std::hash<std::int64_t>()((static_cast<std::int64_t>(p.first) << 32) ^
                                       static_cast<unsigned>(p.second));
    }
  };
  std::vector<std::unordered_map<std::pair<int, int>, const Transition*, PairHash>> arcs;
};

GraphIndex::GraphIndex(const LearningGraph& lg) : lg_(&lg), impl_(std::make_shared<Impl>()) {
  impl_->vertex_at.resize(lg.layers.size());
  for (std::size_t layer = 0; layer < lg.layers.size(); ++layer)
    for (std::size_t pos = 0; pos < lg.layers[layer].size(); ++pos)
      impl_->vertex_at[layer].emplace(lg.layers[layer][pos], static_cast<int>(pos));
  impl_->arcs.resize(lg.stages.size());
  for (std::size_t s = 0; s < lg.stages.size(); ++s)
    for (const Transition& t : lg.stages[s])
      impl_->arcs[s].emplace(std::make_pair(t.from, t.to), &t);
}

int GraphIndex::vertex_position(int layer, const LVertex& v) const {
  if (layer < 0 || layer >= static_cast<int>(impl_->vertex_at.size())) return -1;
  auto it = impl_->vertex_at[layer].find(v);
  return it == impl_->vertex_at[layer].end() ? -1 : it->second;
}

const Transition* GraphIndex::transition(int stage, const LVertex& from,
                                         const LVertex& to) const {
  if (stage < 0 || stage >= static_cast<int>(impl_->arcs.size())) return nullptr;
  int f = vertex_position(stage, from);
  int t = vertex_position(stage + 1, to);
  if (f < 0 || t < 0) return nullptr;
  auto it = impl_->arcs[stage].find({f, t});
  return it == impl_->arcs[stage].end() ? nullptr : it->second;
}

}  // namespace lg
