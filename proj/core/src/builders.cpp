#include "lg/builders.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "lg/analysis.hpp"

namespace lg {

namespace {

std::vector<std::vector<int>> combinations(const std::vector<int>& pool, int t) {
  std::vector<std::vector<int>> out;
  if (t < 0 || t > static_cast<int>(pool.size())) return out;
  std::vector<int> idx(t);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> pick(t);
    for (int i = 0; i < t; ++i) pick[i] = pool[idx[i]];
    out.push_back(std::move(pick));
    int i = t - 1;
    while (i >= 0 && idx[i] == static_cast<int>(pool.size()) - t + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<int> sorted_union(std::vector<int> base, int extra) {
  base.insert(std::upper_bound(base.begin(), base.end(), extra), extra);
  return base;
}

std::vector<int> clique_edges(const IndexUniverse& u, const std::vector<int>& vertices) {
  std::vector<int> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      edges.push_back(u.edge_id(vertices[i], vertices[j]));
  std::sort(edges.begin(), edges.end());
  return edges;
}

void check_vertex_budget(const BigInt& total, const BuildLimits& limits) {
  if (total > limits.max_vertices)
    throw std::invalid_argument("build exceeds the L-vertex cap");
}

Rational rat_pow(const Rational& base, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

int ceil_pow_root(int base, int num, int den) {
  // Smallest t >= 1 with t^den >= base^num, i.e. ceil(base^(num/den)).
  BigInt target = 1;
  for (int i = 0; i < num; ++i) target *= base;
  for (int t = 1;; ++t) {
    BigInt p = 1;
    for (int i = 0; i < den; ++i) p *= t;
    if (p >= target) return t;
  }
}

}  // namespace

int default_r(int n, int k) { return ceil_pow_root(n, k, k + 1); }
int default_sub_r(int r, int k) { return ceil_pow_root(r, k, k + 1); }

LearningGraph kdist_structure(const IndexUniverse& u, std::vector<int> ground, int k,
                              int r, const BuildLimits& limits) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (r < k) throw std::invalid_argument("r must be at least k");
  std::sort(ground.begin(), ground.end());
  ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
  if (r > static_cast<int>(ground.size()))
    throw std::invalid_argument("r exceeds the ground-set size");

  int big_n = static_cast<int>(ground.size());
  BigInt total = 1;
  for (int j = 1; j <= k + 1; ++j) total += binomial(big_n, r - k + j - 1);
  check_vertex_budget(total, limits);

  LearningGraph lg;
  lg.universe = u;
  lg.ground = ground;
  lg.layers.push_back({LVertex{}});
  for (int j = 1; j <= k + 1; ++j) {
    std::vector<LVertex> layer;
    for (auto& pick : combinations(ground, r - k + j - 1))
      layer.push_back(LVertex{std::move(pick), std::nullopt});
    lg.layers.push_back(std::move(layer));
  }

  std::int64_t next_id = 0;
  std::vector<Transition> stage1;
  for (int pos = 0; pos < static_cast<int>(lg.layers[1].size()); ++pos)
    stage1.push_back({0, pos, next_id++});
  lg.stages.push_back(std::move(stage1));

  for (int s = 1; s <= k; ++s) {
    std::map<std::vector<int>, int> where;
    for (int pos = 0; pos < static_cast<int>(lg.layers[s + 1].size()); ++pos)
      where[lg.layers[s + 1][pos].queried] = pos;
    std::vector<Transition> stage;
    for (int pos = 0; pos < static_cast<int>(lg.layers[s].size()); ++pos) {
      const auto& have = lg.layers[s][pos].queried;
      for (int g : ground) {
        if (std::binary_search(have.begin(), have.end(), g)) continue;
        stage.push_back({pos, where.at(sorted_union(have, g)), next_id++});
      }
    }
    lg.stages.push_back(std::move(stage));
  }
  return lg;
}

LearningGraph kdist_structure(int n, int k, int r, const BuildLimits& limits) {
  std::vector<int> ground(n);
  std::iota(ground.begin(), ground.end(), 0);
  return kdist_structure(positions_universe(n), std::move(ground), k, r, limits);
}

FlowAssignment kdist_flow(const LearningGraph& lg, const std::vector<int>& marked) {
  int k = lg.stage_count() - 1;
  if (static_cast<int>(marked.size()) != k)
    throw std::invalid_argument("marked-element count must match the stage count");
  int r = static_cast<int>(lg.layers[1][0].queried.size()) + k;
  for (int a : marked)
    if (!std::binary_search(lg.ground.begin(), lg.ground.end(), a))
      throw std::invalid_argument("marked element outside the ground set");
  std::set<int> marked_set(marked.begin(), marked.end());
  if (static_cast<int>(marked_set.size()) != k)
    throw std::invalid_argument("marked elements must be distinct");

  std::vector<int> rest;
  for (int g : lg.ground)
    if (!marked_set.count(g)) rest.push_back(g);
  if (static_cast<int>(rest.size()) < r - k)
    throw std::invalid_argument("not enough non-marked elements for stage 1");

  GraphIndex gi(lg);
  Rational q = Rational(1) / Rational(binomial(static_cast<int>(rest.size()), r - k));
  FlowAssignment flow;
  LVertex source;
  for (auto& start : combinations(rest, r - k)) {
    LVertex cur{start, std::nullopt};
    const Transition* t = gi.transition(0, source, cur);
    flow.flows[t->id] += q;
    for (int s = 1; s <= k; ++s) {
      LVertex next{sorted_union(cur.queried, marked[s - 1]), std::nullopt};
      t = gi.transition(s, cur, next);
      flow.flows[t->id] += q;
      cur = std::move(next);
    }
  }
  return flow;
}

BuildResult build_kdistinctness(int n, int k, int r, const ProblemInstance& x,
                                const BuildLimits& limits) {
  if (x.kind != ProblemInstance::Kind::Distinctness || x.n != n)
    throw std::invalid_argument("instance does not match the problem sizes");
  if (r > n) throw std::invalid_argument("r exceeds n");
  auto cert = find_certificate(x, k);
  if (!cert) throw std::invalid_argument("instance has no k equal values");

  BuildResult out;
  out.graph = kdist_structure(n, k, r, limits);
  out.flow = kdist_flow(out.graph, cert->indices);
  out.flow.instance_label = x.label();
  if (r == k) out.notes.push_back("stage 1 queries nothing (r = k)");
  return out;
}

LearningGraph kclique_structure(int n, int k, int r, const BuildLimits& limits) {
  if (k < 2) throw std::invalid_argument("clique needs k >= 2");
  if (r < k || r > n) throw std::invalid_argument("need k <= r <= n");
  IndexUniverse u = edge_slot_universe(n);

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  BigInt total = 1;
  for (int j = 1; j <= k; ++j) total += binomial(n, r - k + j);
  check_vertex_budget(total, limits);

  LearningGraph lg;
  lg.universe = u;
  lg.ground.resize(u.size());
  std::iota(lg.ground.begin(), lg.ground.end(), 0);
  lg.layers.push_back({LVertex{{}, std::vector<int>{}}});
  for (int j = 1; j <= k; ++j) {
    std::vector<LVertex> layer;
    for (auto& pick : combinations(all, r - k + j))
      layer.push_back(LVertex{clique_edges(u, pick), pick});
    lg.layers.push_back(std::move(layer));
  }

  std::int64_t next_id = 0;
  std::vector<Transition> stage1;
  for (int pos = 0; pos < static_cast<int>(lg.layers[1].size()); ++pos)
    stage1.push_back({0, pos, next_id++});
  lg.stages.push_back(std::move(stage1));

  for (int s = 1; s < k; ++s) {
    std::map<std::vector<int>, int> where;
    for (int pos = 0; pos < static_cast<int>(lg.layers[s + 1].size()); ++pos)
      where[*lg.layers[s + 1][pos].annotation] = pos;
    std::vector<Transition> stage;
    for (int pos = 0; pos < static_cast<int>(lg.layers[s].size()); ++pos) {
      const auto& have = *lg.layers[s][pos].annotation;
      for (int b = 0; b < n; ++b) {
        if (std::binary_search(have.begin(), have.end(), b)) continue;
        stage.push_back({pos, where.at(sorted_union(have, b)), next_id++});
      }
    }
    lg.stages.push_back(std::move(stage));
  }
  return lg;
}

FlowAssignment kclique_flow(const LearningGraph& lg,
                            const std::vector<int>& clique_vertices) {
  int k = lg.stage_count();
  int n = lg.universe.n;
  if (static_cast<int>(clique_vertices.size()) != k)
    throw std::invalid_argument("clique certificate must have k vertices");
  int r = static_cast<int>(lg.final_layer()[0].annotation->size());

  std::set<int> marked(clique_vertices.begin(), clique_vertices.end());
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (!marked.count(v)) rest.push_back(v);
  if (static_cast<int>(rest.size()) < r - k + 1)
    throw std::invalid_argument("not enough non-clique vertices for stage 1");

  GraphIndex gi(lg);
  Rational q =
      Rational(1) / Rational(binomial(static_cast<int>(rest.size()), r - k + 1));
  FlowAssignment flow;
  LVertex source{{}, std::vector<int>{}};
  for (auto& start : combinations(rest, r - k + 1)) {
    LVertex cur{clique_edges(lg.universe, start), start};
    const Transition* t = gi.transition(0, source, cur);
    flow.flows[t->id] += q;
    for (int s = 1; s < k; ++s) {
      std::vector<int> grown = sorted_union(*cur.annotation, clique_vertices[s - 1]);
      LVertex next{clique_edges(lg.universe, grown), grown};
      t = gi.transition(s, cur, next);
      flow.flows[t->id] += q;
      cur = std::move(next);
    }
  }
  return flow;
}

BuildResult build_kclique(int n, int k, int r, const ProblemInstance& x, int r_sub,
                          const BuildLimits& limits) {
  if (x.kind != ProblemInstance::Kind::Graph || x.n != n)
    throw std::invalid_argument("instance does not match the problem sizes");
  if (r >= n) throw std::invalid_argument("need r < n");
  auto cert = find_certificate(x, clique_pattern(k));
  if (!cert) throw std::invalid_argument("instance contains no k-clique");

  // Marked vertices a_1..a_k; the last one is handled by the subroutine.
  SubgraphPattern pattern = clique_pattern(k);
  std::vector<int> a;
  for (int v : pattern.vertex_order()) a.push_back(cert->embedding[v]);
  int apex = a.back();

  BuildResult out;
  LearningGraph host = kclique_structure(n, k, r, limits);
  FlowAssignment host_flow = kclique_flow(host, a);

  if (r_sub == 0) r_sub = default_sub_r(r, k - 1);
  r_sub = std::clamp(r_sub, k - 1, r);

  std::vector<SubroutineSpec> subs;
  for (int pos = 0; pos < static_cast<int>(host.final_layer().size()); ++pos) {
    const auto& set = *host.final_layer()[pos].annotation;
    if (std::binary_search(set.begin(), set.end(), apex)) continue;
    bool has_all = true;
    for (int i = 0; i + 1 < k; ++i)
      if (!std::binary_search(set.begin(), set.end(), a[i])) has_all = false;
    if (!has_all) continue;

    std::vector<int> sub_ground, sub_marked;
    for (int v : set) sub_ground.push_back(host.universe.edge_id(apex, v));
    std::sort(sub_ground.begin(), sub_ground.end());
    for (int i = 0; i + 1 < k; ++i)
      sub_marked.push_back(host.universe.edge_id(apex, a[i]));
    std::sort(sub_marked.begin(), sub_marked.end());

    SubroutineSpec spec;
    spec.vertex = pos;
    auto sub = std::make_shared<LearningGraph>(
        kdist_structure(host.universe, sub_ground, k - 1, r_sub, limits));
    spec.flow = kdist_flow(*sub, sub_marked);
    spec.graph = std::move(sub);
    subs.push_back(std::move(spec));
  }

  auto [composite, flow] = append_subroutine(host, host_flow, subs);
  out.graph = std::move(composite);
  out.flow = std::move(flow);
  out.flow.instance_label = x.label();
  if (r == k) out.notes.push_back("stage 1 queries a single vertex (r = k)");
  return out;
}

LearningGraph subgraph_structure(int n, int k, int r, int m_sub,
                                 const BuildLimits& limits) {
  if (k < 1 || m_sub < 0) throw std::invalid_argument("bad subgraph sizes");
  if (r < k || r > n) throw std::invalid_argument("need k <= r <= n");
  IndexUniverse u = edge_slot_universe(n);

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  BigInt total = 1;
  for (int j = 1; j <= k; ++j) {
    int sz = r - k + j;
    if (sz * (sz - 1) / 2 > 40)
      throw std::invalid_argument("build exceeds the L-vertex cap");
    BigInt layer = binomial(n, sz) * (BigInt(1) << (sz * (sz - 1) / 2));
    total += layer * (j == k ? m_sub + 1 : 1);
  }
  check_vertex_budget(total, limits);

  LearningGraph lg;
  lg.universe = u;
  lg.ground.resize(u.size());
  std::iota(lg.ground.begin(), lg.ground.end(), 0);
  lg.layers.push_back({LVertex{{}, std::vector<int>{}}});
  for (int j = 1; j <= k; ++j) {
    std::vector<LVertex> layer;
    for (auto& pick : combinations(all, r - k + j)) {
      std::vector<int> edges = clique_edges(u, pick);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
        std::vector<int> queried;
        for (std::size_t e = 0; e < edges.size(); ++e)
          if (mask >> e & 1) queried.push_back(edges[e]);
        layer.push_back(LVertex{std::move(queried), pick});
      }
    }
    lg.layers.push_back(std::move(layer));
  }
  // Substage layers: each substage adds one edge, so a vertex needs at least
  // i queried edges to be reachable i substages in.
  for (int i = 1; i <= m_sub; ++i) {
    std::vector<LVertex> layer;
    for (const LVertex& v : lg.layers[k])
      if (static_cast<int>(v.queried.size()) >= i) layer.push_back(v);
    lg.layers.push_back(std::move(layer));
  }

  std::int64_t next_id = 0;
  std::vector<Transition> stage1;
  for (int pos = 0; pos < static_cast<int>(lg.layers[1].size()); ++pos)
    stage1.push_back({0, pos, next_id++});
  lg.stages.push_back(std::move(stage1));

  auto layer_index = [&](int layer) {
    std::unordered_map<LVertex, int, LVertexHash> where;
    for (int pos = 0; pos < static_cast<int>(lg.layers[layer].size()); ++pos)
      where[lg.layers[layer][pos]] = pos;
    return where;
  };

  for (int s = 1; s < k; ++s) {
    auto where = layer_index(s + 1);
    std::vector<Transition> stage;
    for (int pos = 0; pos < static_cast<int>(lg.layers[s].size()); ++pos) {
      const LVertex& v = lg.layers[s][pos];
      const auto& set = *v.annotation;
      for (int b = 0; b < n; ++b) {
        if (std::binary_search(set.begin(), set.end(), b)) continue;
        std::vector<int> fresh;
        for (int w : set) fresh.push_back(u.edge_id(b, w));
        std::vector<int> grown = sorted_union(set, b);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << fresh.size());
             ++mask) {
          std::vector<int> queried = v.queried;
          for (std::size_t e = 0; e < fresh.size(); ++e)
            if (mask >> e & 1) queried.push_back(fresh[e]);
          std::sort(queried.begin(), queried.end());
          stage.push_back(
              {pos, where.at(LVertex{std::move(queried), grown}), next_id++});
        }
      }
    }
    lg.stages.push_back(std::move(stage));
  }

  for (int i = 0; i < m_sub; ++i) {
    auto where = layer_index(k + i + 1);
    std::vector<Transition> stage;
    for (int pos = 0; pos < static_cast<int>(lg.layers[k + i].size()); ++pos) {
      const LVertex& v = lg.layers[k + i][pos];
      for (int e : clique_edges(u, *v.annotation)) {
        if (std::binary_search(v.queried.begin(), v.queried.end(), e)) continue;
        stage.push_back(
            {pos, where.at(LVertex{sorted_union(v.queried, e), *v.annotation}),
             next_id++});
      }
    }
    lg.stages.push_back(std::move(stage));
  }
  return lg;
}

BuildResult build_subgraph(int n, const SubgraphPattern& h, int r, const Rational& s,
                           const ProblemInstance& x, int r_sub,
                           const BuildLimits& limits) {
  if (h.k < 3) throw std::invalid_argument("pattern needs at least 3 vertices");
  if (s <= 0 || s >= 1) throw std::invalid_argument("s must lie strictly in (0,1)");
  if (x.kind != ProblemInstance::Kind::Graph || x.n != n)
    throw std::invalid_argument("instance does not match the problem sizes");
  int k = h.k;
  if (r >= n) throw std::invalid_argument("need r < n");
  auto cert = find_certificate(x, h);
  if (!cert) throw std::invalid_argument("instance contains no copy of the pattern");

  std::vector<int> a;
  for (int v : h.vertex_order()) a.push_back(cert->embedding[v]);
  int apex = a.back();
  IndexUniverse u = edge_slot_universe(n);

  std::vector<int> m_edges;  // residual certificate edges, by slot id
  for (auto [p, q] : h.residual_edges)
    m_edges.push_back(u.edge_id(cert->embedding[p], cert->embedding[q]));
  std::sort(m_edges.begin(), m_edges.end());
  int m = static_cast<int>(m_edges.size());

  BuildResult out;
  out.graph = subgraph_structure(n, k, r, m, limits);
  GraphIndex gi(out.graph);

  // Weighted branching flow through the k growing stages: every queried-edge
  // outcome Q of the current vertex set carries s^|Q| (1-s)^(rest).
  std::set<int> marked(a.begin(), a.end());
  std::vector<int> rest_v;
  for (int v = 0; v < n; ++v)
    if (!marked.count(v)) rest_v.push_back(v);
  if (static_cast<int>(rest_v.size()) < r - k + 1)
    throw std::invalid_argument("not enough unmarked vertices for stage 1");
  Rational q0 =
      Rational(1) / Rational(binomial(static_cast<int>(rest_v.size()), r - k + 1));

  FlowAssignment raw;
  LVertex source{{}, std::vector<int>{}};
  for (auto& start : combinations(rest_v, r - k + 1)) {
    std::vector<int> set = start;
    std::vector<int> prev_set;
    for (int j = 1; j <= k; ++j) {
      std::vector<int> edges = clique_edges(u, set);
      int full = static_cast<int>(edges.size());
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << full); ++mask) {
        std::vector<int> queried;
        for (int e = 0; e < full; ++e)
          if (mask >> e & 1) queried.push_back(edges[e]);
        std::sort(queried.begin(), queried.end());
        Rational w = q0 * rat_pow(s, static_cast<int>(queried.size())) *
                     rat_pow(1 - s, full - static_cast<int>(queried.size()));
        LVertex to{queried, set};
        LVertex from;
        if (j == 1) {
          from = source;
        } else {
          std::vector<int> prev_edges = clique_edges(u, prev_set);
          std::vector<int> prev_queried;
          for (int e : queried)
            if (std::binary_search(prev_edges.begin(), prev_edges.end(), e))
              prev_queried.push_back(e);
          from = LVertex{std::move(prev_queried), prev_set};
        }
        raw.flows[gi.transition(j - 1, from, to)->id] += w;
      }
      prev_set = set;
      if (j < k) set = sorted_union(set, a[j - 1]);
    }
  }
  out.raw_flow = raw;

  // Selection: final sets must avoid the residual certificate edges and carry
  // at least s r^2 / 4 queried edges.
  LearningGraph prefix;
  prefix.universe = out.graph.universe;
  prefix.ground = out.graph.ground;
  prefix.layers.assign(out.graph.layers.begin(), out.graph.layers.begin() + k + 1);
  prefix.stages.assign(out.graph.stages.begin(), out.graph.stages.begin() + k);
  Rational threshold = s * r * r / 4;
  auto selector = [&](const LVertex& v) {
    for (int e : m_edges)
      if (std::binary_search(v.queried.begin(), v.queried.end(), e)) return false;
    return Rational(static_cast<int>(v.queried.size())) >= threshold;
  };
  ConditionResult cond = condition_flow(prefix, raw, selector, 2);
  out.conditioning_k = cond.one_over_p;
  if (cond.warning) {
    std::ostringstream note;
    note << "selection kept under half the flow (1/p = " << cond.one_over_p << ")";
    out.notes.push_back(note.str());
  }

  // Extend every surviving final vertex through the residual-edge substages.
  out.flow = std::move(cond.flow);
  std::vector<std::pair<int, Rational>> carried;  // final-layer pos, in-flow
  for (int pos = 0; pos < static_cast<int>(prefix.layers[k].size()); ++pos) {
    Rational p = vertex_in_flow(prefix, k, pos, out.flow);
    if (p == 0) continue;
    LVertex cur = prefix.layers[k][pos];
    for (int i = 0; i < m; ++i) {
      LVertex next{sorted_union(cur.queried, m_edges[i]), cur.annotation};
      out.flow.flows[gi.transition(k + i, cur, next)->id] += p;
      cur = std::move(next);
    }
    carried.push_back({gi.vertex_position(k + m, cur), p});
  }

  // Subroutine for the apex edges at every flow-carrying final vertex.
  int l = h.min_degree;
  std::vector<int> apex_marked;
  for (auto [p, q] : h.apex_edges)
    apex_marked.push_back(u.edge_id(cert->embedding[p], cert->embedding[q]));
  std::sort(apex_marked.begin(), apex_marked.end());
  if (r_sub == 0) r_sub = default_sub_r(r, l);
  r_sub = std::clamp(r_sub, l, r);

  std::vector<SubroutineSpec> subs;
  std::set<int> attached;
  for (auto& [pos, p] : carried) {
    if (!attached.insert(pos).second) continue;
    const auto& set = *out.graph.layers[k + m][pos].annotation;
    std::vector<int> sub_ground;
    for (int v : set) sub_ground.push_back(u.edge_id(apex, v));
    std::sort(sub_ground.begin(), sub_ground.end());
    SubroutineSpec spec;
    spec.vertex = pos;
    auto sub = std::make_shared<LearningGraph>(
        kdist_structure(u, sub_ground, l, r_sub, limits));
    spec.flow = kdist_flow(*sub, apex_marked);
    spec.graph = std::move(sub);
    subs.push_back(std::move(spec));
  }
  auto [composite, flow] = append_subroutine(out.graph, out.flow, subs);
  out.graph = std::move(composite);
  out.flow = std::move(flow);
  out.flow.instance_label = x.label();
  if (out.raw_flow) out.raw_flow->instance_label = out.flow.instance_label;
  if (r == k) out.notes.push_back("stage 1 queries a single vertex (r = k)");
  return out;
}

}  // namespace lg
