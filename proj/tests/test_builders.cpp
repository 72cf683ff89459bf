#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "lg/builders.hpp"
#include "lg/instance.hpp"
#include "oracles.hpp"

using namespace lg;

TEST_CASE("certificate search: distinctness") {
  auto x = ProblemInstance::distinctness({3, 1, 3, 2, 1}, 4);
  auto c = find_certificate(x, 2);
  REQUIRE(c.has_value());
  CHECK(c->indices == std::vector<int>{0, 2});
  CHECK(!find_certificate(x, 3).has_value());
}

TEST_CASE("certificate search: graphs") {
  auto tri = ProblemInstance::graph(5, {{0, 1}, {0, 2}, {1, 2}});
  auto c = find_certificate(tri, clique_pattern(3));
  REQUIRE(c.has_value());
  IndexUniverse u = edge_slot_universe(5);
  CHECK(c->indices ==
        std::vector<int>{u.edge_id(0, 1), u.edge_id(0, 2), u.edge_id(1, 2)});
  auto empty = ProblemInstance::graph(5, {});
  CHECK(!find_certificate(empty, clique_pattern(3)).has_value());
}

TEST_CASE("certificate search agrees with direct truth evaluation") {
  for (int n = 3; n <= 5; ++n)
    for (int k = 2; k <= 3; ++k)
      for (const auto& x : all_distinctness_instances(n, 3))
        CHECK(find_certificate(x, k).has_value() == oracle::has_k_equal(x, k));

  SubgraphPattern p3 = path_pattern(3);
  SubgraphPattern k3 = clique_pattern(3);
  for (std::uint64_t mask = 0; mask < 1024; ++mask) {
    auto x = ProblemInstance::graph_mask(5, mask);
    CHECK(find_certificate(x, p3).has_value() == oracle::contains_pattern(x, p3));
    CHECK(find_certificate(x, k3).has_value() == oracle::contains_pattern(x, k3));
  }
}

TEST_CASE("pattern decomposition") {
  SubgraphPattern k3 = clique_pattern(3);
  CHECK(k3.k == 3);
  CHECK(k3.min_degree == 2);
  CHECK(k3.m_edges == 1);
  CHECK(k3.apex == 0);
  CHECK(k3.residual_edges == std::vector<std::pair<int, int>>{{1, 2}});

  SubgraphPattern p3 = path_pattern(3);
  CHECK(p3.min_degree == 1);
  CHECK(p3.apex == 0);
  CHECK(p3.m_edges == 1);
  CHECK(p3.residual_edges == std::vector<std::pair<int, int>>{{1, 2}});

  SubgraphPattern s3 = star_pattern(3);
  CHECK(s3.k == 4);
  CHECK(s3.min_degree == 1);
  CHECK(s3.apex == 1);  // smallest-index minimum-degree vertex is a leaf
  CHECK(s3.m_edges == 2);

  std::istringstream in("0 1\n1 2\n");
  SubgraphPattern parsed = parse_pattern(in);
  CHECK(parsed.k == 3);
  CHECK(parsed.edges == p3.edges);
}

TEST_CASE("worked 2-distinctness build") {
  auto x = ProblemInstance::distinctness({0, 1, 0, 2, 3}, 4);
  BuildResult res = build_kdistinctness(5, 2, 4, x);

  CHECK(res.graph.layers[1].size() == 10);
  CHECK(res.graph.stages[0].size() == 10);
  CHECK(res.graph.stages[1].size() == 30);
  CHECK(res.graph.stages[2].size() == 20);

  int valid = 0;
  for (const Transition& t : res.graph.stages[0])
    if (res.flow.positive(t.id)) {
      ++valid;
      CHECK(res.flow.at(t.id) == Rational(1, 3));
    }
  CHECK(valid == 3);
  CHECK(check_flow(res.graph, res.flow).ok());
}

TEST_CASE("distinctness layer sizes follow binomials") {
  LearningGraph lg = kdist_structure(7, 3, 5);
  for (int j = 1; j <= 4; ++j)
    CHECK(BigInt(lg.layers[j].size()) == oracle::binomial(7, 5 - 3 + j - 1));
}

TEST_CASE("builder preconditions") {
  auto x = ProblemInstance::distinctness({0, 0, 1, 2, 3}, 4);
  CHECK_THROWS(build_kdistinctness(5, 2, 1, x));  // r < k
  CHECK_THROWS(build_kdistinctness(5, 2, 6, x));  // r > n
  auto neg = ProblemInstance::distinctness({0, 1, 2, 3, 4}, 5);
  CHECK_THROWS(build_kdistinctness(5, 2, 4, neg));

  auto tri = ProblemInstance::graph(6, {{0, 1}, {0, 2}, {1, 2}});
  CHECK_THROWS(build_kclique(6, 3, 6, tri));  // r must stay below n
  auto no_tri = ProblemInstance::graph(6, {{0, 1}, {1, 2}});
  CHECK_THROWS(build_kclique(6, 3, 4, no_tri));

  CHECK_THROWS(build_subgraph(6, clique_pattern(3), 4, 1, tri));      // s = 1
  CHECK_THROWS(build_subgraph(6, clique_pattern(3), 4, 0, tri));      // s = 0
  CHECK_THROWS(build_subgraph(6, path_pattern(2), 4, Rational(1, 2),  // k < 3
                              ProblemInstance::graph(6, {{0, 1}})));

  BuildLimits tiny;
  tiny.max_vertices = 10;
  CHECK_THROWS(build_kdistinctness(5, 2, 4, x, tiny));
}

TEST_CASE("clique build at the worked size") {
  auto tri = ProblemInstance::graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}});
  BuildResult res = build_kclique(6, 3, 4, tri);

  // Stage 1 queries 1 edge, stages 2-3 query 2 and 3 edges.
  CHECK(transition_length(res.graph, 0, res.graph.stages[0][0]) == 1);
  CHECK(transition_length(res.graph, 1, res.graph.stages[1][0]) == 2);
  CHECK(transition_length(res.graph, 2, res.graph.stages[2][0]) == 3);
  CHECK(res.graph.attachments.size() == 3);
  // Subroutine: k-1 = 2 marked edges among the r = 4 joining the candidate.
  CHECK(res.graph.attachments[0].graph->ground.size() == 4);

  CHECK(validate_structure(res.graph).ok());
  ValidationReport r = check_flow(res.graph, res.flow);
  CAPTURE(r.violations);
  CHECK(r.ok());
}

TEST_CASE("clique flow sound over random positive instances") {
  std::mt19937_64 rng(20240817);
  SubgraphPattern k3 = clique_pattern(3);
  for (int trial = 0; trial < 25; ++trial) {
    auto x = random_positive_graph(6, k3, 0.5, rng);
    BuildResult res = build_kclique(6, 3, 4, x);
    CHECK(check_flow(res.graph, res.flow).ok());
  }
}

TEST_CASE("degenerate clique boundary r = k") {
  LearningGraph lg = kclique_structure(6, 3, 3);
  ValidationReport r = validate_structure(lg);
  CHECK(r.ok());
  CHECK(!r.flags.empty());
  CHECK(transition_length(lg, 0, lg.stages[0][0]) == 0);
}

TEST_CASE("subgraph structure shape for P3 and K3") {
  // Both have k=3, m=1: three growing stages plus one substage.
  LearningGraph lg = subgraph_structure(6, 3, 4, 1);
  CHECK(lg.stage_count() == 4);
  // The substage layer drops the 15 zero-edge vertices of layer 3: they
  // cannot be reached by adding an edge.
  CHECK(lg.layers[3].size() == 960);
  CHECK(lg.layers[4].size() == 945);
  CHECK(validate_structure(lg).ok());

  auto tri = ProblemInstance::graph(6, {{0, 1}, {0, 2}, {1, 2}});
  BuildResult k3 = build_subgraph(6, clique_pattern(3), 4, Rational(1, 2), tri);
  CHECK(k3.graph.attachments[0].graph->stage_count() == 3);  // l = 2 marked edges

  auto path = ProblemInstance::graph(6, {{0, 1}, {1, 2}});
  BuildResult p3 = build_subgraph(6, path_pattern(3), 4, Rational(1, 2), path);
  CHECK(p3.graph.attachments[0].graph->stage_count() == 2);  // l = 1 marked edge
  CHECK(check_flow(p3.graph, p3.flow).ok());
}

TEST_CASE("subgraph branching weights follow the product formula") {
  auto tri = ProblemInstance::graph(6, {{0, 1}, {0, 2}, {1, 2}});
  Rational s(1, 3);
  BuildResult res = build_subgraph(6, clique_pattern(3), 4, s, tri);
  REQUIRE(res.raw_flow.has_value());

  const LearningGraph& g = res.graph;
  Rational denom = Rational(1) / Rational(binomial(3, 2));  // C(n-k, r-k+1)
  for (int stage = 0; stage < 3; ++stage) {
    Rational sum = 0;
    for (const Transition& t : g.stages[stage]) {
      Rational f = res.raw_flow->at(t.id);
      sum += f;
      if (f == 0) continue;
      const LVertex& to = g.to_vertex(stage, t);
      int slots = static_cast<int>(to.annotation->size());
      int full = slots * (slots - 1) / 2;
      int q = static_cast<int>(to.queried.size());
      Rational expect = denom;
      for (int i = 0; i < q; ++i) expect *= s;
      for (int i = 0; i < full - q; ++i) expect *= 1 - s;
      CHECK(f == expect);
    }
    CHECK(sum == 1);
  }
}

TEST_CASE("subgraph conditioning constant is reported") {
  auto tri = ProblemInstance::graph(6, {{0, 1}, {0, 2}, {1, 2}});
  BuildResult res = build_subgraph(6, clique_pattern(3), 4, Rational(1, 2), tri);
  REQUIRE(res.conditioning_k.has_value());
  CHECK(*res.conditioning_k == Rational(32, 13));
  CHECK(check_flow(res.graph, res.flow).ok());
}

TEST_CASE("default size rules") {
  CHECK(default_r(5, 2) == 3);    // ceil(5^(2/3))
  CHECK(default_r(8, 2) == 4);    // 8^(2/3) = 4
  CHECK(default_r(12, 2) == 6);   // ceil(12^(2/3)) = 6
  CHECK(default_sub_r(4, 2) == 3);  // ceil(4^(2/3))
}
