#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lg/analysis.hpp"
#include "lg/builders.hpp"
#include "oracles.hpp"

using namespace lg;

TEST_CASE("stage_complexity formula and domain") {
  CHECK(stage_complexity(1, 10) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-11));
  CHECK(stage_complexity(2, 1) == 2.0);
  CHECK(stage_complexity(0, 7) == 0.0);
  CHECK_THROWS_AS(stage_complexity(1, Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(stage_complexity(-1, 2), std::invalid_argument);
}

TEST_CASE("worked distinctness complexity report") {
  LearningGraph lg = kdist_structure(5, 2, 4);
  FlowAssignment flow = kdist_flow(lg, {0, 2});
  SymmetryGroup g = SymmetryGroup::positions(lg.universe, lg.ground);
  ComplexityReport report = total_complexity(lg, {flow}, g);

  REQUIRE(report.stages.size() == 3);
  CHECK(report.stages[0].length == 2);
  CHECK(report.stages[0].speciality == Rational(10, 3));
  CHECK(report.stages[1].speciality == 10);
  CHECK(report.stages[2].speciality == Rational(20, 3));
  for (const auto& s : report.stages) CHECK(s.symmetric);

  double expect = 2 * std::sqrt(10.0 / 3) + std::sqrt(10.0) + std::sqrt(20.0 / 3);
  CHECK(report.total == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("per-instance values agree on symmetric stages") {
  LearningGraph lg = kdist_structure(6, 2, 4);
  SymmetryGroup g = SymmetryGroup::positions(lg.universe, lg.ground);
  GraphIndex gi(lg);
  std::vector<FlowAssignment> flows = {kdist_flow(lg, {0, 3}), kdist_flow(lg, {2, 5})};
  for (int s = 0; s < lg.stage_count(); ++s) {
    REQUIRE(is_symmetric_stage(gi, s, g, flows).symmetric);
    CHECK(average_length(lg, s, flows[0]) == average_length(lg, s, flows[1]));
    CHECK(max_speciality(gi, s, g, flows[0]) == max_speciality(gi, s, g, flows[1]));
  }
}

TEST_CASE("subroutine stage value composes L and T") {
  auto tri = ProblemInstance::graph(6, {{0, 1}, {0, 2}, {1, 2}});
  BuildResult res = build_kclique(6, 3, 4, tri);
  SymmetryGroup g = SymmetryGroup::graph_vertices(6);
  GraphIndex gi(res.graph);

  ComplexityReport report = total_complexity(res.graph, {res.flow}, g);
  REQUIRE(report.subroutine.has_value());
  int final_layer = static_cast<int>(res.graph.layers.size()) - 1;
  Rational t = max_vertex_speciality(gi, final_layer, g, res.flow);
  CHECK(report.subroutine->speciality == t);
  CHECK(report.subroutine->complexity ==
        doctest::Approx(report.subroutine->average_complexity *
                        std::sqrt(to_double(t)))
            .epsilon(1e-9));
  CHECK(subroutine_stage_complexity(res.graph, {res.flow}, g) ==
        doctest::Approx(report.subroutine->complexity));

  // Within a small constant of the model value r^((k-1)/k) sqrt(n^k/r^(k-1)).
  double model = std::pow(4.0, 2.0 / 3) * std::sqrt(216.0 / 16.0);
  double ratio = report.subroutine->complexity / model;
  CHECK(ratio < 8.0);
  CHECK(ratio > 1.0 / 8.0);
}

TEST_CASE("subroutine stage requires an attachment") {
  LearningGraph lg = kdist_structure(5, 2, 4);
  FlowAssignment flow = kdist_flow(lg, {0, 2});
  SymmetryGroup g = SymmetryGroup::positions(lg.universe, lg.ground);
  CHECK_THROWS_AS(subroutine_stage_complexity(lg, {flow}, g), std::invalid_argument);
}

TEST_CASE("condition_flow trivial selectors") {
  LearningGraph lg = kdist_structure(5, 2, 4);
  FlowAssignment flow = kdist_flow(lg, {0, 2});

  SUBCASE("accept everything") {
    ConditionResult r =
        condition_flow(lg, flow, [](const LVertex&) { return true; }, 100);
    CHECK(r.one_over_p == 1);
    CHECK(!r.warning);
    CHECK(r.flow.flows == flow.flows);
  }
  SUBCASE("keep exactly half the final flow") {
    // n=6, r=5, marked {0,2}: four finals carry 1/4 each; those containing
    // both 1 and 3 carry 1/2 in total.
    LearningGraph lg6 = kdist_structure(6, 2, 5);
    FlowAssignment flow6 = kdist_flow(lg6, {0, 2});
    auto keep = [](const LVertex& v) {
      return std::binary_search(v.queried.begin(), v.queried.end(), 1) &&
             std::binary_search(v.queried.begin(), v.queried.end(), 3);
    };
    ConditionResult r = condition_flow(lg6, flow6, keep, 100);
    CHECK(r.one_over_p == 2);
    CHECK(check_flow(lg6, r.flow).ok());
    for (int s = 0; s < lg6.stage_count(); ++s) {
      Rational sum = 0;
      for (const Transition& t : lg6.stages[s]) sum += r.flow.at(t.id);
      CHECK(sum == 1);
    }
  }
  SUBCASE("empty selection is an error") {
    CHECK_THROWS_AS(
        condition_flow(lg, flow, [](const LVertex&) { return false; }, 100),
        std::runtime_error);
  }
  SUBCASE("warning when the bound is violated") {
    // Keeping one final of three leaves p = 1/3, so 1/p = 3 >= 2 warns.
    ConditionResult r = condition_flow(
        lg, flow,
        [](const LVertex& v) {
          return std::binary_search(v.queried.begin(), v.queried.end(), 1) &&
                 std::binary_search(v.queried.begin(), v.queried.end(), 3);
        },
        2);
    CHECK(r.one_over_p == 3);
    CHECK(r.warning);
  }
}

TEST_CASE("scaling report fits and preconditions") {
  CHECK_THROWS_AS(scaling_report(Family::KDistinctness, 2, {6, 8}),
                  std::invalid_argument);
  CHECK_THROWS_AS(scaling_report(Family::Subgraph, 3, {6, 7, 8}),
                  std::invalid_argument);

  ScalingReport report = scaling_report(Family::KDistinctness, 2, {6, 8, 10});
  CHECK(report.r_list == std::vector<int>{4, 4, 5});
  REQUIRE(report.specialities.size() == 3);
  REQUIRE(report.fits.size() == 3);
  // Exact small-size specialities, pinned.
  CHECK(report.specialities[0][0] == Rational(5, 2));
  CHECK(report.specialities[0][1] == 10);
  CHECK(report.specialities[0][2] == 10);
}

TEST_CASE("text tables render") {
  LearningGraph lg = kdist_structure(5, 2, 4);
  FlowAssignment flow = kdist_flow(lg, {0, 2});
  SymmetryGroup g = SymmetryGroup::positions(lg.universe, lg.ground);
  std::string table = complexity_table(total_complexity(lg, {flow}, g));
  CHECK(table.find("10/3") != std::string::npos);
  CHECK(table.find("total:") != std::string::npos);

  std::string sc = scaling_table(scaling_report(Family::KDistinctness, 2, {6, 8, 10}));
  CHECK(sc.find("k-distinctness") != std::string::npos);
}
