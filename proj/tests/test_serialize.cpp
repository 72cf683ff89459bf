#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "lg/analysis.hpp"
#include "lg/builders.hpp"
#include "lg/optimize.hpp"
#include "lg/serialize.hpp"
#include "oracles.hpp"

using namespace lg;

namespace {

bool same_structure(const LearningGraph& a, const LearningGraph& b) {
  if (a.universe.size() != b.universe.size()) return false;
  if (a.ground != b.ground) return false;
  if (a.layers.size() != b.layers.size()) return false;
  for (size_t i = 0; i < a.layers.size(); ++i) {
    if (a.layers[i].size() != b.layers[i].size()) return false;
    for (size_t j = 0; j < a.layers[i].size(); ++j) {
      if (a.layers[i][j].queried != b.layers[i][j].queried) return false;
      if (a.layers[i][j].annotation != b.layers[i][j].annotation) return false;
    }
  }
  if (a.stages.size() != b.stages.size()) return false;
  for (size_t i = 0; i < a.stages.size(); ++i) {
    if (a.stages[i].size() != b.stages[i].size()) return false;
    for (size_t j = 0; j < a.stages[i].size(); ++j) {
      const Transition& s = a.stages[i][j];
      const Transition& t = b.stages[i][j];
      if (s.id != t.id || s.from != t.from || s.to != t.to) return false;
    }
  }
  if (a.attachments.size() != b.attachments.size()) return false;
  for (size_t i = 0; i < a.attachments.size(); ++i) {
    if (a.attachments[i].vertex != b.attachments[i].vertex) return false;
    if (!same_structure(*a.attachments[i].graph, *b.attachments[i].graph))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("rational round trip") {
  for (Rational x : {Rational(0), Rational(35, 27), Rational(-13, 10),
                     Rational(BigInt("123456789012345678901"), 7)}) {
    Json j = rational_json(x);
    CHECK(rational_from_json(j) == x);
  }
  CHECK(rational_json(Rational(35, 27))["num"] == "35");
  CHECK(rational_json(Rational(35, 27))["den"] == "27");
}

TEST_CASE("learning graph round trips through JSON") {
  LearningGraph lg = kdist_structure(5, 2, 4);
  Json j = graph_json(lg);
  LearningGraph back = graph_from_json(j);
  CHECK(same_structure(lg, back));
  CHECK(validate_structure(back).ok());
}

TEST_CASE("clique build with attachments round trips") {
  ProblemInstance x = ProblemInstance::graph(6, {{0, 1}, {0, 2}, {1, 2}});
  BuildResult b = build_kclique(6, 3, 4, x);
  REQUIRE(!b.graph.attachments.empty());
  Json j = graph_json(b.graph, b.flow);
  LearningGraph back = graph_from_json(j);
  CHECK(same_structure(b.graph, back));
  FlowAssignment flow = flow_from_json(j);
  CHECK(flow == b.flow);
  CHECK(check_flow(back, flow).ok());
}

TEST_CASE("dot output shape for the worked example") {
  LearningGraph lg = kdist_structure(5, 2, 4);
  FlowAssignment flow = kdist_flow(lg, {0, 2});
  std::string dot = graph_dot(lg, &flow);
  size_t nodes = 0, arcs = 0;
  std::istringstream lines(dot);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find(" -> ") != std::string::npos)
      ++arcs;
    else if (line.find("[label=") != std::string::npos &&
             line.find("label=\"layer") == std::string::npos)
      ++nodes;
  }
  CHECK(nodes == 26);
  CHECK(arcs == 60);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("1/3") != std::string::npos);
}

TEST_CASE("dumps are deterministic") {
  LearningGraph lg = kdist_structure(6, 3, 4);
  CHECK(graph_json(lg).dump(2) == graph_json(lg).dump(2));
  std::string a = graph_dot(lg);
  std::string b = graph_dot(lg);
  CHECK(a == b);
}

TEST_CASE("report serializers expose the expected keys") {
  ValidationReport ok;
  Json vj = validation_json(ok);
  CHECK(vj["ok"] == true);
  CHECK(vj["violations"].is_array());
  CHECK(vj["violations"].empty());

  auto terms = stage_exponent_terms(Family::Subgraph, 3, 2, 1);
  Json bj = balance_json(balance(terms, true));
  CHECK(bj.contains("alpha"));
  CHECK(bj.contains("beta"));
  CHECK(bj.contains("value"));
  CHECK(bj.contains("tight"));
  CHECK(rational_from_json(bj["value"]) == Rational(35, 27));

  Json tj = table6_json(table6(4));
  CHECK(tj.is_array());
  CHECK(tj.size() == 8);
  CHECK(tj[0].contains("family"));
  CHECK(tj[0].contains("exponent"));
}

TEST_CASE("complexity report serializes stage rows") {
  LearningGraph lg = kdist_structure(5, 2, 4);
  std::vector<FlowAssignment> flows = {kdist_flow(lg, {0, 2})};
  SymmetryGroup grp = SymmetryGroup::positions(lg.universe);
  ComplexityReport rep = total_complexity(lg, flows, grp);
  Json j = complexity_json(rep);
  CHECK(j["stages"].size() == 3);
  CHECK(j.contains("total"));
  for (const auto& s : j["stages"]) {
    CHECK(s.contains("length"));
    CHECK(s.contains("speciality"));
    CHECK(s.contains("complexity"));
  }
}
