// Acceptance checks, one per criterion.  Run with a criterion number (1-10)
// or no argument for the full battery.  Each prints a single PASS/FAIL line;
// the exit status is the number of failures.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lg/analysis.hpp"
#include "lg/builders.hpp"
#include "lg/optimize.hpp"

using namespace lg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

std::string str(const Rational& x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

// 1: the closed-form exponent table and the triangle value.
Outcome criterion_closed_forms() {
  Outcome o;
  auto rows = table6(10);
  if (rows.size() != 32) fail(o, "expected 32 table rows");
  for (const auto& row : rows) {
    int k = row.k;
    Rational g;
    if (row.family == "clique")
      g = Rational(2 * (k - 2)) / Rational(k * k * (k * k - 3 * k + 6));
    else if (row.family == "path")
      g = Rational(k - 2) / Rational(k * k);
    else if (row.family == "cycle")
      g = Rational(2 * k - 5) / Rational(3 * k * k);
    else
      g = Rational(k - 1) / Rational((k + 1) * (k + 1));
    if (row.g != g) fail(o, row.family + " k=" + std::to_string(k) + " g mismatch");
  }
  if (containment_exponent(clique_pattern(3)) != Rational(35, 27))
    fail(o, "triangle exponent is not 35/27");
  if (o.pass) o.detail = "32 closed-form rows and the 35/27 triangle exponent check out";
  return o;
}

// 2: every optimizer value equals its published closed form.
Outcome criterion_balance_values() {
  Outcome o;
  for (int k = 2; k <= 8; ++k) {
    auto sol = balance(stage_exponent_terms(Family::KDistinctness, k), false);
    if (sol.value != Rational(k, k + 1))
      fail(o, "kdist k=" + std::to_string(k) + " value " + str(sol.value));
  }
  for (int k = 3; k <= 8; ++k) {
    auto sol = balance(stage_exponent_terms(Family::KClique, k), false);
    if (sol.value != 2 - Rational(2, k))
      fail(o, "clique k=" + std::to_string(k) + ": expected " +
                  str(2 - Rational(2, k)) + ", optimizer found " + str(sol.value) +
                  " at alpha=" + str(sol.alpha));
  }
  for (int k = 3; k <= 6; ++k) {
    std::set<std::pair<int, int>> seen;
    for (const auto& edges : connected_patterns(k)) {
      SubgraphPattern h = decompose_pattern(k, edges);
      if (!seen.insert({h.min_degree, h.m_edges}).second) continue;
      auto terms = stage_exponent_terms(Family::Subgraph, h.k, h.min_degree, h.m_edges);
      auto sol = balance(terms, true);
      Rational expect = 2 - Rational(2, k) - g_of_h(h);
      if (sol.value != expect)
        fail(o, "H on " + std::to_string(k) + " vertices (l=" +
                    std::to_string(h.min_degree) + ", m=" + std::to_string(h.m_edges) +
                    ") value " + str(sol.value));
      if (term_system_value(terms, 1 - Rational(1, k), g_of_h(h)) != expect)
        fail(o, "stated optimum point misses the value for k=" + std::to_string(k));
    }
  }
  if (o.pass) o.detail = "all family optima match their closed forms";
  return o;
}

// 3: the worked small example, end to end.
Outcome criterion_worked_example() {
  Outcome o;
  LearningGraph lg = kdist_structure(5, 2, 4);
  GraphIndex gi(lg);
  std::vector<size_t> want_layers = {1, 10, 10, 5};
  for (size_t i = 0; i < want_layers.size(); ++i)
    if (lg.layers[i].size() != want_layers[i]) fail(o, "bad layer sizes");
  std::vector<size_t> want_stages = {10, 30, 20};
  for (size_t i = 0; i < want_stages.size(); ++i)
    if (lg.stages[i].size() != want_stages[i]) fail(o, "bad stage sizes");

  FlowAssignment flow = kdist_flow(lg, {0, 2});
  auto check = check_flow(lg, flow);
  if (!check.ok()) fail(o, "canonical flow violates conservation");
  for (const auto& sum : check.stage_flow_sums)
    if (sum != 1) fail(o, "stage flow sum is not 1");
  for (const auto& [id, f] : flow.flows)
    if (f != 0 && f != Rational(1, 3)) fail(o, "path flow is not 1/3");

  SymmetryGroup grp = SymmetryGroup::positions(lg.universe);
  ComplexityReport rep = total_complexity(lg, {flow}, grp);
  std::vector<Rational> want_t = {Rational(10, 3), Rational(10), Rational(20, 3)};
  for (size_t i = 0; i < want_t.size(); ++i)
    if (rep.stages[i].speciality != want_t[i]) fail(o, "speciality mismatch");
  if (rep.total != 9.39575027434) fail(o, "total complexity drifted");
  if (o.pass)
    o.detail = "layers 1/10/10/5, flows 1/3, specialities 10/3, 10, 20/3, total "
               "9.39575027434";
  return o;
}

// 4: flows are sound for every positive instance across the builders.
Outcome criterion_flow_soundness() {
  Outcome o;
  int checked = 0;
  for (int k : {2, 3})
    for (int n = 5; n <= 7; ++n) {
      int r = default_r(n, k);
      if (r < k) continue;
      for (const auto& x : all_distinctness_instances(n, 3)) {
        if (!find_certificate(x, k)) continue;
        BuildResult b = build_kdistinctness(n, k, r, x);
        if (!check_flow(b.graph, b.flow).ok()) {
          fail(o, "kdist flow broken on " + x.label());
          return o;
        }
        ++checked;
      }
    }

  SubgraphPattern triangle = clique_pattern(3);
  for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
    ProblemInstance x = ProblemInstance::graph_mask(5, mask);
    if (!find_certificate(x, triangle)) continue;
    BuildResult b = build_kclique(5, 3, 4, x);
    if (!check_flow(b.graph, b.flow).ok()) {
      fail(o, "clique flow broken on " + x.label());
      return o;
    }
    ++checked;
  }
  std::mt19937_64 rng(20250811);
  for (int t = 0; t < 200; ++t) {
    ProblemInstance x = random_positive_graph(6, triangle, 0.5, rng);
    BuildResult b = build_kclique(6, 3, 4, x);
    if (!check_flow(b.graph, b.flow).ok()) {
      fail(o, "clique flow broken on " + x.label());
      return o;
    }
    ++checked;
  }

  SubgraphPattern p3 = path_pattern(3);
  std::mt19937_64 rng2(20250812);
  for (int t = 0; t < 200; ++t) {
    ProblemInstance x = random_positive_graph(6, p3, 0.5, rng2);
    BuildResult b = build_subgraph(6, p3, 4, Rational(1, 2), x);
    if (!check_flow(b.graph, b.flow).ok()) {
      fail(o, "subgraph flow broken on " + x.label());
      return o;
    }
    ++checked;
  }
  o.detail = std::to_string(checked) + " positive instances pass conservation";
  return o;
}

// 5: canonical flows are symmetric stage by stage.
Outcome criterion_symmetry() {
  Outcome o;
  for (int n = 5; n <= 7; ++n) {
    LearningGraph lg = kdist_structure(n, 2, default_r(n, 2));
    GraphIndex gi(lg);
    std::vector<FlowAssignment> flows;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) flows.push_back(kdist_flow(lg, {a, b}));
    SymmetryGroup grp = SymmetryGroup::positions(lg.universe);
    for (int s = 0; s < lg.stage_count(); ++s) {
      auto check = is_symmetric_stage(gi, s, grp, flows);
      if (!check.symmetric)
        fail(o, "kdist n=" + std::to_string(n) + " stage " + std::to_string(s + 1));
    }
  }
  for (int n : {5, 6}) {
    LearningGraph lg = kclique_structure(n, 3, 4);
    GraphIndex gi(lg);
    std::vector<FlowAssignment> flows;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) flows.push_back(kclique_flow(lg, {a, b, c}));
    SymmetryGroup grp = SymmetryGroup::graph_vertices(n);
    for (int s = 0; s < lg.stage_count(); ++s) {
      auto check = is_symmetric_stage(gi, s, grp, flows);
      if (!check.symmetric)
        fail(o, "clique n=" + std::to_string(n) + " stage " + std::to_string(s + 1));
    }
  }
  if (o.pass) o.detail = "every canonical stage is flow-symmetric";
  return o;
}

// 6: speciality scaling matches the model exponents.
Outcome criterion_scaling() {
  Outcome o;
  ScalingReport rep = scaling_report(Family::KDistinctness, 2, {6, 8, 10, 12});
  std::vector<double> model = {0.0, 1.0, rep.fits[2].predicted};
  for (size_t i = 0; i < rep.fits.size(); ++i) {
    double want = i < 2 ? model[i] : rep.fits[i].predicted;
    double got = rep.fits[i].fitted;
    if (got < want - 0.3 || got > want + 0.3)
      fail(o, "stage " + rep.fits[i].stage + " fit " + std::to_string(got) +
                  " vs model " + std::to_string(want));
  }
  if (o.pass) o.detail = "fitted exponents sit within 0.3 of the model";
  return o;
}

// 7: subgraph specialities grow with n at fixed (r, s).
Outcome criterion_subgraph_growth() {
  Outcome o;
  SubgraphPattern triangle = clique_pattern(3);
  std::vector<Rational> substage, final_vertex;
  for (int n : {6, 7}) {
    ProblemInstance x = ProblemInstance::graph(n, {{0, 1}, {0, 2}, {1, 2}});
    BuildResult b = build_subgraph(n, triangle, 4, Rational(1, 2), x);
    GraphIndex gi(b.graph);
    SymmetryGroup grp = SymmetryGroup::graph_vertices(n);
    substage.push_back(max_speciality(gi, 3, grp, b.flow));
    final_vertex.push_back(max_vertex_speciality(
        gi, static_cast<int>(b.graph.layers.size()) - 1, grp, b.flow));
  }
  if (!(substage[1] > substage[0])) fail(o, "substage speciality did not grow");
  if (!(final_vertex[1] > final_vertex[0]))
    fail(o, "final vertex speciality did not grow");
  if (o.pass)
    o.detail = "substage " + str(substage[0]) + " -> " + str(substage[1]) +
               ", final vertex " + str(final_vertex[0]) + " -> " + str(final_vertex[1]);
  return o;
}

// 8: flow conditioning is exact on trivial selectors.
Outcome criterion_conditioning() {
  Outcome o;
  LearningGraph lg5 = kdist_structure(5, 2, 4);
  FlowAssignment f5 = kdist_flow(lg5, {0, 2});
  auto all = condition_flow(lg5, f5, [](const LVertex&) { return true; }, 1);
  if (all.one_over_p != 1 || all.flow.flows != f5.flows)
    fail(o, "accept-all selector changed the flow");

  LearningGraph lg6 = kdist_structure(6, 2, 5);
  FlowAssignment f6 = kdist_flow(lg6, {0, 2});
  auto half = condition_flow(
      lg6, f6,
      [](const LVertex& v) {
        auto has = [&](int i) {
          return std::find(v.queried.begin(), v.queried.end(), i) != v.queried.end();
        };
        return has(1) && has(3);
      },
      2);
  if (half.one_over_p != 2) fail(o, "half-keep selector: 1/p is " + str(half.one_over_p));
  if (!half.warning) fail(o, "1/p == K should warn");  // bound check is inclusive
  if (!check_flow(lg6, half.flow).ok()) fail(o, "conditioned flow broke conservation");
  if (o.pass) o.detail = "accept-all keeps the flow; half-keep rescales by exactly 2";
  return o;
}

// 9: the monotone combination picks the cheaper certificate.
Outcome criterion_monotone() {
  Outcome o;
  Rational got = monotone_exponent({clique_pattern(3), path_pattern(3)});
  if (got != Rational(35, 27)) fail(o, "monotone exponent is " + str(got));
  if (monotone_exponent({path_pattern(3)}) != Rational(11, 9))
    fail(o, "P3-only exponent is wrong");
  if (o.pass) o.detail = "min over {K3, P3} lands on the 35/27 triangle bound";
  return o;
}

// 10: sampled speciality intervals cover the exact value.
Outcome criterion_estimates() {
  Outcome o;
  LearningGraph lg = kdist_structure(5, 2, 4);
  GraphIndex gi(lg);
  FlowAssignment flow = kdist_flow(lg, {0, 2});
  SymmetryGroup exact_grp = SymmetryGroup::positions(lg.universe);
  int covered = 0, trials = 0;
  for (int s = 0; s < lg.stage_count(); ++s) {
    const Transition& t = lg.stages[s][0];
    double exact = to_double(speciality(gi, s, t, exact_grp, flow).speciality);
    for (int i = 0; i < 13; ++i) {
      SymmetryGroup sampled = SymmetryGroup::sampled_positions(
          lg.universe, lg.ground, 100000, 1000 + 13 * s + i);
      EstimateReport est = estimate_speciality(gi, s, t, sampled, flow);
      ++trials;
      if (est.lower <= exact && exact <= est.upper) ++covered;
    }
  }
  o.detail = std::to_string(covered) + "/" + std::to_string(trials) +
             " 99% intervals cover the exact speciality";
  if (covered < trials - 1) fail(o, "coverage below the expected rate");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<Outcome()>> criteria = {
      criterion_closed_forms, criterion_balance_values, criterion_worked_example,
      criterion_flow_soundness, criterion_symmetry, criterion_scaling,
      criterion_subgraph_growth, criterion_conditioning, criterion_monotone,
      criterion_estimates};

  int first = 0, last = static_cast<int>(criteria.size());
  if (argc > 1) {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > last) {
      std::cerr << "usage: acceptance [1-" << last << "]\n";
      return 2;
    }
    first = n - 1;
    last = n;
  }

  int failures = 0;
  for (int i = first; i < last; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " — "
              << o.detail << "\n";
    if (!o.pass) ++failures;
  }
  return failures;
}
