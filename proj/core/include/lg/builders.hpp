#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lg/flow.hpp"
#include "lg/graph.hpp"
#include "lg/instance.hpp"
#include "lg/rational.hpp"

namespace lg {

struct BuildLimits {
  std::int64_t max_vertices = 1000000;
};

struct BuildResult {
  LearningGraph graph;
  FlowAssignment flow;
  std::vector<std::string> notes;
  // Subgraph builds only: the flow before the selection stage rescaled it,
  // and the observed 1/p of that rescaling.
  std::optional<FlowAssignment> raw_flow;
  std::optional<Rational> conditioning_k;
};

/// Query-(r-k)-then-marked-one-by-one structure over an arbitrary ground set:
/// layer j holds every (r-k+j-1)-subset.  Instance independent; flows decide
/// validity.
LearningGraph kdist_structure(const IndexUniverse& u, std::vector<int> ground, int k,
                              int r, const BuildLimits& limits = {});
LearningGraph kdist_structure(int n, int k, int r, const BuildLimits& limits = {});

/// Canonical flow for the given marked ground elements: 1/C(N-k, r-k) along
/// each valid path.
FlowAssignment kdist_flow(const LearningGraph& lg, const std::vector<int>& marked);

BuildResult build_kdistinctness(int n, int k, int r, const ProblemInstance& x,
                                const BuildLimits& limits = {});

/// Growing-clique stages over edge slots; layer j holds the complete subgraph
/// on every (r-k+j)-vertex set, annotated with that set.
LearningGraph kclique_structure(int n, int k, int r, const BuildLimits& limits = {});
FlowAssignment kclique_flow(const LearningGraph& lg,
                            const std::vector<int>& clique_vertices);

/// Full k-clique build: growing-clique stages plus a distinctness-type
/// subroutine over the edges joining the clique candidate to the accumulated
/// vertex set (k-1 marked edges).  r_sub defaults to ceil(r^((k-1)/k)).
BuildResult build_kclique(int n, int k, int r, const ProblemInstance& x, int r_sub = 0,
                          const BuildLimits& limits = {});

/// Random-subgraph stages 1..k (explicit weighted branching over edge
/// subsets), followed by m single-edge substages.  Structure depends on the
/// pattern only through k and m.
LearningGraph subgraph_structure(int n, int k, int r, int m_sub,
                                 const BuildLimits& limits = {});

/// Full H build: random-subgraph stages, selection of final vertices avoiding
/// M with enough queried edges (flow surgery), the m substages querying M in
/// lexicographic order, and the distinctness-type subroutine for the l edges
/// at a_k.  Requires 0 < s < 1.
BuildResult build_subgraph(int n, const SubgraphPattern& h, int r, const Rational& s,
                           const ProblemInstance& x, int r_sub = 0,
                           const BuildLimits& limits = {});

int default_r(int n, int k);      // ceil(n^(k/(k+1)))
int default_sub_r(int r, int k);  // ceil(r^(k/(k+1))) for the subroutine

}  // namespace lg
