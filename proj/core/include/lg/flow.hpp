#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lg/graph.hpp"
#include "lg/rational.hpp"

namespace lg {

/// Unit flow from the source for one positive instance.  Transitions absent
/// from the map carry zero flow.
struct FlowAssignment {
  std::string instance_label;
  std::map<std::int64_t, Rational> flows;

  Rational at(std::int64_t id) const;
  bool positive(std::int64_t id) const;

  friend bool operator==(const FlowAssignment&, const FlowAssignment&) = default;
};

/// Verifies unit source flow, conservation at non-terminal vertices and
/// non-negativity; reports stage-wise sums (subroutine stages aggregated
/// across attachments).  Rejects flows naming unknown transition ids.
ValidationReport check_flow(const LearningGraph& lg, const FlowAssignment& flow);

/// In-flow of a vertex (layer >= 1); the source has in-flow 1 by convention.
Rational vertex_in_flow(const LearningGraph& lg, int layer, int vertex_pos,
                        const FlowAssignment& flow);

/// Average length sum p_e * l(e) of one stage; the stage flows must sum to 1.
Rational average_length(const LearningGraph& lg, int stage, const FlowAssignment& flow);

struct SubroutineSpec {
  int vertex = 0;  // final-layer position
  std::shared_ptr<const LearningGraph> graph;
  FlowAssignment flow;  // unit-source flow of the subroutine
};

/// Appends subroutine graphs after final-layer vertices.  Subroutine
/// transition ids are remapped past the host's ids and their flows scaled by
/// the in-flow of the attachment vertex.  A subroutine whose ground overlaps
/// the attachment vertex's queried set is rejected.
std::pair<LearningGraph, FlowAssignment> append_subroutine(
    const LearningGraph& lg, const FlowAssignment& flow,
    const std::vector<SubroutineSpec>& subs);

}  // namespace lg
