#pragma once

#include <string>

#include <json.hpp>

#include "lg/analysis.hpp"
#include "lg/flow.hpp"
#include "lg/graph.hpp"
#include "lg/group.hpp"
#include "lg/optimize.hpp"

namespace lg {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& x);             // {"num": "...", "den": "..."}
Rational rational_from_json(const nlohmann::json& j);

Json graph_json(const LearningGraph& lg);
Json graph_json(const LearningGraph& lg, const FlowAssignment& flow);
LearningGraph graph_from_json(const nlohmann::json& j);
FlowAssignment flow_from_json(const nlohmann::json& j);

Json validation_json(const ValidationReport& r);
Json speciality_json(const SpecialityReport& r);
Json estimate_json(const EstimateReport& r);
Json complexity_json(const ComplexityReport& r);
Json balance_json(const BalanceSolution& s);
Json table6_json(const std::vector<Table6Row>& rows);
Json scaling_json(const ScalingReport& r);

/// One node per L-vertex, one edge per transition, layers as ranked clusters;
/// attachments become nested clusters linked from their vertex.
std::string graph_dot(const LearningGraph& lg, const FlowAssignment* flow = nullptr);

}  // namespace lg
