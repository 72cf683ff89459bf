#include "lg/flow.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace lg {

Rational FlowAssignment::at(std::int64_t id) const {
  auto it = flows.find(id);
  return it == flows.end() ? Rational(0) : it->second;
}

bool FlowAssignment::positive(std::int64_t id) const {
  auto it = flows.find(id);
  return it != flows.end() && it->second > 0;
}

Rational vertex_in_flow(const LearningGraph& lg, int layer, int vertex_pos,
                        const FlowAssignment& flow) {
  if (layer == 0) return 1;
  Rational sum = 0;
  for (const Transition& t : lg.stages[layer - 1])
    if (t.to == vertex_pos) sum += flow.at(t.id);
  return sum;
}

namespace {

void collect_ids(const LearningGraph& lg, std::unordered_set<std::int64_t>& ids) {
  for (const auto& stage : lg.stages)
    for (const auto& t : stage) ids.insert(t.id);
  for (const auto& a : lg.attachments)
    if (a.graph) collect_ids(*a.graph, ids);
}

// Verifies one graph whose source must emit `expected` total flow; appends
// subroutine stage sums (aggregated across attachments) into `sub_sums`.
void check_into(const LearningGraph& lg, const FlowAssignment& flow,
                const Rational& expected, ValidationReport& report,
                std::vector<Rational>& sub_sums, const std::string& prefix) {
  const int stages = lg.stage_count();
  std::vector<std::vector<Rational>> in(lg.layers.size());
  for (std::size_t layer = 0; layer < lg.layers.size(); ++layer)
    in[layer].assign(lg.layers[layer].size(), Rational(0));
  in[0][0] = expected;

  for (int s = 0; s < stages; ++s) {
    Rational sum = 0;
    std::vector<Rational> out(lg.layers[s].size(), Rational(0));
    for (const Transition& t : lg.stages[s]) {
      Rational p = flow.at(t.id);
      if (p < 0)
        report.violations.push_back(prefix + "negative flow on transition " +
                                    std::to_string(t.id));
      sum += p;
      out[t.from] += p;
      in[s + 1][t.to] += p;
    }
    if (prefix.empty()) {
      report.stage_flow_sums.push_back(sum);
      if (s == 0 && sum != 1)
        report.violations.push_back("source flow != 1");
      else if (sum != expected)
        report.violations.push_back("stage " + std::to_string(s + 1) +
                                    " flow sum != 1");
    } else {
      if (static_cast<int>(sub_sums.size()) <= s) sub_sums.resize(s + 1, Rational(0));
      sub_sums[s] += sum;
    }
    for (std::size_t pos = 0; pos < out.size(); ++pos)
      if (out[pos] != in[s][pos])
        report.violations.push_back(prefix + "flow not conserved at layer " +
                                    std::to_string(s) + " vertex " + std::to_string(pos));
  }

  for (const Attachment& a : lg.attachments) {
    if (!a.graph) continue;
    check_into(*a.graph, flow, in.back()[a.vertex], report, sub_sums,
               prefix + "attachment@" + std::to_string(a.vertex) + ": ");
  }
}

}  // namespace

ValidationReport check_flow(const LearningGraph& lg, const FlowAssignment& flow) {
  std::unordered_set<std::int64_t> ids;
  collect_ids(lg, ids);
  for (const auto& [id, p] : flow.flows)
    if (!ids.count(id))
      throw std::invalid_argument("check_flow: unknown transition id " +
                                  std::to_string(id));

  ValidationReport report;
  std::vector<Rational> sub_sums;
  check_into(lg, flow, Rational(1), report, sub_sums, "");
  for (std::size_t d = 0; d < sub_sums.size(); ++d) {
    report.stage_flow_sums.push_back(sub_sums[d]);
    if (sub_sums[d] != 1)
      report.violations.push_back("subroutine stage " + std::to_string(d + 1) +
                                  " flow sum != 1");
  }
  return report;
}

Rational average_length(const LearningGraph& lg, int stage, const FlowAssignment& flow) {
  if (stage < 0 || stage >= lg.stage_count())
    throw std::invalid_argument("average_length: no such stage");
  Rational sum = 0, weighted = 0;
  for (const Transition& t : lg.stages[stage]) {
    Rational p = flow.at(t.id);
    sum += p;
    weighted += p * transition_length(lg, stage, t);
  }
  if (sum != 1)
    throw std::invalid_argument("average_length: stage flows must sum to 1");
  return weighted;
}

std::pair<LearningGraph, FlowAssignment> append_subroutine(
    const LearningGraph& lg, const FlowAssignment& flow,
    const std::vector<SubroutineSpec>& subs) {
  if (!lg.attachments.empty())
    throw std::invalid_argument("append_subroutine: graph already has attachments");

  LearningGraph out = lg;
  FlowAssignment combined = flow;
  std::int64_t next_id = lg.max_transition_id() + 1;

  for (const SubroutineSpec& spec : subs) {
    if (!spec.graph) throw std::invalid_argument("append_subroutine: missing graph");
    if (spec.vertex < 0 || spec.vertex >= static_cast<int>(lg.final_layer().size()))
      throw std::invalid_argument("append_subroutine: no such final vertex");
    const LVertex& host = lg.final_layer()[spec.vertex];
    for (int q : spec.graph->ground)
      if (std::binary_search(host.queried.begin(), host.queried.end(), q))
        throw std::invalid_argument(
            "append_subroutine: subroutine universe overlaps the attachment vertex");

    std::int64_t offset = next_id;
    auto shifted = std::make_shared<const LearningGraph>(
        with_offset_ids(*spec.graph, offset));
    next_id = shifted->max_transition_id() + 1;
    out.attachments.push_back({spec.vertex, shifted});

    Rational p_s = vertex_in_flow(lg, static_cast<int>(lg.layers.size()) - 1,
                                  spec.vertex, flow);
    if (p_s == 0) continue;
    for (const auto& [id, p] : spec.flow.flows)
      if (p != 0) combined.flows[id + offset] = p * p_s;
  }
  return {std::move(out), std::move(combined)};
}

}  // namespace lg
