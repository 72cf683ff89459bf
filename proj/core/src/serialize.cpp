#include "lg/serialize.hpp"

#include <sstream>

namespace lg {

namespace {

std::string big_string(const BigInt& v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

Json vertex_json(const LVertex& v) {
  Json j;
  j["queried"] = v.queried;
  if (v.annotation) j["annotation"] = *v.annotation;
  return j;
}

LVertex vertex_from_json(const nlohmann::json& j) {
  LVertex v;
  v.queried = j.at("queried").get<std::vector<int>>();
  if (j.contains("annotation"))
    v.annotation = j.at("annotation").get<std::vector<int>>();
  return v;
}

}  // namespace

Json rational_json(const Rational& x) {
  Json j;
  j["num"] = big_string(numerator(x));
  j["den"] = big_string(denominator(x));
  return j;
}

Rational rational_from_json(const nlohmann::json& j) {
  BigInt num(j.at("num").get<std::string>());
  BigInt den(j.at("den").get<std::string>());
  return Rational(num, den);
}

Json graph_json(const LearningGraph& lg) {
  Json j;
  j["universe"] = {{"kind", lg.universe.kind == IndexUniverse::Kind::Positions
                                ? "positions"
                                : "edge-slots"},
                   {"n", lg.universe.n}};
  j["ground"] = lg.ground;
  j["layers"] = Json::array();
  for (const auto& layer : lg.layers) {
    Json jl = Json::array();
    for (const LVertex& v : layer) jl.push_back(vertex_json(v));
    j["layers"].push_back(std::move(jl));
  }
  j["stages"] = Json::array();
  for (const auto& stage : lg.stages) {
    Json js = Json::array();
    for (const Transition& t : stage)
      js.push_back({{"from", t.from}, {"to", t.to}, {"id", t.id}});
    j["stages"].push_back(std::move(js));
  }
  j["attachments"] = Json::array();
  for (const Attachment& a : lg.attachments)
    j["attachments"].push_back({{"vertex", a.vertex}, {"graph", graph_json(*a.graph)}});
  return j;
}

Json graph_json(const LearningGraph& lg, const FlowAssignment& flow) {
  Json j = graph_json(lg);
  Json jf;
  jf["instance"] = flow.instance_label;
  Json entries = Json::array();
  for (const auto& [id, f] : flow.flows)
    entries.push_back({{"id", id}, {"flow", rational_json(f)}});
  jf["transitions"] = std::move(entries);
  j["flow"] = std::move(jf);
  return j;
}

LearningGraph graph_from_json(const nlohmann::json& j) {
  LearningGraph lg;
  const auto& ju = j.at("universe");
  lg.universe.kind = ju.at("kind").get<std::string>() == "positions"
                         ? IndexUniverse::Kind::Positions
                         : IndexUniverse::Kind::EdgeSlots;
  lg.universe.n = ju.at("n").get<int>();
  lg.ground = j.at("ground").get<std::vector<int>>();
  for (const auto& jl : j.at("layers")) {
    std::vector<LVertex> layer;
    for (const auto& jv : jl) layer.push_back(vertex_from_json(jv));
    lg.layers.push_back(std::move(layer));
  }
  for (const auto& js : j.at("stages")) {
    std::vector<Transition> stage;
    for (const auto& jt : js)
      stage.push_back({jt.at("from").get<int>(), jt.at("to").get<int>(),
                       jt.at("id").get<std::int64_t>()});
    lg.stages.push_back(std::move(stage));
  }
  if (j.contains("attachments"))
    for (const auto& ja : j.at("attachments")) {
      Attachment a;
      a.vertex = ja.at("vertex").get<int>();
      a.graph = std::make_shared<LearningGraph>(graph_from_json(ja.at("graph")));
      lg.attachments.push_back(std::move(a));
    }
  return lg;
}

FlowAssignment flow_from_json(const nlohmann::json& j) {
  const auto& jf = j.contains("flow") ? j.at("flow") : j;
  FlowAssignment flow;
  if (jf.contains("instance")) flow.instance_label = jf.at("instance").get<std::string>();
  for (const auto& je : jf.at("transitions"))
    flow.flows[je.at("id").get<std::int64_t>()] = rational_from_json(je.at("flow"));
  return flow;
}

Json validation_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["violations"] = r.violations;
  j["flags"] = r.flags;
  Json sums = Json::array();
  for (const Rational& s : r.stage_flow_sums) sums.push_back(rational_json(s));
  j["stage_flow_sums"] = std::move(sums);
  return j;
}

Json speciality_json(const SpecialityReport& r) {
  Json j;
  j["orbit_size"] = r.orbit_size;
  j["valid"] = r.valid_count;
  j["speciality"] = rational_json(r.speciality);
  return j;
}

Json estimate_json(const EstimateReport& r) {
  Json j;
  j["estimate"] = r.estimate;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["samples"] = r.samples;
  j["hits"] = r.hits;
  j["seed"] = r.seed;
  j["z"] = r.z;
  return j;
}

Json complexity_json(const ComplexityReport& r) {
  Json j;
  Json stages = Json::array();
  for (const StageComplexity& s : r.stages) {
    Json js;
    js["stage"] = s.stage;
    js["length"] = rational_json(s.length);
    js["speciality"] = rational_json(s.speciality);
    js["complexity"] = s.complexity;
    js["symmetric"] = s.symmetric;
    js["symmetry_checked"] = s.symmetry_checked;
    js["degenerate"] = s.degenerate;
    stages.push_back(std::move(js));
  }
  j["stages"] = std::move(stages);
  if (r.subroutine) {
    Json js;
    js["average_complexity"] = r.subroutine->average_complexity;
    js["speciality"] = rational_json(r.subroutine->speciality);
    js["complexity"] = r.subroutine->complexity;
    js["symmetric"] = r.subroutine->symmetric;
    j["subroutine"] = std::move(js);
  }
  j["total"] = r.total;
  if (r.conditioning_k) j["conditioning_k"] = rational_json(*r.conditioning_k);
  return j;
}

Json balance_json(const BalanceSolution& s) {
  Json j;
  j["alpha"] = rational_json(s.alpha);
  j["beta"] = rational_json(s.beta);
  j["value"] = rational_json(s.value);
  j["tight"] = s.tight;
  j["two_variables"] = s.two_variables;
  j["beta_positive"] = s.beta_positive;
  j["sr2_exponent_positive"] = s.sr2_exponent_positive;
  return j;
}

Json table6_json(const std::vector<Table6Row>& rows) {
  Json j = Json::array();
  for (const Table6Row& r : rows)
    j.push_back({{"family", r.family},
                 {"k", r.k},
                 {"g", rational_json(r.g)},
                 {"exponent", rational_json(r.exponent)}});
  return j;
}

Json scaling_json(const ScalingReport& r) {
  Json j;
  j["family"] = r.family == Family::KDistinctness ? "kdist" : "clique";
  j["k"] = r.k;
  j["n_list"] = r.n_list;
  j["r_list"] = r.r_list;
  Json specs = Json::array(), lens = Json::array();
  for (const auto& row : r.specialities) {
    Json jr = Json::array();
    for (const Rational& t : row) jr.push_back(rational_json(t));
    specs.push_back(std::move(jr));
  }
  for (const auto& row : r.lengths) {
    Json jr = Json::array();
    for (const Rational& t : row) jr.push_back(rational_json(t));
    lens.push_back(std::move(jr));
  }
  j["specialities"] = std::move(specs);
  j["lengths"] = std::move(lens);
  Json fits = Json::array();
  for (const ScalingStageFit& f : r.fits)
    fits.push_back(
        {{"stage", f.stage}, {"fitted", f.fitted}, {"predicted", f.predicted}});
  j["fits"] = std::move(fits);
  return j;
}

namespace {

std::string vertex_label(const IndexUniverse& u, const LVertex& v) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < v.queried.size(); ++i) {
    if (i) out << ",";
    out << u.index_name(v.queried[i]);
  }
  out << "}";
  if (v.annotation) {
    out << "|";
    for (std::size_t i = 0; i < v.annotation->size(); ++i) {
      if (i) out << ",";
      out << (*v.annotation)[i];
    }
  }
  return out.str();
}

void dot_graph(std::ostream& out, const LearningGraph& lg, const FlowAssignment* flow,
               const std::string& prefix, int depth) {
  std::string indent(2 * (depth + 1), ' ');
  for (std::size_t layer = 0; layer < lg.layers.size(); ++layer) {
    out << indent << "subgraph cluster_" << prefix << "L" << layer << " {\n";
    out << indent << "  label=\"layer " << layer << "\";\n";
    for (std::size_t pos = 0; pos < lg.layers[layer].size(); ++pos)
      out << indent << "  " << prefix << "v" << layer << "_" << pos << " [label=\""
          << vertex_label(lg.universe, lg.layers[layer][pos]) << "\"];\n";
    out << indent << "}\n";
  }
  for (std::size_t s = 0; s < lg.stages.size(); ++s)
    for (const Transition& t : lg.stages[s]) {
      out << indent << prefix << "v" << s << "_" << t.from << " -> " << prefix << "v"
          << s + 1 << "_" << t.to;
      if (flow) {
        Rational f = flow->at(t.id);
        if (f != 0) out << " [label=\"" << f << "\"]";
      }
      out << ";\n";
    }
  for (std::size_t a = 0; a < lg.attachments.size(); ++a) {
    const Attachment& att = lg.attachments[a];
    std::string sub_prefix = prefix + "a" + std::to_string(a) + "_";
    out << indent << "subgraph cluster_" << sub_prefix << " {\n";
    out << indent << "  label=\"subroutine @ " << att.vertex << "\";\n";
    dot_graph(out, *att.graph, flow, sub_prefix, depth + 1);
    out << indent << "}\n";
    out << indent << prefix << "v" << lg.layers.size() - 1 << "_" << att.vertex
        << " -> " << sub_prefix << "v0_0 [style=dashed];\n";
  }
}

}  // namespace

std::string graph_dot(const LearningGraph& lg, const FlowAssignment* flow) {
  std::ostringstream out;
  out << "digraph learning_graph {\n  rankdir=TB;\n  node [shape=box];\n";
  dot_graph(out, lg, flow, "", 0);
  out << "}\n";
  return out.str();
}

}  // namespace lg
