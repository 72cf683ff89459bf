#include "lg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lg {

namespace {

double to_double_12(long double v) {
  // Round through 12 significant digits so reports are platform-stable.
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return std::stod(out.str());
}

bool stage_has_zero_length(const LearningGraph& lg, int stage) {
  for (const Transition& t : lg.stages[stage])
    if (transition_length(lg, stage, t) == 0) return true;
  return false;
}

void collect_ids(const LearningGraph& lg, std::set<std::int64_t>& ids);

}  // namespace

double stage_complexity(const Rational& length, const Rational& speciality) {
  if (length < 0) throw std::invalid_argument("stage length must be non-negative");
  if (speciality < 1) throw std::invalid_argument("speciality is at least 1");
  return to_double_12(to_long_double(length) *
                      std::sqrt(to_long_double(speciality)));
}

namespace {

SubroutineComplexity subroutine_complexity(const LearningGraph& lg, const GraphIndex& gi,
                                           const std::vector<FlowAssignment>& flows,
                                           const SymmetryGroup& g) {
  if (lg.attachments.empty())
    throw std::invalid_argument("no subroutine attached");
  int final_layer = static_cast<int>(lg.layers.size()) - 1;

  SubroutineComplexity out;
  long double best_l = 0;
  Rational best_t = 0;
  for (std::size_t inst = 0; inst < flows.size(); ++inst) {
    const FlowAssignment& flow = flows[inst];
    long double avg = 0;
    for (const Attachment& a : lg.attachments) {
      Rational p = vertex_in_flow(lg, final_layer, a.vertex, flow);
      if (p == 0) continue;
      // Unit flow of the appended graph, recovered from the composite flow.
      std::set<std::int64_t> sub_ids;
      collect_ids(*a.graph, sub_ids);
      FlowAssignment unit;
      for (std::int64_t id : sub_ids) {
        Rational f = flow.at(id);
        if (f != 0) unit.flows[id] = f / p;
      }
      SymmetryGroup sub_group = SymmetryGroup::positions(
          a.graph->universe, a.graph->ground,
          std::numeric_limits<std::int64_t>::max());
      ComplexityReport sub = total_complexity(*a.graph, {unit}, sub_group);
      avg += to_long_double(p) * sub.total;
    }
    Rational t = max_vertex_speciality(gi, final_layer, g, flow);
    best_l = std::max(best_l, avg);
    best_t = std::max(best_t, t);
  }
  out.average_complexity = to_double_12(best_l);
  out.speciality = best_t;
  out.complexity = to_double_12(best_l * std::sqrt(to_long_double(best_t)));
  SymmetryCheck check = is_symmetric_vertex_layer(gi, final_layer, g, flows);
  out.symmetric = check.symmetric;
  out.symmetry_checked = true;
  return out;
}

}  // namespace

ComplexityReport total_complexity(const LearningGraph& lg,
                                  const std::vector<FlowAssignment>& flows,
                                  const SymmetryGroup& g) {
  if (flows.empty()) throw std::invalid_argument("at least one flow is required");
  GraphIndex gi(lg);
  ComplexityReport report;
  long double total = 0;
  for (int s = 0; s < lg.stage_count(); ++s) {
    StageComplexity stage;
    stage.stage = std::to_string(s + 1);
    stage.degenerate = stage_has_zero_length(lg, s);
    SymmetryCheck check = is_symmetric_stage(gi, s, g, flows);
    stage.symmetric = check.symmetric;
    stage.symmetry_checked = true;
    Rational length = 0, spec = 1;
    for (const FlowAssignment& flow : flows) {
      length = std::max(length, average_length(lg, s, flow));
      spec = std::max(spec, max_speciality(gi, s, g, flow));
    }
    stage.length = length;
    stage.speciality = spec;
    stage.complexity = stage_complexity(length, spec);
    total += stage.complexity;
    report.stages.push_back(std::move(stage));
  }
  if (!lg.attachments.empty()) {
    report.subroutine = subroutine_complexity(lg, gi, flows, g);
    total += report.subroutine->complexity;
  }
  report.total = to_double_12(total);
  return report;
}

double subroutine_stage_complexity(const LearningGraph& lg,
                                   const std::vector<FlowAssignment>& flows,
                                   const SymmetryGroup& g) {
  GraphIndex gi(lg);
  return subroutine_complexity(lg, gi, flows, g).complexity;
}

namespace {

void collect_ids(const LearningGraph& lg, std::set<std::int64_t>& ids) {
  for (const auto& stage : lg.stages)
    for (const Transition& t : stage) ids.insert(t.id);
  for (const Attachment& a : lg.attachments) collect_ids(*a.graph, ids);
}

}  // namespace

ConditionResult condition_flow(const LearningGraph& lg, const FlowAssignment& flow,
                               const std::function<bool(const LVertex&)>& selector,
                               const Rational& k_bound) {
  std::set<std::int64_t> known;
  collect_ids(lg, known);
  for (const auto& [id, f] : flow.flows)
    if (!known.count(id)) throw std::invalid_argument("flow names an unknown transition");

  int final_layer = static_cast<int>(lg.layers.size()) - 1;
  int stages = lg.stage_count();

  // keep[v] = fraction of v's original out-flow that still reaches a selected
  // final vertex; pulled backward one stage at a time.
  std::vector<Rational> keep(lg.layers[final_layer].size());
  Rational p = 0;
  for (std::size_t pos = 0; pos < keep.size(); ++pos) {
    bool ok = selector(lg.layers[final_layer][pos]);
    keep[pos] = ok ? 1 : 0;
    if (ok) p += vertex_in_flow(lg, final_layer, static_cast<int>(pos), flow);
  }
  if (p == 0) throw std::runtime_error("selector removes all flow");

  ConditionResult out;
  out.flow.instance_label = flow.instance_label;
  for (int s = stages - 1; s >= 0; --s) {
    std::vector<Rational> old_out(lg.layers[s].size()), new_out(lg.layers[s].size());
    for (const Transition& t : lg.stages[s]) {
      Rational f = flow.at(t.id);
      if (f == 0) continue;
      Rational kept = f * keep[t.to];
      old_out[t.from] += f;
      new_out[t.from] += kept;
      if (kept != 0) out.flow.flows[t.id] = kept / p;
    }
    keep.assign(lg.layers[s].size(), Rational(0));
    for (std::size_t pos = 0; pos < keep.size(); ++pos)
      if (old_out[pos] != 0) keep[pos] = new_out[pos] / old_out[pos];
  }
  // Attachment flows follow their host vertex (none in typical use).
  for (const Attachment& a : lg.attachments) {
    bool ok = selector(lg.layers[final_layer][a.vertex]);
    if (!ok) continue;
    std::set<std::int64_t> sub_ids;
    collect_ids(*a.graph, sub_ids);
    for (std::int64_t id : sub_ids) {
      Rational f = flow.at(id);
      if (f != 0) out.flow.flows[id] = f / p;
    }
  }
  out.one_over_p = Rational(1) / p;
  out.warning = out.one_over_p >= k_bound;
  return out;
}

namespace {

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double n = static_cast<double>(xs.size());
  double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
  double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ScalingReport scaling_report(Family family, int k, const std::vector<int>& n_list,
                             const std::function<int(int)>& r_rule) {
  if (family == Family::Subgraph)
    throw std::invalid_argument("scaling is supported for the distinctness and "
                                "clique families only");
  if (n_list.size() < 3) throw std::invalid_argument("need at least 3 sizes");

  ScalingReport report;
  report.family = family;
  report.k = k;
  report.n_list = n_list;

  constexpr std::int64_t no_cap = std::numeric_limits<std::int64_t>::max();
  for (int n : n_list) {
    int r = r_rule ? r_rule(n)
                   : (family == Family::KDistinctness
                          ? default_r(n, k)
                          : std::max(k, default_sub_r(n, k - 1)));
    report.r_list.push_back(r);

    LearningGraph lg;
    FlowAssignment flow;
    SymmetryGroup g = SymmetryGroup::positions(positions_universe(1), {}, no_cap);
    std::vector<int> marked(k);
    std::iota(marked.begin(), marked.end(), 0);
    if (family == Family::KDistinctness) {
      lg = kdist_structure(n, k, r);
      flow = kdist_flow(lg, marked);
      g = SymmetryGroup::positions(lg.universe, lg.ground, no_cap);
    } else {
      lg = kclique_structure(n, k, r);
      flow = kclique_flow(lg, marked);
      g = SymmetryGroup::graph_vertices(n, no_cap);
    }

    GraphIndex gi(lg);
    std::vector<Rational> specs, lens;
    for (int s = 0; s < lg.stage_count(); ++s) {
      lens.push_back(average_length(lg, s, flow));
      specs.push_back(max_speciality(gi, s, g, flow));
    }
    report.specialities.push_back(std::move(specs));
    report.lengths.push_back(std::move(lens));
  }

  int stage_count = static_cast<int>(report.specialities[0].size());
  for (int s = 0; s < stage_count; ++s) {
    std::vector<double> log_n, log_t, log_model;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      double n = n_list[i], r = report.r_list[i];
      log_n.push_back(std::log(n));
      log_t.push_back(std::log(to_double(report.specialities[i][s])));
      // Model speciality: 1 for stage 1, n^(j-1)/r^(j-2) after.
      log_model.push_back(s == 0 ? 0.0 : s * std::log(n) - (s - 1) * std::log(r));
    }
    ScalingStageFit fit;
    fit.stage = std::to_string(s + 1);
    fit.fitted = fit_slope(log_n, log_t);
    fit.predicted = fit_slope(log_n, log_model);
    report.fits.push_back(fit);
  }
  return report;
}

std::string complexity_table(const ComplexityReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "stage" << std::setw(16) << "length"
      << std::setw(18) << "speciality" << std::setw(16) << "complexity"
      << "flags\n";
  auto row = [&](const std::string& name, const std::string& len,
                 const std::string& spec, double c, const std::string& flags) {
    std::ostringstream cv;
    cv << std::setprecision(12) << c;
    out << std::left << std::setw(12) << name << std::setw(16) << len << std::setw(18)
        << spec << std::setw(16) << cv.str() << flags << "\n";
  };
  for (const StageComplexity& s : report.stages) {
    std::ostringstream len, spec;
    len << s.length;
    spec << s.speciality;
    std::string flags;
    if (s.symmetry_checked && !s.symmetric) flags += "not-symmetric ";
    if (s.degenerate) flags += "degenerate ";
    row(s.stage, len.str(), spec.str(), s.complexity, flags);
  }
  if (report.subroutine) {
    std::ostringstream len, spec;
    len << std::setprecision(12) << report.subroutine->average_complexity;
    spec << report.subroutine->speciality;
    std::string flags;
    if (report.subroutine->symmetry_checked && !report.subroutine->symmetric)
      flags += "not-symmetric ";
    row("subroutine", len.str(), spec.str(), report.subroutine->complexity, flags);
  }
  out << std::setprecision(12) << "total: " << report.total << "\n";
  if (report.conditioning_k)
    out << "conditioning 1/p: " << *report.conditioning_k << "\n";
  return out.str();
}

std::string scaling_table(const ScalingReport& report) {
  std::ostringstream out;
  out << (report.family == Family::KDistinctness ? "k-distinctness" : "k-clique")
      << " k=" << report.k << "\n";
  out << std::left << std::setw(8) << "n" << std::setw(8) << "r";
  for (std::size_t s = 0; s < report.specialities[0].size(); ++s)
    out << std::setw(20) << ("T_" + std::to_string(s + 1));
  out << "\n";
  for (std::size_t i = 0; i < report.n_list.size(); ++i) {
    out << std::left << std::setw(8) << report.n_list[i] << std::setw(8)
        << report.r_list[i];
    for (const Rational& t : report.specialities[i]) {
      std::ostringstream cell;
      cell << t;
      out << std::setw(20) << cell.str();
    }
    out << "\n";
  }
  out << std::left << std::setw(8) << "fit" << std::setw(8) << "";
  for (const ScalingStageFit& f : report.fits) {
    std::ostringstream cell;
    cell << std::setprecision(3) << f.fitted << " (" << f.predicted << ")";
    out << std::setw(20) << cell.str();
  }
  out << "\n";
  return out.str();
}

}  // namespace lg
