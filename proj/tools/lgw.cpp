// lgw: learning-graph workbench front end.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lg/analysis.hpp"
#include "lg/builders.hpp"
#include "lg/optimize.hpp"
#include "lg/serialize.hpp"

namespace {

struct Options {
  std::string family = "kdist";
  int n = 0;
  int k = 0;
  int r = 0;
  std::string s = "1/2";
  std::string pattern_file;
  std::string instance_file;
  std::string gen;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string emit = "text";
  std::int64_t cap_nodes = 1000000;
  std::int64_t samples = 100000;
  std::int64_t group_cap = lg::SymmetryGroup::kDefaultOrderCap;
  int max_k = 6;
  std::string n_list;
  std::string input_file;  // verify
};

lg::Rational parse_ratio(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return lg::Rational(lg::BigInt(text));
  return lg::Rational(lg::BigInt(text.substr(0, slash)),
                      lg::BigInt(text.substr(slash + 1)));
}

std::vector<int> parse_csv(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

lg::SubgraphPattern load_pattern(const Options& opt) {
  if (opt.pattern_file.empty()) throw std::runtime_error("--pattern is required");
  std::ifstream in = open_or_throw(opt.pattern_file);
  return lg::parse_pattern(in);
}

lg::ProblemInstance resolve_instance(const Options& opt, bool graph_kind,
                                     const std::function<lg::ProblemInstance()>&
                                         canonical) {
  if (!opt.instance_file.empty()) {
    std::ifstream in = open_or_throw(opt.instance_file);
    return graph_kind ? lg::parse_graph_instance(in, opt.n)
                      : lg::parse_distinctness_instance(in, opt.n);
  }
  if (!opt.gen.empty()) {
    if (!opt.seed_set) throw std::runtime_error("--gen requires --seed");
    if (!graph_kind) throw std::runtime_error("--gen supports graph families only");
    auto colon = opt.gen.find(':');
    std::string mode = opt.gen.substr(0, colon);
    double p = 0.5;
    if (colon != std::string::npos)
      p = lg::to_double(parse_ratio(opt.gen.substr(colon + 1)));
    std::mt19937_64 rng(opt.seed);
    if (mode == "gnp") return lg::random_graph(opt.n, p, rng);
    if (mode == "positive") {
      lg::SubgraphPattern h = opt.family == "clique" ? lg::clique_pattern(opt.k)
                                                     : load_pattern(opt);
      return lg::random_positive_graph(opt.n, h, p, rng);
    }
    throw std::runtime_error("unknown generator spec (use gnp:N/D or positive:N/D)");
  }
  return canonical();
}

lg::ProblemInstance canonical_distinctness(int n, int k) {
  // First k values equal, the rest pairwise distinct.
  std::vector<int> values(n);
  for (int i = 0; i < n; ++i) values[i] = i < k ? 0 : i - k + 1;
  return lg::ProblemInstance::distinctness(values, n);
}

lg::ProblemInstance canonical_embedding(int n, const lg::SubgraphPattern& h) {
  std::vector<std::pair<int, int>> edges = h.edges;
  return lg::ProblemInstance::graph(n, edges);
}

lg::BuildResult run_build(const Options& opt) {
  lg::BuildLimits limits;
  limits.max_vertices = opt.cap_nodes;
  if (opt.n <= 0 || opt.k <= 0) throw std::runtime_error("need -n and -k");
  if (opt.family == "kdist") {
    int r = opt.r > 0 ? opt.r : lg::default_r(opt.n, opt.k);
    auto x = resolve_instance(opt, false,
                              [&] { return canonical_distinctness(opt.n, opt.k); });
    return lg::build_kdistinctness(opt.n, opt.k, r, x, limits);
  }
  if (opt.family == "clique") {
    int r = opt.r > 0 ? opt.r : std::max(opt.k, lg::default_sub_r(opt.n, opt.k - 1));
    auto x = resolve_instance(opt, true, [&] {
      return canonical_embedding(opt.n, lg::clique_pattern(opt.k));
    });
    return lg::build_kclique(opt.n, opt.k, r, x, 0, limits);
  }
  if (opt.family == "subgraph") {
    lg::SubgraphPattern h = load_pattern(opt);
    int r = opt.r > 0 ? opt.r : std::max(h.k, lg::default_sub_r(opt.n, h.k - 1));
    auto x =
        resolve_instance(opt, true, [&] { return canonical_embedding(opt.n, h); });
    return lg::build_subgraph(opt.n, h, r, parse_ratio(opt.s), x, 0, limits);
  }
  throw std::runtime_error("unknown family: " + opt.family);
}

lg::SymmetryGroup build_group(const Options& opt, const lg::LearningGraph& g) {
  if (g.universe.kind == lg::IndexUniverse::Kind::Positions)
    return lg::SymmetryGroup::positions(g.universe, g.ground, opt.group_cap);
  return lg::SymmetryGroup::graph_vertices(g.universe.n, opt.group_cap);
}

int emit_or_die(const Options& opt, const lg::Json& as_json,
                const std::string& as_text) {
  if (opt.emit == "json") {
    std::cout << as_json.dump(2) << "\n";
    return 0;
  }
  if (opt.emit == "text") {
    std::cout << as_text;
    return 0;
  }
  std::cerr << "dot output is only available for graphs\n";
  return 2;
}

int cmd_gtable(const Options& opt) {
  auto rows = lg::table6(opt.max_k);
  std::ostringstream text;
  for (const auto& row : rows)
    text << row.family << " " << row.k << "  g=" << row.g
         << "  exponent=" << row.exponent << "\n";
  return emit_or_die(opt, lg::table6_json(rows), text.str());
}

int cmd_exponent(const Options& opt) {
  lg::SubgraphPattern h = load_pattern(opt);
  lg::Rational g = lg::g_of_h(h);
  lg::Rational e = lg::containment_exponent(h);
  lg::Json j;
  j["k"] = h.k;
  j["l"] = h.min_degree;
  j["m"] = h.m_edges;
  j["g"] = lg::rational_json(g);
  j["exponent"] = lg::rational_json(e);
  std::ostringstream text;
  text << "k=" << h.k << " l=" << h.min_degree << " m=" << h.m_edges << " g=" << g
       << " exponent=" << e << "\n";
  return emit_or_die(opt, j, text.str());
}

int cmd_build(const Options& opt) {
  lg::BuildResult res = run_build(opt);
  if (opt.emit == "dot") {
    std::cout << lg::graph_dot(res.graph, &res.flow);
    return 0;
  }
  std::ostringstream text;
  text << "layers:";
  for (const auto& layer : res.graph.layers) text << " " << layer.size();
  text << "\nstages:";
  for (const auto& stage : res.graph.stages) text << " " << stage.size();
  text << "\nattachments: " << res.graph.attachments.size() << "\n";
  if (res.conditioning_k) text << "conditioning 1/p: " << *res.conditioning_k << "\n";
  for (const auto& note : res.notes) text << "note: " << note << "\n";
  return emit_or_die(opt, lg::graph_json(res.graph, res.flow), text.str());
}

int cmd_verify(const Options& opt) {
  if (opt.input_file.empty()) throw std::runtime_error("verify needs a graph file");
  std::ifstream in = open_or_throw(opt.input_file);
  nlohmann::json j = nlohmann::json::parse(in);
  lg::LearningGraph g = lg::graph_from_json(j);
  lg::ValidationReport report = lg::validate_structure(g);
  if (report.ok() && j.contains("flow")) {
    lg::ValidationReport fr = lg::check_flow(g, lg::flow_from_json(j));
    report.violations.insert(report.violations.end(), fr.violations.begin(),
                             fr.violations.end());
    report.flags.insert(report.flags.end(), fr.flags.begin(), fr.flags.end());
    report.stage_flow_sums = fr.stage_flow_sums;
  }
  std::ostringstream text;
  text << (report.ok() ? "ok" : "INVALID") << "\n";
  for (const auto& v : report.violations) text << "violation: " << v << "\n";
  for (const auto& f : report.flags) text << "flag: " << f << "\n";
  int code = emit_or_die(opt, lg::validation_json(report), text.str());
  return code != 0 ? code : (report.ok() ? 0 : 1);
}

int cmd_analyze(const Options& opt) {
  lg::BuildResult res = run_build(opt);
  lg::SymmetryGroup g = build_group(opt, res.graph);
  lg::ComplexityReport report = lg::total_complexity(res.graph, {res.flow}, g);
  report.conditioning_k = res.conditioning_k;
  return emit_or_die(opt, lg::complexity_json(report),
                     lg::complexity_table(report));
}

int cmd_optimize(const Options& opt) {
  std::vector<lg::MonomialTerm> terms;
  bool two = false;
  if (opt.family == "kdist") {
    terms = lg::stage_exponent_terms(lg::Family::KDistinctness, opt.k);
  } else if (opt.family == "clique") {
    terms = lg::stage_exponent_terms(lg::Family::KClique, opt.k);
  } else if (opt.family == "subgraph") {
    lg::SubgraphPattern h = load_pattern(opt);
    terms = lg::stage_exponent_terms(lg::Family::Subgraph, h.k, h.min_degree,
                                     h.m_edges);
    two = true;
  } else {
    throw std::runtime_error("unknown family: " + opt.family);
  }
  lg::BalanceSolution sol = lg::balance(terms, two);
  std::ostringstream text;
  text << "alpha=" << sol.alpha;
  if (two) text << " beta=" << sol.beta;
  text << " value=" << sol.value << " tight={";
  for (std::size_t i = 0; i < sol.tight.size(); ++i)
    text << (i ? "," : "") << terms[sol.tight[i]].label;
  text << "}\n";
  return emit_or_die(opt, lg::balance_json(sol), text.str());
}

int cmd_scaling(const Options& opt) {
  if (opt.n_list.empty()) throw std::runtime_error("--n-list is required");
  lg::Family family = opt.family == "clique" ? lg::Family::KClique
                                             : lg::Family::KDistinctness;
  if (opt.family == "subgraph")
    throw std::runtime_error("scaling supports kdist and clique only");
  lg::ScalingReport report =
      lg::scaling_report(family, opt.k, parse_csv(opt.n_list));
  return emit_or_die(opt, lg::scaling_json(report), lg::scaling_table(report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"learning-graph workbench"};
  app.require_subcommand(1);
  app.set_config("--config");

  Options opt;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--family", opt.family, "kdist|clique|subgraph");
    cmd->add_option("-n,--n", opt.n, "input size (positions or graph vertices)");
    cmd->add_option("-k,--k", opt.k, "certificate size");
    cmd->add_option("-r,--r", opt.r, "stage-1 load (0 = default rule)");
    cmd->add_option("-s,--s", opt.s, "edge probability NUM/DEN");
    cmd->add_option("--pattern", opt.pattern_file, "edge-list file for H");
    cmd->add_option("--instance", opt.instance_file, "instance file");
    cmd->add_option("--gen", opt.gen, "generator spec (gnp:N/D, positive:N/D)");
    cmd->add_option("--seed", opt.seed, "generator seed")
        ->each([&](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--emit", opt.emit, "json|dot|text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    cmd->add_option("--cap-nodes", opt.cap_nodes, "L-vertex cap");
    cmd->add_option("--samples", opt.samples, "Monte-Carlo samples");
    cmd->add_option("--group-cap", opt.group_cap, "exhaustive group-order cap");
    cmd->add_option("--max-k", opt.max_k, "largest table parameter");
    cmd->add_option("--n-list", opt.n_list, "comma-separated sizes");
    return cmd;
  };

  auto* gtable = add_common(app.add_subcommand("gtable", "closed-form table"));
  auto* exponent = add_common(app.add_subcommand("exponent", "pattern exponent"));
  auto* build = add_common(app.add_subcommand("build", "construct graph + flow"));
  auto* verify = add_common(app.add_subcommand("verify", "validate a graph file"));
  verify->add_option("file", opt.input_file, "graph JSON");
  auto* analyze = add_common(app.add_subcommand("analyze", "complexity report"));
  auto* optimize = add_common(app.add_subcommand("optimize", "exponent balance"));
  auto* scaling = add_common(app.add_subcommand("scaling", "speciality scaling"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gtable->parsed()) return cmd_gtable(opt);
    if (exponent->parsed()) return cmd_exponent(opt);
    if (build->parsed()) return cmd_build(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (analyze->parsed()) return cmd_analyze(opt);
    if (optimize->parsed()) return cmd_optimize(opt);
    if (scaling->parsed()) return cmd_scaling(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
