#include "lg/instance.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lg {

namespace {

std::vector<std::pair<int, int>> normalize_edges(int k,
                                                 std::vector<std::pair<int, int>> edges) {
  for (auto& [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= k || v >= k)
      throw std::invalid_argument("edge endpoints out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<std::pair<int, int>> read_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int u, v;
    if (ls >> u >> v) edges.push_back({u, v});
  }
  return edges;
}

}  // namespace

ProblemInstance ProblemInstance::distinctness(std::vector<int> values, int alphabet) {
  if (alphabet < 1) throw std::invalid_argument("alphabet must be positive");
  for (int v : values)
    if (v < 0 || v >= alphabet) throw std::invalid_argument("value outside alphabet");
  ProblemInstance x;
  x.kind = Kind::Distinctness;
  x.n = static_cast<int>(values.size());
  x.alphabet = alphabet;
  x.values = std::move(values);
  return x;
}

ProblemInstance ProblemInstance::graph(int n,
                                       const std::vector<std::pair<int, int>>& edges) {
  ProblemInstance x;
  x.kind = Kind::Graph;
  x.n = n;
  IndexUniverse u = edge_slot_universe(n);
  x.adjacency.assign(u.size(), 0);
  for (auto [a, b] : edges) x.adjacency[u.edge_id(a, b)] = 1;
  return x;
}

ProblemInstance ProblemInstance::graph_mask(int n, std::uint64_t edge_mask) {
  ProblemInstance x;
  x.kind = Kind::Graph;
  x.n = n;
  IndexUniverse u = edge_slot_universe(n);
  if (u.size() > 64) throw std::invalid_argument("graph_mask limited to 64 edge slots");
  x.adjacency.assign(u.size(), 0);
  for (int id = 0; id < u.size(); ++id)
    if (edge_mask >> id & 1) x.adjacency[id] = 1;
  return x;
}

bool ProblemInstance::edge(int u, int v) const {
  if (kind != Kind::Graph) throw std::logic_error("edge() on a non-graph instance");
  return adjacency[index_universe().edge_id(u, v)] != 0;
}

IndexUniverse ProblemInstance::index_universe() const {
  return kind == Kind::Distinctness ? positions_universe(n) : edge_slot_universe(n);
}

std::string ProblemInstance::label() const {
  std::ostringstream out;
  if (kind == Kind::Distinctness) {
    out << "x=";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << ",";
      out << values[i];
    }
  } else {
    IndexUniverse u = index_universe();
    out << "G" << n << "=";
    bool first = true;
    for (int id = 0; id < u.size(); ++id)
      if (adjacency[id]) {
        auto [a, b] = u.edge_endpoints(id);
        if (!first) out << ",";
        out << a << "-" << b;
        first = false;
      }
  }
  return out.str();
}

std::vector<int> SubgraphPattern::vertex_order() const {
  std::vector<int> order;
  for (int v = 0; v < k; ++v)
    if (v != apex) order.push_back(v);
  order.push_back(apex);
  return order;
}

SubgraphPattern decompose_pattern(int k, std::vector<std::pair<int, int>> edges) {
  if (k < 1) throw std::invalid_argument("pattern needs at least one vertex");
  SubgraphPattern h;
  h.k = k;
  h.edges = normalize_edges(k, std::move(edges));
  std::vector<int> degree(k, 0);
  for (auto [u, v] : h.edges) {
    ++degree[u];
    ++degree[v];
  }
  h.min_degree = *std::min_element(degree.begin(), degree.end());
  h.apex = static_cast<int>(std::min_element(degree.begin(), degree.end()) -
                            degree.begin());
  for (auto e : h.edges) {
    if (e.first == h.apex || e.second == h.apex)
      h.apex_edges.push_back(e);
    else
      h.residual_edges.push_back(e);
  }
  h.m_edges = static_cast<int>(h.residual_edges.size());
  return h;
}

SubgraphPattern parse_pattern(std::istream& in) {
  std::vector<std::pair<int, int>> edges = read_edge_list(in);
  if (edges.empty()) throw std::invalid_argument("empty pattern edge list");
  int k = 0;
  for (auto [u, v] : edges) k = std::max({k, u + 1, v + 1});
  return decompose_pattern(k, std::move(edges));
}

SubgraphPattern clique_pattern(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) edges.push_back({u, v});
  return decompose_pattern(k, std::move(edges));
}

SubgraphPattern path_pattern(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < k; ++v) edges.push_back({v, v + 1});
  return decompose_pattern(k, std::move(edges));
}

SubgraphPattern cycle_pattern(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < k; ++v) edges.push_back({v, v + 1});
  edges.push_back({0, k - 1});
  return decompose_pattern(k, std::move(edges));
}

SubgraphPattern star_pattern(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return decompose_pattern(leaves + 1, std::move(edges));
}

std::optional<Certificate> find_certificate(const ProblemInstance& x, int k) {
  if (x.kind != ProblemInstance::Kind::Distinctness)
    throw std::invalid_argument("distinctness certificate on a graph instance");
  if (k < 1) throw std::invalid_argument("k must be positive");
  // Lexicographically first k-tuple of equal positions: scan values in order
  // and keep the earliest k positions per value.
  std::map<int, std::vector<int>> positions;
  for (int i = 0; i < x.n; ++i) positions[x.values[i]].push_back(i);
  std::optional<Certificate> best;
  for (const auto& [value, where] : positions) {
    if (static_cast<int>(where.size()) < k) continue;
    std::vector<int> pick(where.begin(), where.begin() + k);
    if (!best || pick < best->indices) best = Certificate{pick, {}};
  }
  return best;
}

namespace {

bool extend_embedding(const ProblemInstance& x, const SubgraphPattern& h,
                      std::vector<int>& image, std::vector<char>& used, int depth) {
  if (depth == h.k) return true;
  for (int v = 0; v < x.n; ++v) {
    if (used[v]) continue;
    bool ok = true;
    for (auto [a, b] : h.edges) {
      int other = a == depth ? b : b == depth ? a : -1;
      if (other >= 0 && other < depth && !x.edge(v, image[other])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    image[depth] = v;
    used[v] = 1;
    if (extend_embedding(x, h, image, used, depth + 1)) return true;
    used[v] = 0;
  }
  return false;
}

}  // namespace

std::optional<Certificate> find_certificate(const ProblemInstance& x,
                                            const SubgraphPattern& h) {
  if (x.kind != ProblemInstance::Kind::Graph)
    throw std::invalid_argument("subgraph certificate on a non-graph instance");
  if (x.n < h.k) return std::nullopt;
  std::vector<int> image(h.k, -1);
  std::vector<char> used(x.n, 0);
  if (!extend_embedding(x, h, image, used, 0)) return std::nullopt;
  Certificate c;
  c.embedding = image;
  IndexUniverse u = x.index_universe();
  for (auto [a, b] : h.edges) c.indices.push_back(u.edge_id(image[a], image[b]));
  std::sort(c.indices.begin(), c.indices.end());
  return c;
}

std::vector<ProblemInstance> all_distinctness_instances(int n, int alphabet) {
  std::vector<ProblemInstance> out;
  std::vector<int> values(n, 0);
  while (true) {
    out.push_back(ProblemInstance::distinctness(values, alphabet));
    int i = n - 1;
    while (i >= 0 && values[i] == alphabet - 1) values[i--] = 0;
    if (i < 0) break;
    ++values[i];
  }
  return out;
}

namespace {

bool connected(int k, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> comp(k);
  for (int v = 0; v < k; ++v) comp[v] = v;
  std::function<int(int)> find = [&](int v) {
    while (comp[v] != v) v = comp[v] = comp[comp[v]];
    return v;
  };
  for (auto [u, v] : edges) comp[find(u)] = find(v);
  for (int v = 1; v < k; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> connected_patterns(int k) {
  IndexUniverse u = edge_slot_universe(k);
  if (u.size() > 30) throw std::invalid_argument("pattern enumeration limited to k<=8");
  std::vector<std::vector<std::pair<int, int>>> out;
  for (std::uint32_t mask = 0; mask < (1u << u.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (int id = 0; id < u.size(); ++id)
      if (mask >> id & 1) edges.push_back(u.edge_endpoints(id));
    if (connected(k, edges)) out.push_back(std::move(edges));
  }
  return out;
}

ProblemInstance random_graph(int n, double p, std::mt19937_64& rng) {
  IndexUniverse u = edge_slot_universe(n);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int id = 0; id < u.size(); ++id)
    if (coin(rng)) edges.push_back(u.edge_endpoints(id));
  return ProblemInstance::graph(n, edges);
}

ProblemInstance random_positive_graph(int n, const SubgraphPattern& h, double p,
                                      std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    ProblemInstance x = random_graph(n, p, rng);
    if (find_certificate(x, h)) return x;
  }
  throw std::runtime_error("no positive instance found; raise p or n");
}

ProblemInstance parse_distinctness_instance(std::istream& in, int alphabet) {
  std::string text(std::istreambuf_iterator<char>(in), {});
  std::vector<int> values;
  std::istringstream ts(text);
  std::string tok;
  while (std::getline(ts, tok, ',')) {
    std::istringstream vs(tok);
    int v;
    if (vs >> v) values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty distinctness instance");
  return ProblemInstance::distinctness(std::move(values), alphabet);
}

ProblemInstance parse_graph_instance(std::istream& in, int n) {
  return ProblemInstance::graph(n, read_edge_list(in));
}

}  // namespace lg
