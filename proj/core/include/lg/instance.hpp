#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lg/universe.hpp"

namespace lg {

/// Concrete input: a value sequence over a finite alphabet, or the adjacency
/// bits of an n-vertex graph (stored per edge slot).
struct ProblemInstance {
  enum class Kind { Distinctness, Graph };

  Kind kind = Kind::Distinctness;
  int n = 0;         // positions, or graph vertices
  int alphabet = 0;  // distinctness only
  std::vector<int> values;
  std::vector<std::uint8_t> adjacency;  // indexed by edge slot id

  static ProblemInstance distinctness(std::vector<int> values, int alphabet);
  static ProblemInstance graph(int n, const std::vector<std::pair<int, int>>& edges);
  static ProblemInstance graph_mask(int n, std::uint64_t edge_mask);

  bool edge(int u, int v) const;
  IndexUniverse index_universe() const;
  std::string label() const;
};

/// Pattern H with its decomposition: a_k is the smallest-index vertex of
/// minimum degree l; G = H minus a_k has the m edges M.
struct SubgraphPattern {
  int k = 0;
  std::vector<std::pair<int, int>> edges;  // normalized u<v, sorted
  int min_degree = 0;                      // l
  int m_edges = 0;                         // m
  int apex = 0;                            // a_k
  std::vector<std::pair<int, int>> residual_edges;  // M, lexicographic
  std::vector<std::pair<int, int>> apex_edges;      // edges at a_k

  // Pattern vertices in marked-element order a_1..a_k (apex last).
  std::vector<int> vertex_order() const;
};

SubgraphPattern decompose_pattern(int k, std::vector<std::pair<int, int>> edges);
SubgraphPattern parse_pattern(std::istream& in);
SubgraphPattern clique_pattern(int k);
SubgraphPattern path_pattern(int k);
SubgraphPattern cycle_pattern(int k);
SubgraphPattern star_pattern(int leaves);

/// One chosen 1-certificate.  `indices` are the marked positions, or the edge
/// slots of the embedded copy of H; `embedding` (graph case) maps pattern
/// vertex -> graph vertex.
struct Certificate {
  std::vector<int> indices;
  std::vector<int> embedding;
};

/// Lexicographically first witness, or nullopt iff f(x) = 0.
std::optional<Certificate> find_certificate(const ProblemInstance& x, int k);
std::optional<Certificate> find_certificate(const ProblemInstance& x,
                                            const SubgraphPattern& h);

// Desk-scale enumeration helpers.
std::vector<ProblemInstance> all_distinctness_instances(int n, int alphabet);
std::vector<std::vector<std::pair<int, int>>> connected_patterns(int k);

ProblemInstance random_graph(int n, double p, std::mt19937_64& rng);
ProblemInstance random_positive_graph(int n, const SubgraphPattern& h, double p,
                                      std::mt19937_64& rng);

ProblemInstance parse_distinctness_instance(std::istream& in, int alphabet);
ProblemInstance parse_graph_instance(std::istream& in, int n);

}  // namespace lg
