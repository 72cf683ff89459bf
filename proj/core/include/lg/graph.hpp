#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lg/rational.hpp"
#include "lg/universe.hpp"

namespace lg {

/// A learning-graph vertex: the set of indices queried so far, plus an
/// optional declared graph-vertex set for graph-type constructions.  Two
/// vertices with equal queried sets but different annotations are distinct.
struct LVertex {
  std::vector<int> queried;                    // sorted index ids
  std::optional<std::vector<int>> annotation;  // sorted graph vertices

  friend bool operator==(const LVertex&, const LVertex&) = default;
};

struct LVertexHash {
  std::size_t operator()(const LVertex& v) const;
};

/// Arc between consecutive layers.  `from`/`to` are positions inside the
/// source and target layer; `id` is stable and unique across the whole graph
/// including attached subroutines.
struct Transition {
  int from = 0;
  int to = 0;
  std::int64_t id = 0;
};

struct LearningGraph;

/// Subroutine graph appended after a final-layer vertex.
struct Attachment {
  int vertex = 0;  // position in the final layer
  std::shared_ptr<const LearningGraph> graph;
};

struct LearningGraph {
  IndexUniverse universe;
  std::vector<int> ground;  // usable indices; whole universe when defaulted
  std::vector<std::vector<LVertex>> layers;      // layers[0] == { empty }
  std::vector<std::vector<Transition>> stages;   // stages[i]: layer i -> i+1
  std::vector<Attachment> attachments;

  int stage_count() const { return static_cast<int>(stages.size()); }
  const std::vector<LVertex>& final_layer() const { return layers.back(); }
  std::int64_t max_transition_id() const;

  const LVertex& from_vertex(int stage, const Transition& t) const {
    return layers[stage][t.from];
  }
  const LVertex& to_vertex(int stage, const Transition& t) const {
    return layers[stage + 1][t.to];
  }
};

int transition_length(const LVertex& from, const LVertex& to);
int transition_length(const LearningGraph& lg, int stage, const Transition& t);

/// Problems found by a validation pass.  `violations` break the model;
/// `flags` mark permitted-but-degenerate features (length-0 transitions).
struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> flags;
  std::vector<Rational> stage_flow_sums;  // filled by check_flow only

  bool ok() const { return violations.empty(); }
};

ValidationReport validate_structure(const LearningGraph& lg);

LearningGraph with_offset_ids(const LearningGraph& lg, std::int64_t offset);

/// Fast canonical lookup of vertices and transitions inside a graph.
class GraphIndex {
 public:
  explicit GraphIndex(const LearningGraph& lg);

  // Position of a vertex in the given layer, or -1.
  int vertex_position(int layer, const LVertex& v) const;
  // Transition of stage `stage` between two vertices, or nullptr.
  const Transition* transition(int stage, const LVertex& from, const LVertex& to) const;

  const LearningGraph& graph() const { return *lg_; }

 private:
  const LearningGraph* lg_;
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace lg
