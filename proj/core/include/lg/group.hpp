#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lg/flow.hpp"
#include "lg/graph.hpp"
#include "lg/rational.hpp"

namespace lg {

/// One permutation: images of every index in the universe, plus the
/// underlying graph-vertex images when the action is induced by them.
struct GroupElement {
  std::vector<int> index_map;
  std::optional<std::vector<int>> vertex_map;
};

/// S_n on positions (optionally restricted to a ground subset of indices) or
/// graph-vertex permutations acting on edge slots.  Exhaustive mode requires
/// the group order to stay under the cap; otherwise use sampled mode.
class SymmetryGroup {
 public:
  enum class Kind { Positions, GraphVertices };

  static constexpr std::int64_t kDefaultOrderCap = 3628800;  // 10!

  static SymmetryGroup positions(const IndexUniverse& u, std::vector<int> ground = {},
                                 std::int64_t order_cap = kDefaultOrderCap);
  static SymmetryGroup graph_vertices(int vertices,
                                      std::int64_t order_cap = kDefaultOrderCap);
  static SymmetryGroup sampled_positions(const IndexUniverse& u, std::vector<int> ground,
                                         std::int64_t samples, std::uint64_t seed);
  static SymmetryGroup sampled_graph_vertices(int vertices, std::int64_t samples,
                                              std::uint64_t seed);

  Kind kind() const { return kind_; }
  bool exhaustive() const { return exhaustive_; }
  std::int64_t samples() const { return samples_; }
  std::uint64_t seed() const { return seed_; }
  const IndexUniverse& universe() const { return universe_; }
  const std::vector<int>& ground() const { return ground_; }
  BigInt order() const;

  GroupElement identity() const;
  // Adjacent transpositions; they generate the whole group.
  const std::vector<GroupElement>& generators() const { return generators_; }
  GroupElement random_element(std::mt19937_64& rng) const;

 private:
  SymmetryGroup() = default;

  Kind kind_ = Kind::Positions;
  IndexUniverse universe_;
  std::vector<int> ground_;  // permuted indices (positions kind) or 0..n-1 vertices
  bool exhaustive_ = true;
  std::int64_t samples_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<GroupElement> generators_;
};

int act(const GroupElement& g, int index);
LVertex act(const GroupElement& g, const LVertex& v);
std::pair<LVertex, LVertex> act(const GroupElement& g, const LVertex& from,
                                const LVertex& to);

struct TransitionOrbit {
  std::pair<LVertex, LVertex> representative;
  std::vector<std::pair<LVertex, LVertex>> members;
};

struct VertexOrbit {
  LVertex representative;
  std::vector<LVertex> members;
};

/// Full equivalence class under the group (exhaustive mode only), computed by
/// closure under the generators.
TransitionOrbit orbit(const LVertex& from, const LVertex& to, const SymmetryGroup& g);
VertexOrbit orbit(const LVertex& v, const SymmetryGroup& g);

struct SpecialityReport {
  std::int64_t orbit_size = 0;
  std::int64_t valid_count = 0;
  Rational speciality;
};

/// |orbit| / #{members with positive flow}.  Errors when no orbit member is
/// valid.  Vertex validity means positive in-flow.
SpecialityReport speciality(const GraphIndex& gi, int stage, const Transition& t,
                            const SymmetryGroup& g, const FlowAssignment& flow);
SpecialityReport vertex_speciality(const GraphIndex& gi, int layer, int vertex_pos,
                                   const SymmetryGroup& g, const FlowAssignment& flow);

/// Maximum speciality over one representative per orbit meeting the valid set.
Rational max_speciality(const GraphIndex& gi, int stage, const SymmetryGroup& g,
                        const FlowAssignment& flow);
Rational max_vertex_speciality(const GraphIndex& gi, int layer, const SymmetryGroup& g,
                               const FlowAssignment& flow);

struct EstimateReport {
  double estimate = 0;
  double lower = 0;
  double upper = 0;
  std::int64_t samples = 0;
  std::int64_t hits = 0;
  std::uint64_t seed = 0;
  double z = 0;
};

/// Monte-Carlo estimate of the inverse probability that a random group
/// element maps the target to a valid transition (sampled mode only).
/// Deterministic for a fixed seed; interval by normal approximation.
EstimateReport estimate_speciality(const GraphIndex& gi, int stage, const Transition& t,
                                   const SymmetryGroup& g, const FlowAssignment& flow,
                                   double z = 2.5758293035489004);  // 99% two-sided

struct SymmetryCheck {
  bool symmetric = true;
  std::vector<std::string> issues;
};

/// True iff within each orbit all positive-flow transitions carry equal flow
/// for every instance, and the multiset of (orbit size, flow, speciality)
/// signatures is identical across instances.
SymmetryCheck is_symmetric_stage(const GraphIndex& gi, int stage, const SymmetryGroup& g,
                                 const std::vector<FlowAssignment>& flows);
SymmetryCheck is_symmetric_vertex_layer(const GraphIndex& gi, int layer,
                                        const SymmetryGroup& g,
                                        const std::vector<FlowAssignment>& flows);

/// The stage's transitions partitioned into orbits: orbit id per transition
/// position, plus each orbit's total (abstract) size.
struct StageOrbits {
  std::vector<int> orbit_of;         // indexed by transition position in stage
  std::vector<std::int64_t> sizes;   // indexed by orbit id
};
StageOrbits stage_orbits(const GraphIndex& gi, int stage, const SymmetryGroup& g);
StageOrbits layer_orbits(const GraphIndex& gi, int layer, const SymmetryGroup& g);

}  // namespace lg
