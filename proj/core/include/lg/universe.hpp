#pragma once

#include <string>
#include <utility>

namespace lg {

/// Index set a learning graph queries into: either n positions (distinctness
/// style) or the n(n-1)/2 unordered vertex pairs of an n-vertex graph.
struct IndexUniverse {
  enum class Kind { Positions, EdgeSlots };

  Kind kind = Kind::Positions;
  int n = 0;  // position count, or graph vertex count for edge slots

  int size() const { return kind == Kind::Positions ? n : n * (n - 1) / 2; }

  // Edge slots are numbered triangularly: {u,v} with u<v gets v(v-1)/2+u.
  int edge_id(int u, int v) const;
  std::pair<int, int> edge_endpoints(int id) const;

  std::string index_name(int id) const;

  friend bool operator==(const IndexUniverse&, const IndexUniverse&) = default;
};

IndexUniverse positions_universe(int n);
IndexUniverse edge_slot_universe(int vertices);

}  // namespace lg
