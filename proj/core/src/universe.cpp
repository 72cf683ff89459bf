#include "lg/universe.hpp"

#include <stdexcept>

#include "lg/rational.hpp"

namespace lg {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

int IndexUniverse::edge_id(int u, int v) const {
  if (kind != Kind::EdgeSlots) throw std::invalid_argument("edge_id: positions universe");
  if (u == v || u < 0 || v < 0 || u >= n || v >= n)
    throw std::invalid_argument("edge_id: bad endpoints");
  if (u > v) std::swap(u, v);
  return v * (v - 1) / 2 + u;
}

std::pair<int, int> IndexUniverse::edge_endpoints(int id) const {
  if (kind != Kind::EdgeSlots)
    throw std::invalid_argument("edge_endpoints: positions universe");
  if (id < 0 || id >= size()) throw std::invalid_argument("edge_endpoints: bad id");
  int v = 1;
  while ((v + 1) * v / 2 <= id) ++v;
  return {id - v * (v - 1) / 2, v};
}

std::string IndexUniverse::index_name(int id) const {
  if (kind == Kind::Positions) return std::to_string(id);
  auto [u, v] = edge_endpoints(id);
  return std::to_string(u) + "-" + std::to_string(v);
}

IndexUniverse positions_universe(int n) {
  if (n <= 0) throw std::invalid_argument("universe size must be positive");
  return {IndexUniverse::Kind::Positions, n};
}

IndexUniverse edge_slot_universe(int vertices) {
  if (vertices <= 1) throw std::invalid_argument("need at least 2 graph vertices");
  return {IndexUniverse::Kind::EdgeSlots, vertices};
}

}  // namespace lg
