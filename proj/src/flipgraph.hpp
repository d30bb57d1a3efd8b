#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "moves.hpp"
#include "point_set.hpp"
#include "rectangulation.hpp"

namespace rectiflip {

inline constexpr std::size_t kDefaultNodeLimit = 5'000'000;

struct FlipGraph {
  std::vector<CanonicalKey> keys;
  std::unordered_map<CanonicalKey, int> index;
  /// Neighbour id and the move that reaches it, one entry per distinct neighbour.
  std::vector<std::vector<std::pair<int, Move>>> adj;
  /// Set when the node limit stopped the search; the graph is then partial.
  bool truncated = false;

  std::size_t node_count() const noexcept { return keys.size(); }
  std::size_t edge_count() const noexcept;
  int id(const CanonicalKey& key) const;  // throws UnknownKey
};

/// BFS closure of canonical_vertical(P) under all legal moves.
FlipGraph enumerate(const PointSet& P, std::size_t node_limit = kDefaultNodeLimit);

/// Throws LimitExceeded when g is truncated.
void require_complete(const FlipGraph& g);

/// BFS distances from one node; -1 where unreachable.
std::vector<int> bfs_distances(const FlipGraph& g, int source);
bool connected(const FlipGraph& g);
/// Exact diameter; throws Disconnected or LimitExceeded.
int diameter(const FlipGraph& g);
int distance(const FlipGraph& g, const CanonicalKey& a, const CanonicalKey& b);

/// Every valid rectangulation of P by exhaustive search over orientations and
/// attachments, without using the move operators. Keys are sorted.
std::vector<CanonicalKey> brute_force_states(const PointSet& P);

/// nth Baxter number, n >= 0.
std::uint64_t baxter(int n);

}  // namespace rectiflip
