#pragma once

#include <utility>
#include <vector>

#include "moves.hpp"
#include "point_set.hpp"
#include "rectangulation.hpp"

namespace rectiflip {

/// Undirected simple graph on local vertex ids 0..size-1.
struct Graph {
  std::vector<std::vector<int>> adj;

  explicit Graph(std::size_t n = 0) : adj(n) {}
  std::size_t size() const noexcept { return adj.size(); }
  std::size_t edge_count() const noexcept;
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;
};

/// A horizontal bar: fixed y, closed x-span. Vertices of a visibility graph.
struct Bar {
  int seg;
  std::int64_t y;
  std::int64_t lo, hi;
};

struct BarVisibilityGraph {
  std::vector<Bar> bars;  // vertex k is bars[k]
  Graph graph;
};

/// Two bars see each other when a thin vertical band (positive width) joins
/// them without meeting any other bar. Plane sweep, O(m log m).
Graph bar_visibility_sweep(const std::vector<Bar>& bars);
/// Brute force over elementary x-intervals, O(m^3). Test oracle.
Graph bar_visibility_naive(const std::vector<Bar>& bars);

BarVisibilityGraph bar_visibility(const Rectangulation& r, const PointSet& P);

/// Greedy minimum-degree elimination: take a vertex of least current degree,
/// delete it with its neighbours, repeat.
std::vector<int> independent_set(const Graph& g);

struct RoundRecord {
  std::size_t horizontal_before = 0;
  std::size_t independent = 0;
  std::size_t horizontal_after = 0;
  std::size_t ops = 0;
};

struct CanonicalizeOptions {
  bool validate_each_op = false;  // local check after every operation
  bool validate_rounds = true;    // full check after every round
  const StepHook* hook = nullptr;
};

struct CanonicalizeResult {
  Rectangulation final;
  OpTrace trace;
  std::vector<RoundRecord> rounds;
};

/// One round: flips every member of an independent set of H(r) via Shorten&Flip.
RoundRecord flip_round(Rectangulation& r, const PointSet& P, OpTrace& trace,
                       const CanonicalizeOptions& opts = {});

/// Rounds until no horizontal segment is left.
CanonicalizeResult canonicalize(const Rectangulation& start, const PointSet& P,
                                const CanonicalizeOptions& opts = {});

}  // namespace rectiflip
