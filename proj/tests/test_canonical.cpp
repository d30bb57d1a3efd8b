#include "canonical.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "ops.hpp"

using namespace rectiflip;

namespace {

bool same_graph(const Graph& a, const Graph& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  for (int u = 0; u < static_cast<int>(a.size()); ++u) {
    for (int v : a.adj[u]) {
      if (!b.has_edge(u, v)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("bar visibility on a small stack") {
  // Three nested bars: the middle one hides the outer two from each other
  // except where it is shorter.
  std::vector<Bar> bars{{0, 0, 0, 10}, {1, 1, 2, 5}, {2, 2, 0, 10}};
  Graph g = bar_visibility_sweep(bars);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(0, 2));
  std::vector<Bar> blocked{{0, 0, 0, 10}, {1, 1, 0, 10}, {2, 2, 0, 10}};
  CHECK_FALSE(bar_visibility_sweep(blocked).has_edge(0, 2));
}

TEST_CASE("touching spans do not see each other through a point") {
  std::vector<Bar> bars{{0, 0, 0, 5}, {1, 1, 5, 10}};
  CHECK_FALSE(bar_visibility_sweep(bars).has_edge(0, 1));
  CHECK_FALSE(bar_visibility_naive(bars).has_edge(0, 1));
}

TEST_CASE("sweep agrees with the naive oracle") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + static_cast<int>(rng() % 25);
    std::vector<Bar> bars;
    for (int k = 0; k < m; ++k) {
      std::int64_t a = static_cast<std::int64_t>(rng() % 30), b = static_cast<std::int64_t>(rng() % 30);
      if (a == b) ++b;
      bars.push_back({k, static_cast<std::int64_t>(k * 3 + rng() % 2), std::min(a, b), std::max(a, b)});
    }
    CHECK(same_graph(bar_visibility_sweep(bars), bar_visibility_naive(bars)));
  }
}

TEST_CASE("greedy independent set") {
  Graph empty(5);
  CHECK(independent_set(empty).size() == 5);
  Graph k5(5);
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) k5.add_edge(a, b);
  }
  CHECK(independent_set(k5).size() == 1);
  Graph path(6);
  for (int a = 0; a + 1 < 6; ++a) path.add_edge(a, a + 1);
  auto I = independent_set(path);
  CHECK(I.size() == 3);
  for (int a : I) {
    for (int b : I) CHECK_FALSE(path.has_edge(a, b));
  }
}

TEST_CASE("independent sets of bar visibility graphs are large") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PointSet P = gen_random_permutation(60, seed);
    Rng rng(seed);
    Rectangulation r = random_walk(canonical_horizontal(P), P, 200, rng);
    BarVisibilityGraph bv = bar_visibility(r, P);
    auto I = independent_set(bv.graph);
    CHECK(I.size() * 6 >= bv.bars.size());
  }
}

TEST_CASE("general canonicalizer reaches the vertical state") {
  for (int n : {1, 2, 7, 40, 130}) {
    PointSet P = gen_random_permutation(n, 77);
    CanonicalizeOptions o;
    o.validate_each_op = true;
    auto res = canonicalize(canonical_horizontal(P), P, o);
    CHECK(res.final == canonical_vertical(P));
    CHECK(replay(canonical_horizontal(P), P, res.trace) == res.final);
    for (const RoundRecord& rr : res.rounds) {
      CHECK(rr.horizontal_before - rr.horizontal_after >= (rr.horizontal_before + 5) / 6);
    }
  }
  PointSet P = gen_diagonal(5);
  CHECK(canonicalize(canonical_vertical(P), P).trace.size() == 0);
}
