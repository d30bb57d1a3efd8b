#include "diagonal.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "generators.hpp"
#include "ops.hpp"

using namespace rectiflip;

TEST_CASE("diagonal detection") {
  CHECK(is_diagonal(gen_diagonal(6)));
  CHECK_FALSE(is_diagonal(PointSet::create({{1, 2}, {2, 1}}, Rect{0, 0, 3, 3})));
  PointSet anti = PointSet::create({{1, 2}, {2, 1}}, Rect{0, 0, 3, 3});
  try {
    canonicalize_diagonal(canonical_vertical(anti), anti);
    FAIL("expected NotDiagonal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDiagonal);
  }
}

TEST_CASE("phase one removes runs of three parallel segments") {
  PointSet P = gen_diagonal(12);
  Rectangulation r = canonical_horizontal(P);
  OpTrace trace;
  DiagonalStats stats;
  no_three_parallel(r, P, trace, stats);
  CHECK(validate(r, P).ok());
  for (int i = 0; i + 2 < 12; ++i) {
    CHECK_FALSE((r.orient[i] == r.orient[i + 1] && r.orient[i + 1] == r.orient[i + 2]));
  }
  CHECK(stats.phase1_repeat_extensions == 0);
}

TEST_CASE("staircase needs phase one") {
  PointSet P = gen_diagonal(5);
  Rectangulation r = canonical_horizontal(P);
  OpTrace trace;
  DiagonalStats stats;
  CHECK_THROWS_AS(build_staircase(r, P, trace, stats), Error);
}

TEST_CASE("diagonal canonicalizer from random starts") {
  for (int n : {1, 2, 3, 10, 60}) {
    PointSet P = gen_diagonal(n);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      Rng rng(seed);
      Rectangulation start = random_walk(canonical_vertical(P), P, 5 * n, rng);
      DiagonalOptions o;
      o.validate_each_op = true;
      auto res = canonicalize_diagonal(start, P, o);
      CHECK(res.final == canonical_vertical(P));
      CHECK(res.trace.size() <= 12u * n);
      CHECK(res.stats.max_strip_points <= 3);
      CHECK(replay(start, P, res.trace) == res.final);
      std::size_t phases = 0;
      for (std::size_t c : res.stats.phase_ops) phases += c;
      CHECK(phases == res.trace.size());
    }
  }
}

TEST_CASE("diagonal canonicalizer from the horizontal state") {
  for (int n : {4, 9, 33}) {
    PointSet P = gen_diagonal(n);
    auto res = canonicalize_diagonal(canonical_horizontal(P), P);
    CHECK(res.final == canonical_vertical(P));
    CHECK(res.trace.size() <= 12u * n);
  }
}
