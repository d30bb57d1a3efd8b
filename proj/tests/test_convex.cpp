#include <set>

#include "convex.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "generators.hpp"

using namespace rectiflip;

namespace {

bool has(const ValidationReport& rep, ViolationKind k) {
  for (const Violation& v : rep.violations) {
    if (v.kind == k) return true;
  }
  return false;
}

ConvexSubdivision lines(std::vector<Direction> dirs) {
  ConvexSubdivision r;
  for (Direction d : dirs) {
    r.dir.push_back(Direction::normalized(d.dx, d.dy));
    r.attach.push_back({ConvexEnd::infinite(), ConvexEnd::infinite()});
  }
  return r;
}

// Points (1,0), (2,0): a line of slope 1 and a ray of slope -2 resting on it.
struct Wedge {
  PlanarPointSet P = PlanarPointSet::create({{1, 0}, {2, 0}});
  ConvexSubdivision r = [] {
    ConvexSubdivision s = lines({{1, 1}, {1, -2}});
    s.end(1, End::Low) = ConvexEnd::on_segment(0);
    return s;
  }();
};

}  // namespace

TEST_CASE("planar point sets") {
  CHECK_THROWS_AS(PlanarPointSet::create({{1, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(PlanarPointSet::create({{kConvexCoordLimit + 1, 0}}), Error);
  CHECK(PlanarPointSet::create({{1, 0}, {1, 5}}).size() == 2);
  CHECK_FALSE(PlanarPointSet::create({{1, 0}, {1, 5}}).distinct_x());
}

TEST_CASE("convex validation") {
  Wedge w;
  CHECK(validate_convex(w.r, w.P).ok());
  ConvexSubdivision crossing = lines({{1, 1}, {1, -2}});
  CHECK(has(validate_convex(crossing, w.P), ViolationKind::Crossing));
  ConvexSubdivision parallel = lines({{1, 1}, {1, 1}});
  CHECK(validate_convex(parallel, w.P).ok());
  ConvexSubdivision same_line = lines({{1, 0}, {1, 0}});
  CHECK(has(validate_convex(same_line, w.P), ViolationKind::CollinearOverlap));
  ConvexSubdivision wrong_end = w.r;
  std::swap(wrong_end.attach[1][0], wrong_end.attach[1][1]);
  CHECK_FALSE(validate_convex(wrong_end, w.P).ok());
  ConvexSubdivision through_point = lines({{1, 0}, {0, 1}});
  CHECK(has(validate_convex(through_point, w.P), ViolationKind::SharedPoint));
}

TEST_CASE("directed flip") {
  PlanarPointSet one = PlanarPointSet::create({{3, 4}});
  ConvexSubdivision r = lines({{1, 2}});
  CHECK(apply_flip_dir(r, one, 0, Direction::vertical()) == 0);
  CHECK(r == convex_vertical(one));

  Wedge w;
  ConvexSubdivision s = w.r;
  apply_flip_dir(s, w.P, 1, Direction{1, -2});
  CHECK(s == w.r);

  // Seg 1 re-shot with slope 1/2 meets line 0 on its left and runs free to the right.
  apply_flip_dir(s, w.P, 1, Direction{2, 1});
  CHECK(validate_convex(s, w.P).ok());
  CHECK(s.end(1, End::Low) == ConvexEnd::on_segment(0));
  CHECK(s.end(1, End::High).is_infinite());

  ConvexSubdivision blocked = w.r;
  try {
    apply_flip_dir(blocked, w.P, 0, Direction::vertical());
    FAIL("segment 0 carries an endpoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllegalFlip);
  }
  // Collinear with the other point.
  ConvexSubdivision horizontal = w.r;
  try {
    apply_flip_dir(horizontal, w.P, 1, Direction{1, 0});
    FAIL("horizontal through both points");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDirection);
    CHECK(horizontal == w.r);
  }
}

TEST_CASE("rotate with no blocker reaches infinity") {
  Wedge w;
  ConvexSubdivision s = w.r;
  apply_rotate(s, w.P, 1, End::Low);
  CHECK(validate_convex(s, w.P).ok());
  CHECK(s.end(1, End::Low).is_infinite());
  CHECK(s.end(0, End::High) == ConvexEnd::on_segment(1));
  CHECK(inverse_move(w.r, w.P, Move::rotate(1, End::Low)) == Move::rotate(0, End::High));
  apply_rotate(s, w.P, 0, End::High);
  CHECK(s == w.r);
}

TEST_CASE("random walks stay valid and moves invert") {
  PlanarPointSet P = PlanarPointSet::create({{0, 0}, {3, 1}, {5, -2}, {7, 4}, {10, 0}, {12, 3}, {15, -1}});
  std::mt19937_64 rng(3);
  ConvexSubdivision r = convex_vertical(P);
  std::size_t checked = 0;
  for (int t = 0; t < 300; ++t) {
    r = random_convex_walk(r, P, 1, rng);
    REQUIRE(validate_convex(r, P).ok());
    for (const Move& m : legal_rotates(r, P)) {
      ConvexSubdivision s = r;
      try {
        apply_rotate(s, P, m.index, m.end);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IllegalRotate);
        continue;
      }
      CHECK(validate_convex(s, P).ok());
      const Move back = inverse_move(r, P, m);
      apply_move(s, P, back);
      CHECK(s == r);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("extension visibility") {
  PlanarPointSet P = PlanarPointSet::create({{0, 0}, {3, 1}, {5, -2}, {7, 4}, {10, 0}});
  CHECK(extension_visibility(convex_vertical(P), P).edges.empty());
  Wedge w;
  auto ev = extension_visibility(w.r, w.P);
  CHECK(std::find(ev.edges.begin(), ev.edges.end(), std::pair{1, 0}) != ev.edges.end());
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    ConvexSubdivision r = random_convex_walk(convex_vertical(P), P, 20, rng);
    CHECK(extension_visibility(r, P).edges.size() <= 4 * P.size());
  }
}

TEST_CASE("vertical visibility of stacked segments") {
  PlanarPointSet P = PlanarPointSet::create({{0, 0}, {1, 5}, {2, 10}});
  ConvexSubdivision r = lines({{1, 0}, {1, 0}, {1, 0}});
  Graph g = vertical_visibility(r, P, std::vector<int>{0, 1, 2});
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));
  Graph sub = vertical_visibility(r, P, std::vector<int>{0, 2});
  CHECK(sub.edge_count() == 0);
}

TEST_CASE("collinear canonicalizer") {
  Wedge w;
  auto res = collinear_canonicalize(w.r, w.P);
  CHECK(res.final == convex_vertical(w.P));
  CHECK(res.trace.size() <= 16);
  CHECK(collinear_canonicalize(convex_vertical(w.P), w.P).trace.size() == 0);

  for (int n : {3, 8, 25, 60}) {
    PlanarPointSet P = PlanarPointSet::create(gen_collinear(n));
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      std::mt19937_64 rng(seed);
      ConvexSubdivision start = random_convex_walk(convex_vertical(P), P, 5 * n, rng);
      ConvexOptions o;
      o.validate_each_op = true;
      auto r = collinear_canonicalize(start, P, o);
      CHECK(r.final == convex_vertical(P));
      CHECK(r.trace.size() <= 8u * n);
      CHECK(r.phase_ops[0] <= 5u * n);
      CHECK(r.phase_ops[1] <= 3u * n);
      CHECK(r.repeat_extensions == 0);
      CHECK(replay(start, P, r.trace) == r.final);
      for (const TraceEntry& e : r.trace.entries) {
        if (e.move.kind == MoveKind::Flip) CHECK(e.weight == 0);
      }
    }
  }
  PlanarPointSet bent = PlanarPointSet::create({{1, 0}, {2, 1}});
  try {
    collinear_canonicalize(convex_vertical(bent), bent);
    FAIL("expected NotCollinear");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCollinear);
  }
}

TEST_CASE("general convex canonicalizer") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> c(-40, 40);
  for (int t = 0; t < 8; ++t) {
    std::vector<Point> pts;
    std::set<std::int64_t> xs;
    while (pts.size() < 25) {
      Point p{c(rng), c(rng)};
      if (xs.insert(p.x).second) pts.push_back(p);
    }
    PlanarPointSet P = PlanarPointSet::create(pts);
    ConvexSubdivision start = random_convex_walk(convex_vertical(P), P, 100, rng);
    ConvexOptions o;
    o.validate_each_op = true;
    auto res = canonicalize_convex(start, P, o);
    CHECK(res.shear == 0);
    CHECK(res.final == convex_vertical(P));
    CHECK(replay(start, P, res.trace) == res.final);
    for (const ConvexRoundRecord& rr : res.rounds) {
      CHECK(rr.second_set * 54 >= rr.nonvertical_before);
      CHECK(rr.nonvertical_after < rr.nonvertical_before);
    }
  }
}

TEST_CASE("points sharing x are sheared first") {
  std::vector<Point> column;
  for (int i = 1; i <= 12; ++i) column.push_back({0, i});
  PlanarPointSet Q = PlanarPointSet::create(column);
  ConvexSubdivision flat = lines(std::vector<Direction>(12, Direction{1, 0}));
  REQUIRE(validate_convex(flat, Q).ok());
  auto res = canonicalize_convex(flat, Q);
  CHECK(res.shear != 0);
  CHECK(replay(flat, Q, res.trace) == res.final);
  for (const Direction& d : res.final.dir) CHECK(d == res.final.dir[0]);
}
