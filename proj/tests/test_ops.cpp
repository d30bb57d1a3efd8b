#include <set>

#include "doctest.h"
#include "errors.hpp"
#include "generators.hpp"
#include "ops.hpp"

using namespace rectiflip;

namespace {

PointSet two_points() { return PointSet::create({{1, 1}, {2, 2}}, Rect{0, 0, 3, 3}); }

// Vertical 0 spanning R, horizontal 1 from segment 0 to the right side.
Rectangulation t_junction() {
  Rectangulation r;
  r.orient = {Orientation::Vertical, Orientation::Horizontal};
  r.attach = {{Attachment::boundary(Side::Bottom), Attachment::boundary(Side::Top)},
              {Attachment::on_segment(0), Attachment::boundary(Side::Right)}};
  return r;
}

}  // namespace

TEST_CASE("single point flips between the two canonical states") {
  PointSet P = PointSet::create({{1, 1}}, Rect{0, 0, 2, 2});
  Rectangulation r = canonical_vertical(P);
  CHECK(legal_flips(r) == std::vector<int>{0});
  CHECK(legal_rotates(r, P).empty());
  CHECK(flip(r, P, 0) == canonical_horizontal(P));
}

TEST_CASE("flip is blocked by a resting endpoint") {
  PointSet P = two_points();
  Rectangulation r = t_junction();
  REQUIRE(validate(r, P).ok());
  CHECK(legal_flips(r) == std::vector<int>{1});
  try {
    apply_flip(r, P, 0);
    FAIL("flip should be illegal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllegalFlip);
  }
}

TEST_CASE("rotate shortens the carrier and extends the mover") {
  PointSet P = two_points();
  Rectangulation r = t_junction();
  Rectangulation s = rotate(r, P, 1, End::Low);
  CHECK(validate(s, P).ok());
  CHECK(s.end(0, End::High) == Attachment::on_segment(1));
  CHECK(s.end(0, End::Low) == Attachment::boundary(Side::Bottom));
  CHECK(s.end(1, End::Low) == Attachment::boundary(Side::Left));
  Move back = inverse_move(r, P, Move::rotate(1, End::Low));
  CHECK(back == Move::rotate(0, End::High));
  CHECK(apply(s, P, back) == r);
}

TEST_CASE("rotate of an end on the boundary is illegal") {
  PointSet P = two_points();
  Rectangulation r = t_junction();
  CHECK_THROWS_AS(apply_rotate(r, P, 1, End::High), Error);
}

TEST_CASE("shorten and flip costs attachments plus one") {
  PointSet P = gen_random_permutation(30, 11);
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    Rectangulation r = random_walk(canonical_vertical(P), P, 120, rng);
    for (int i = 0; i < 30; i += 7) {
      Rectangulation s = r;
      const std::size_t resting = attachments_on(s, P, i).size();
      OpTrace trace;
      shorten_and_flip(s, P, i, trace);
      CHECK(trace.size() == resting + 1);
      CHECK(s.orient[i] != r.orient[i]);
      CHECK(validate(s, P).ok());
      CHECK(replay(r, P, trace) == s);
    }
  }
}

TEST_CASE("operator algebra on random states") {
  PointSet P = gen_random_permutation(15, 21);
  Rng rng(8);
  Rectangulation r = canonical_vertical(P);
  for (int t = 0; t < 2000; ++t) {
    auto moves = legal_moves(r, P);
    REQUIRE_FALSE(moves.empty());
    const Move m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    Rectangulation s = apply(r, P, m);
    REQUIRE(validate(s, P).ok());
    CHECK(apply(s, P, inverse_move(r, P, m)) == r);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < r.size(); ++i) changed += r.orient[i] != s.orient[i];
    CHECK(changed == (m.kind == MoveKind::Flip ? 1u : 0u));
    r = s;
  }
}

TEST_CASE("legal moves are exactly the applicable ones") {
  PointSet P = gen_random_permutation(6, 4);
  Rng rng(1);
  for (int t = 0; t < 40; ++t) {
    Rectangulation r = random_walk(canonical_vertical(P), P, 25, rng);
    std::set<std::pair<int, int>> legal;
    for (const Move& m : legal_rotates(r, P)) legal.insert({m.index, index_of(m.end)});
    for (int j = 0; j < 6; ++j) {
      for (End e : {End::Low, End::High}) {
        Rectangulation s = r;
        bool ok = true;
        try {
          apply_rotate(s, P, j, e);
          ok = validate(s, P).ok();
        } catch (const Error&) {
          ok = false;
        }
        CHECK(ok == legal.count({j, index_of(e)}) > 0);
      }
    }
  }
}

TEST_CASE("replay reports an illegal move") {
  PointSet P = two_points();
  OpTrace trace;
  trace.entries.push_back({Move::flip(0), 0});
  CHECK_THROWS_AS(replay(t_junction(), P, trace), Error);
}
