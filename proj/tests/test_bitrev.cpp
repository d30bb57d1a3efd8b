#include <set>

#include "bitrev.hpp"
#include "canonical.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "ops.hpp"

using namespace rectiflip;

TEST_CASE("bit reversal") {
  CHECK(bit_reverse(0b001, 3) == 0b100);
  CHECK(bit_reverse(0b110, 3) == 0b011);
  CHECK(bit_reverse(5, 4) == 10);
  PointSet P = gen_bit_reversal(2);
  REQUIRE(P.size() == 4);
  std::set<std::pair<std::int64_t, std::int64_t>> pts;
  for (const Point& p : P.points()) pts.insert({p.x, p.y});
  CHECK(pts == std::set<std::pair<std::int64_t, std::int64_t>>{{0, 0}, {1, 2}, {2, 1}, {3, 3}});
}

TEST_CASE("padding keeps the set noncorectilinear") {
  PointSet P = gen_bit_reversal(3, 12);
  CHECK(P.size() == 12);
  CHECK(validate(canonical_vertical(P), P).ok());
}

TEST_CASE("box family") {
  for (int k = 1; k <= 8; ++k) {
    const auto bs = boxes(k);
    CHECK(bs.size() == static_cast<std::size_t>(k) << (k - 1));
    PointSet P = gen_bit_reversal(k);
    for (const Box& b : bs) {
      std::size_t inside = 0;
      for (const Point& p : P.points()) inside += p.x > b.x0 && p.x < b.x1 && p.y > b.y0 && p.y < b.y1;
      CHECK(inside == 0);
    }
  }
  CHECK_THROWS_AS(boxes(0), Error);
}

TEST_CASE("saturation of the canonical states") {
  for (int k = 1; k <= 6; ++k) {
    PointSet P = gen_bit_reversal(k);
    const auto bs = boxes(k);
    CHECK(total_saturation(canonical_horizontal(P), P, bs) == 0);
    CHECK(total_saturation(canonical_vertical(P), P, bs) == mpq_class(static_cast<long>(bs.size())));
  }
}

TEST_CASE("lower bound values") {
  CHECK(lower_bound(1) == 1);
  CHECK(lower_bound(2) == 1);
  CHECK(lower_bound(3) == 3);
  CHECK(lower_bound(4) == 8);
  CHECK(lower_bound(8) == 256);
}

TEST_CASE("audit of the general canonicalizer") {
  for (int k = 2; k <= 5; ++k) {
    PointSet P = gen_bit_reversal(k);
    auto res = canonicalize(canonical_horizontal(P), P);
    auto rep = audit_trace(P, k, canonical_horizontal(P), res.trace);
    CHECK(rep.ok());
    CHECK(rep.initial_total == 0);
    CHECK(rep.final_total == mpq_class(static_cast<long>(k) << (k - 1)));
    CHECK(rep.rows.size() == res.trace.size());
    CHECK(static_cast<std::int64_t>(res.trace.size()) >= lower_bound(k));
    for (const AuditRow& row : rep.rows) CHECK(row.delta <= (row.kind == MoveKind::Flip ? 4 : 2));
  }
}

TEST_CASE("audit csv header") {
  PointSet P = gen_bit_reversal(2);
  auto res = canonicalize(canonical_horizontal(P), P);
  auto csv = audit_trace(P, 2, canonical_horizontal(P), res.trace).csv();
  CHECK(csv.rfind("op_index,kind,delta_total_saturation,running_total\n", 0) == 0);
}
