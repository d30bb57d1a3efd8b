#include "bitrev.hpp"
#include "canonical.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "generators.hpp"
#include "io_json.hpp"
#include "ops.hpp"
#include "render_svg.hpp"

using namespace rectiflip;

TEST_CASE("instance JSON round trip") {
  PointSet P = gen_random_permutation(9, 4);
  Rng rng(1);
  Rectangulation r = random_walk(canonical_vertical(P), P, 40, rng);
  json j = instance_json(P, &r);
  Instance back = parse_instance(json::parse(j.dump()));
  CHECK(back.points == P);
  REQUIRE(back.state);
  CHECK(*back.state == r);
  CHECK_FALSE(is_convex_instance(j));
}

TEST_CASE("instance JSON layout") {
  PointSet P = PointSet::create({{1, 1}}, Rect{0, 0, 2, 2});
  Rectangulation r = canonical_vertical(P);
  json j = instance_json(P, &r);
  CHECK(j.at("rect") == json::array({0, 0, 2, 2}));
  CHECK(j.at("rectangulation").at("orient") == json::array({"V"}));
  CHECK(j.at("rectangulation").at("attach")[0] == json::array({"bottom", "top"}));
}

TEST_CASE("convex JSON round trip") {
  PlanarPointSet P = PlanarPointSet::create(gen_collinear(6));
  std::mt19937_64 rng(3);
  ConvexSubdivision r = random_convex_walk(convex_vertical(P), P, 30, rng);
  json j = instance_json(P, &r);
  CHECK(is_convex_instance(j));
  ConvexInstance back = parse_convex_instance(json::parse(j.dump()));
  REQUIRE(back.state);
  CHECK(*back.state == r);
  CHECK(j.at("subdivision").at("segments")[0].contains("dir"));
}

TEST_CASE("malformed instances are parse errors") {
  auto code = [](const std::string& text) {
    try {
      parse_instance(parse_json_text(text, "test"));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code("{") == ErrorCode::Parse);
  CHECK(code(R"({"points":[[1,1]]})") == ErrorCode::Parse);
  CHECK(code(R"({"rect":[0,0,2,2],"points":[[1]]})") == ErrorCode::Parse);
  CHECK(code(R"({"rect":[0,0,2,2],"points":[[1,1]],"rectangulation":{"orient":["X"],"attach":[["left","right"]]}})") ==
        ErrorCode::Parse);
  CHECK(code(R"({"rect":[0,0,2,2],"points":[[1,1]],"rectangulation":{"orient":["H"],"attach":[["left",{"seg":4}]]}})") ==
        ErrorCode::Parse);
  CHECK(code(R"({"rect":[0,0,3,3],"points":[[1,1],[1,2]]})") == ErrorCode::DuplicateX);
}

TEST_CASE("trace JSONL round trip") {
  OpTrace t;
  t.entries.push_back({Move::flip(3), 0});
  t.entries.push_back({Move::rotate(1, End::High), 2});
  t.entries.push_back({Move::flip(0, Direction{2, -1}), 0});
  const std::string text = trace_to_jsonl(t);
  CHECK(text.substr(0, text.find('\n')) == R"({"op":"flip","p":3,"weight":0})");
  OpTrace back = parse_trace_jsonl(text);
  REQUIRE(back.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(back.entries[k].move == t.entries[k].move);
    CHECK(back.entries[k].weight == t.entries[k].weight);
  }
  CHECK_THROWS_AS(parse_trace_jsonl("{\"op\":\"twist\"}\n"), Error);
  CHECK(parse_trace_jsonl("\n{\"op\":\"rotate\",\"seg\":2,\"end\":\"low\"}\n\n").size() == 1);
}

TEST_CASE("stats record") {
  PointSet P = gen_random_permutation(16, 1);
  auto res = canonicalize(canonical_horizontal(P), P);
  RunStats s = make_stats(16, "general", res.trace, res.rounds.size());
  CHECK(s.ops == res.trace.size());
  CHECK(s.ops_per_n == doctest::Approx(static_cast<double>(s.ops) / 16));
  CHECK(s.ops_per_nlogn == doctest::Approx(static_cast<double>(s.ops) / 64));
  json j = to_json(s);
  for (const char* key : {"n", "strategy", "ops", "rounds", "ops_per_n", "ops_per_nlogn", "max_weight"}) {
    CHECK(j.contains(key));
  }
  CHECK(stats_csv_header() == "n,strategy,ops,rounds,ops_per_n,ops_per_nlogn,max_weight");
}

TEST_CASE("svg rendering") {
  PointSet P = gen_diagonal(2);
  const std::string svg = render_svg(P, canonical_vertical(P));
  std::size_t lines = 0;
  for (std::size_t at = svg.find("<line"); at != std::string::npos; at = svg.find("<line", at + 1)) ++lines;
  CHECK(lines == 2);
  CHECK(svg == render_svg(P, canonical_vertical(P)));

  PointSet P4 = gen_bit_reversal(4);
  SvgOptions o;
  o.boxes_k = 4;
  const std::string boxed = render_svg(P4, canonical_horizontal(P4), o);
  std::size_t rects = 0;
  for (std::size_t at = boxed.find("<rect"); at != std::string::npos; at = boxed.find("<rect", at + 1)) ++rects;
  CHECK(rects == 1 + 32);

  auto frames = render_trace(P, canonical_vertical(P), canonicalize(canonical_vertical(P), P).trace);
  CHECK(frames.size() == 1);

  PlanarPointSet C = PlanarPointSet::create(gen_collinear(3));
  CHECK(render_svg(C, convex_vertical(C)).find("<line") != std::string::npos);
}
