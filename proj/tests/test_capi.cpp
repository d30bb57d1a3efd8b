#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <rectiflip.h>

#include <string>

#include "doctest.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  rf_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("generate, canonicalize and replay through the C API") {
  rf_instance* inst = nullptr;
  REQUIRE(rf_instance_generate("diagonal:20", &inst) == RF_OK);
  size_t n = 0;
  CHECK(rf_instance_size(inst, &n) == RF_OK);
  CHECK(n == 20);
  CHECK(rf_instance_set_start(inst, "walk", 3) == RF_OK);
  CHECK(rf_instance_validate(inst, nullptr) == RF_OK);

  rf_result* res = nullptr;
  REQUIRE(rf_canonicalize(inst, "diagonal", 1, &res) == RF_OK);
  size_t ops = 0;
  int ok = 0;
  CHECK(rf_result_ops(res, &ops) == RF_OK);
  CHECK(rf_result_bound_ok(res, &ok) == RF_OK);
  CHECK(ok == 1);
  CHECK(ops <= 240);

  char* s = nullptr;
  REQUIRE(rf_result_trace_jsonl(res, &s) == RF_OK);
  const std::string trace = take(s);
  REQUIRE(rf_replay(inst, trace.c_str(), &s) == RF_OK);
  const std::string replayed = take(s);
  REQUIRE(rf_result_final_json(res, &s) == RF_OK);
  CHECK(take(s) == replayed);

  REQUIRE(rf_result_stats_json(res, &s) == RF_OK);
  const std::string stats = take(s);
  CHECK(stats.find("\"ops_per_nlogn\"") != std::string::npos);
  REQUIRE(rf_result_stats_csv(res, 1, &s) == RF_OK);
  CHECK(take(s).rfind("n,strategy,ops,rounds,ops_per_n,ops_per_nlogn,max_weight\n", 0) == 0);
  rf_result_free(res);
  rf_instance_free(inst);
}

TEST_CASE("errors map to status codes") {
  rf_instance* inst = nullptr;
  CHECK(rf_instance_generate("spiral:3", &inst) == RF_E_PARSE);
  CHECK(std::string(rf_last_error()).find("spiral") != std::string::npos);
  CHECK(rf_instance_from_json("{\"rect\":[0,0,3,3],\"points\":[[1,1],[1,2]]}", &inst) == RF_E_DUPLICATE_X);
  CHECK(rf_instance_from_json("not json", &inst) == RF_E_PARSE);
  CHECK(rf_instance_generate(nullptr, &inst) == RF_E_INVALID_ARGUMENT);
  CHECK(std::string(rf_status_name(RF_E_INVALID_STATE)) == "InvalidState");

  REQUIRE(rf_instance_generate("random-permutation:6:2", &inst) == RF_OK);
  rf_result* res = nullptr;
  CHECK(rf_canonicalize(inst, "diagonal", 0, &res) == RF_E_STRATEGY_MISMATCH);
  CHECK(rf_canonicalize(inst, "collinear", 0, &res) == RF_E_STRATEGY_MISMATCH);
  CHECK(rf_replay(inst, "{\"op\":\"rotate\",\"seg\":0,\"end\":\"low\"}\n", nullptr) == RF_E_INVALID_STATE);
  rf_instance_free(inst);

  const char* crossing =
      "{\"rect\":[0,0,3,3],\"points\":[[1,1],[2,2]],\"rectangulation\":{\"orient\":[\"V\",\"H\"],"
      "\"attach\":[[\"bottom\",\"top\"],[\"left\",\"right\"]]}}";
  REQUIRE(rf_instance_from_json(crossing, &inst) == RF_OK);
  char* report = nullptr;
  CHECK(rf_instance_validate(inst, &report) == RF_E_INVALID_STATE);
  CHECK(take(report).find("Crossing") != std::string::npos);
  rf_instance_free(inst);
}

TEST_CASE("audit, enumerate and render") {
  rf_instance* inst = nullptr;
  REQUIRE(rf_instance_generate("bitreversal:4", &inst) == RF_OK);
  REQUIRE(rf_instance_set_start(inst, "horizontal", 0) == RF_OK);
  rf_result* res = nullptr;
  REQUIRE(rf_canonicalize(inst, nullptr, 0, &res) == RF_OK);
  char* s = nullptr;
  REQUIRE(rf_result_trace_jsonl(res, &s) == RF_OK);
  const std::string trace = take(s);
  char *csv = nullptr, *summary = nullptr;
  CHECK(rf_audit(inst, 0, trace.c_str(), &csv, &summary) == RF_OK);
  CHECK(take(csv).rfind("op_index,", 0) == 0);
  const std::string sum = take(summary);
  CHECK(sum.find("\"saturated\":true") != std::string::npos);
  CHECK(sum.find("\"final_total\":\"32\"") != std::string::npos);

  REQUIRE(rf_render_svg(inst, nullptr, 0, 4, &s) == RF_OK);
  CHECK(take(s).rfind("<svg", 0) == 0);
  REQUIRE(rf_render_svg(inst, trace.c_str(), 3, 0, &s) == RF_OK);
  rf_string_free(s);
  rf_result_free(res);
  rf_instance_free(inst);

  REQUIRE(rf_instance_generate("diagonal:3", &inst) == RF_OK);
  REQUIRE(rf_enumerate(inst, 0, 0, &s) == RF_OK);
  const std::string e = take(s);
  CHECK(e.find("\"nodes\":22") != std::string::npos);
  CHECK(e.find("\"diameter\":5") != std::string::npos);
  rf_instance_free(inst);
}

TEST_CASE("convex mode") {
  rf_instance* inst = nullptr;
  REQUIRE(rf_instance_generate("collinear:30", &inst) == RF_OK);
  int convex = 0;
  CHECK(rf_instance_is_convex(inst, &convex) == RF_OK);
  CHECK(convex == 1);
  REQUIRE(rf_instance_set_start(inst, "walk", 5) == RF_OK);
  CHECK(rf_instance_set_start(inst, "horizontal", 5) == RF_E_INVALID_ARGUMENT);
  rf_result* res = nullptr;
  REQUIRE(rf_canonicalize(inst, "collinear", 1, &res) == RF_OK);
  size_t ops = 0;
  rf_result_ops(res, &ops);
  CHECK(ops <= 240);
  char* s = nullptr;
  REQUIRE(rf_result_trace_jsonl(res, &s) == RF_OK);
  const std::string trace = take(s);
  CHECK(rf_replay(inst, trace.c_str(), nullptr) == RF_OK);
  rf_result_free(res);
  REQUIRE(rf_canonicalize(inst, "convex", 1, &res) == RF_OK);
  rf_result_free(res);
  CHECK(rf_enumerate(inst, 0, 0, &s) == RF_E_STRATEGY_MISMATCH);
  rf_instance_free(inst);
}
