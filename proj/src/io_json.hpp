#pragma once

#include <optional>
#include <string>

#include "convex.hpp"
#include "json.hpp"
#include "moves.hpp"
#include "point_set.hpp"
#include "rectangulation.hpp"

namespace rectiflip {

using json = nlohmann::json;

std::string read_file(const std::string& path);   // throws Io
void write_file(const std::string& path, const std::string& text);

/// Rectilinear instance: {"rect":[x0,y0,x1,y1], "points":[[x,y],...],
/// "rectangulation":{"orient":[...], "attach":[[lo,hi],...]}} with the state optional.
struct Instance {
  PointSet points;
  std::optional<Rectangulation> state;
};

/// Convex instance: {"mode":"convex", "points":[...], "subdivision":{"segments":
/// [{"dir":[dx,dy], "ends":[lo,hi]}, ...]}} where an end is "inf" or {"seg":j}.
struct ConvexInstance {
  PlanarPointSet points;
  std::optional<ConvexSubdivision> state;
};

json to_json(const Rectangulation& r);
json to_json(const ConvexSubdivision& r);
json instance_json(const PointSet& P, const Rectangulation* r = nullptr);
json instance_json(const PlanarPointSet& P, const ConvexSubdivision* r = nullptr);

bool is_convex_instance(const json& j);
/// Parse errors and structural mismatches throw Parse.
Instance parse_instance(const json& j);
ConvexInstance parse_convex_instance(const json& j);
Rectangulation parse_rectangulation(const json& j, std::size_t n);
ConvexSubdivision parse_subdivision(const json& j, std::size_t n);
json parse_json_text(const std::string& text, const std::string& what);

/// One JSON object per line: {"op":"flip","p":i[,"dir":[dx,dy]]} or
/// {"op":"rotate","seg":j,"end":"low"|"high"}, with an optional "weight".
json to_json(const Move& m);
json to_json(const TraceEntry& e);
Move parse_move(const json& j);
std::string trace_to_jsonl(const OpTrace& trace);
OpTrace parse_trace_jsonl(const std::string& text);

struct RunStats {
  std::size_t n = 0;
  std::string strategy;
  std::size_t ops = 0;
  std::size_t rounds = 0;
  double ops_per_n = 0;
  double ops_per_nlogn = 0;
  std::uint64_t max_weight = 0;
};

RunStats make_stats(std::size_t n, const std::string& strategy, const OpTrace& trace, std::size_t rounds);
json to_json(const RunStats& s);
std::string stats_csv_header();
std::string stats_csv_row(const RunStats& s);

}  // namespace rectiflip
