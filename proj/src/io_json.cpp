#include "io_json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace rectiflip {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Parse, what); }

std::int64_t get_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<std::int64_t>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Point> parse_points(const json& j) {
  if (!j.is_array()) bad("'points' must be an array");
  std::vector<Point> pts;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 2) bad("each point must be [x, y]");
    pts.push_back({get_int(p[0], "x"), get_int(p[1], "y")});
  }
  return pts;
}

json points_json(std::span<const Point> pts) {
  json a = json::array();
  for (const Point& p : pts) a.push_back({p.x, p.y});
  return a;
}

const char* side_name(Side s) {
  switch (s) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Bottom: return "bottom";
    case Side::Top: return "top";
  }
  return "?";
}

Attachment parse_attachment(const json& j, std::size_t n) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "left") return Attachment::boundary(Side::Left);
    if (s == "right") return Attachment::boundary(Side::Right);
    if (s == "bottom") return Attachment::boundary(Side::Bottom);
    if (s == "top") return Attachment::boundary(Side::Top);
    bad("unknown boundary side '" + s + "'");
  }
  const std::int64_t seg = get_int(field(j, "seg"), "seg");
  if (seg < 0 || static_cast<std::size_t>(seg) >= n) bad("segment index " + std::to_string(seg) + " out of range");
  return Attachment::on_segment(static_cast<int>(seg));
}

ConvexEnd parse_convex_end(const json& j, std::size_t n) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") bad("a convex end is \"inf\" or {\"seg\": j}");
    return ConvexEnd::infinite();
  }
  const std::int64_t seg = get_int(field(j, "seg"), "seg");
  if (seg < 0 || static_cast<std::size_t>(seg) >= n) bad("segment index " + std::to_string(seg) + " out of range");
  return ConvexEnd::on_segment(static_cast<int>(seg));
}

End parse_end(const json& j) {
  if (j == "low") return End::Low;
  if (j == "high") return End::High;
  bad("end must be \"low\" or \"high\"");
}

}  // namespace

json to_json(const Rectangulation& r) {
  json orient = json::array(), attach = json::array();
  for (std::size_t i = 0; i < r.size(); ++i) {
    orient.push_back(r.orient[i] == Orientation::Vertical ? "V" : "H");
    json ends = json::array();
    for (Attachment a : r.attach[i]) {
      if (a.is_boundary()) ends.push_back(side_name(a.side()));
      else ends.push_back({{"seg", a.segment()}});
    }
    attach.push_back(ends);
  }
  return {{"orient", orient}, {"attach", attach}};
}

json to_json(const ConvexSubdivision& r) {
  json segs = json::array();
  for (std::size_t i = 0; i < r.size(); ++i) {
    json ends = json::array();
    for (ConvexEnd e : r.attach[i]) {
      if (e.is_infinite()) ends.push_back("inf");
      else ends.push_back({{"seg", e.segment()}});
    }
    segs.push_back({{"dir", {r.dir[i].dx, r.dir[i].dy}}, {"ends", ends}});
  }
  return {{"segments", segs}};
}

json instance_json(const PointSet& P, const Rectangulation* r) {
  const Rect& R = P.rect();
  json j{{"rect", {R.x0, R.y0, R.x1, R.y1}}, {"points", points_json(P.points())}};
  if (r) j["rectangulation"] = to_json(*r);
  return j;
}

json instance_json(const PlanarPointSet& P, const ConvexSubdivision* r) {
  json j{{"mode", "convex"}, {"points", points_json(P.points())}};
  if (r) j["subdivision"] = to_json(*r);
  return j;
}

bool is_convex_instance(const json& j) { return j.is_object() && j.value("mode", "") == "convex"; }

Rectangulation parse_rectangulation(const json& j, std::size_t n) {
  const json& orient = field(j, "orient");
  const json& attach = field(j, "attach");
  if (!orient.is_array() || orient.size() != n) bad("'orient' needs one entry per point");
  if (!attach.is_array() || attach.size() != n) bad("'attach' needs one entry per point");
  Rectangulation r;
  for (std::size_t i = 0; i < n; ++i) {
    if (orient[i] == "V") r.orient.push_back(Orientation::Vertical);
    else if (orient[i] == "H") r.orient.push_back(Orientation::Horizontal);
    else bad("orientation must be \"V\" or \"H\"");
    if (!attach[i].is_array() || attach[i].size() != 2) bad("each attach entry is [low, high]");
    r.attach.push_back({parse_attachment(attach[i][0], n), parse_attachment(attach[i][1], n)});
  }
  return r;
}

ConvexSubdivision parse_subdivision(const json& j, std::size_t n) {
  const json& segs = field(j, "segments");
  if (!segs.is_array() || segs.size() != n) bad("'segments' needs one entry per point");
  ConvexSubdivision r;
  for (const json& s : segs) {
    const json& d = field(s, "dir");
    const json& ends = field(s, "ends");
    if (!d.is_array() || d.size() != 2) bad("'dir' must be [dx, dy]");
    const std::int64_t dx = get_int(d[0], "dx"), dy = get_int(d[1], "dy");
    if (dx == 0 && dy == 0) bad("direction must be nonzero");
    r.dir.push_back(Direction::normalized(dx, dy));
    if (!ends.is_array() || ends.size() != 2) bad("'ends' must be [low, high]");
    r.attach.push_back({parse_convex_end(ends[0], n), parse_convex_end(ends[1], n)});
  }
  return r;
}

Instance parse_instance(const json& j) {
  if (is_convex_instance(j)) bad("expected a rectilinear instance, found a convex one");
  const json& rect = field(j, "rect");
  if (!rect.is_array() || rect.size() != 4) bad("'rect' must be [x0, y0, x1, y1]");
  Rect R{get_int(rect[0], "x0"), get_int(rect[1], "y0"), get_int(rect[2], "x1"), get_int(rect[3], "y1")};
  Instance inst{PointSet::create(parse_points(field(j, "points")), R), std::nullopt};
  if (j.contains("rectangulation")) inst.state = parse_rectangulation(j.at("rectangulation"), inst.points.size());
  return inst;
}

ConvexInstance parse_convex_instance(const json& j) {
  ConvexInstance inst{PlanarPointSet::create(parse_points(field(j, "points"))), std::nullopt};
  if (j.contains("subdivision")) inst.state = parse_subdivision(j.at("subdivision"), inst.points.size());
  return inst;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(what + ": " + e.what());
  }
}

json to_json(const Move& m) {
  if (m.kind == MoveKind::Flip) {
    json j{{"op", "flip"}, {"p", m.index}};
    if (m.dir) j["dir"] = {m.dir->dx, m.dir->dy};
    return j;
  }
  return {{"op", "rotate"}, {"seg", m.index}, {"end", m.end == End::Low ? "low" : "high"}};
}

json to_json(const TraceEntry& e) {
  json j = to_json(e.move);
  j["weight"] = e.weight;
  return j;
}

Move parse_move(const json& j) {
  const json& op = field(j, "op");
  if (op == "flip") {
    const int p = static_cast<int>(get_int(field(j, "p"), "p"));
    if (!j.contains("dir")) return Move::flip(p);
    const json& d = j.at("dir");
    if (!d.is_array() || d.size() != 2) bad("'dir' must be [dx, dy]");
    const std::int64_t dx = get_int(d[0], "dx"), dy = get_int(d[1], "dy");
    if (dx == 0 && dy == 0) bad("direction must be nonzero");
    return Move::flip(p, Direction::normalized(dx, dy));
  }
  if (op == "rotate") return Move::rotate(static_cast<int>(get_int(field(j, "seg"), "seg")), parse_end(field(j, "end")));
  bad("op must be \"flip\" or \"rotate\"");
}

std::string trace_to_jsonl(const OpTrace& trace) {
  std::string out;
  for (const TraceEntry& e : trace.entries) out += to_json(e).dump() + "\n";
  return out;
}

OpTrace parse_trace_jsonl(const std::string& text) {
  OpTrace trace;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      TraceEntry e{parse_move(j), 0};
      if (j.contains("weight")) e.weight = j.at("weight").get<std::uint64_t>();
      trace.entries.push_back(e);
    } catch (const json::exception& ex) {
      bad("trace line " + std::to_string(line_no) + ": " + ex.what());
    } catch (const Error& ex) {
      bad("trace line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return trace;
}

RunStats make_stats(std::size_t n, const std::string& strategy, const OpTrace& trace, std::size_t rounds) {
  RunStats s;
  s.n = n;
  s.strategy = strategy;
  s.ops = trace.size();
  s.rounds = rounds;
  s.ops_per_n = n ? static_cast<double>(s.ops) / static_cast<double>(n) : 0.0;
  const double nlogn = n > 1 ? static_cast<double>(n) * std::log2(static_cast<double>(n)) : 0.0;
  s.ops_per_nlogn = nlogn > 0 ? static_cast<double>(s.ops) / nlogn : 0.0;
  s.max_weight = trace.max_weight();
  return s;
}

json to_json(const RunStats& s) {
  return {{"n", s.n},
          {"strategy", s.strategy},
          {"ops", s.ops},
          {"rounds", s.rounds},
          {"ops_per_n", s.ops_per_n},
          {"ops_per_nlogn", s.ops_per_nlogn},
          {"max_weight", s.max_weight}};
}

std::string stats_csv_header() { return "n,strategy,ops,rounds,ops_per_n,ops_per_nlogn,max_weight"; }

std::string stats_csv_row(const RunStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%s,%zu,%zu,%.4f,%.4f,%llu", s.n, s.strategy.c_str(), s.ops, s.rounds,
                s.ops_per_n, s.ops_per_nlogn, static_cast<unsigned long long>(s.max_weight));
  return buf;
}

}  // namespace rectiflip
