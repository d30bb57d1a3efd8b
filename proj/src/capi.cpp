#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <variant>

#include "bitrev.hpp"
#include "canonical.hpp"
#include "convex.hpp"
#include "diagonal.hpp"
#include "errors.hpp"
#include "flipgraph.hpp"
#include "generators.hpp"
#include "io_json.hpp"
#include "ops.hpp"
#include "rectiflip.h"
#include "render_svg.hpp"

using namespace rectiflip;

struct rf_instance {
  std::variant<Instance, ConvexInstance> data;
};

struct rf_result {
  std::size_t n = 0;
  std::string strategy;
  OpTrace trace;
  std::size_t rounds = 0;
  bool bound_ok = true;
  json final_instance;
};

namespace {

thread_local std::string last_error;

rf_status status_of(ErrorCode c) { return static_cast<rf_status>(static_cast<int>(c) + 1); }

template <class F>
rf_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return RF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = e.what();
    return RF_E_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RF_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RF_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

const Instance& rect_of(const rf_instance* inst) {
  if (auto* r = std::get_if<Instance>(&inst->data)) return *r;
  throw Error(ErrorCode::StrategyMismatch, "operation needs a rectilinear instance");
}

Rectangulation rect_state(const Instance& in) { return in.state ? *in.state : canonical_vertical(in.points); }

ConvexSubdivision convex_state(const ConvexInstance& in) {
  return in.state ? *in.state : convex_vertical(in.points);
}

json instance_json_of(const rf_instance* inst) {
  if (auto* r = std::get_if<Instance>(&inst->data)) {
    const Rectangulation s = rect_state(*r);
    return instance_json(r->points, &s);
  }
  const auto& c = std::get<ConvexInstance>(inst->data);
  const ConvexSubdivision s = convex_state(c);
  return instance_json(c.points, &s);
}

bool shrinks(std::size_t before, std::size_t after, std::size_t divisor) {
  return before - after >= (before + divisor - 1) / divisor;
}

}  // namespace

extern "C" {

const char* rf_last_error(void) { return last_error.c_str(); }

const char* rf_status_name(rf_status status) {
  if (status == RF_OK) return "Ok";
  if (status < RF_OK || status > RF_E_INTERNAL) return "Unknown";
  return to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1));
}

const char* rf_version(void) { return "0.1.0"; }

void rf_string_free(char* s) { std::free(s); }

rf_status rf_instance_from_json(const char* text, rf_instance** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    const json j = parse_json_text(text, "instance");
    auto* inst = new rf_instance;
    try {
      if (is_convex_instance(j)) inst->data = parse_convex_instance(j);
      else inst->data = parse_instance(j);
    } catch (...) {
      delete inst;
      throw;
    }
    *out = inst;
  });
}

rf_status rf_instance_generate(const char* spec, rf_instance** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    const GenSpec g = parse_gen_spec(spec);
    auto* inst = new rf_instance;
    try {
      if (g.family == "collinear") {
        inst->data = ConvexInstance{PlanarPointSet::create(gen_collinear(static_cast<int>(g.size))), std::nullopt};
      } else {
        inst->data = Instance{generate(g), std::nullopt};
      }
    } catch (...) {
      delete inst;
      throw;
    }
    *out = inst;
  });
}

void rf_instance_free(rf_instance* inst) { delete inst; }

rf_status rf_instance_to_json(const rf_instance* inst, char** out) {
  return guarded([&] {
    need(inst, "instance");
    need(out, "out");
    *out = dup(instance_json_of(inst).dump(1));
  });
}

rf_status rf_instance_size(const rf_instance* inst, size_t* n) {
  return guarded([&] {
    need(inst, "instance");
    need(n, "n");
    *n = std::visit([](const auto& d) { return d.points.size(); }, inst->data);
  });
}

rf_status rf_instance_is_convex(const rf_instance* inst, int* convex) {
  return guarded([&] {
    need(inst, "instance");
    need(convex, "convex");
    *convex = std::holds_alternative<ConvexInstance>(inst->data);
  });
}

rf_status rf_instance_set_start(rf_instance* inst, const char* start, uint64_t seed) {
  return guarded([&] {
    need(inst, "instance");
    need(start, "start");
    const std::string s = start;
    Rng rng(seed);
    if (auto* r = std::get_if<Instance>(&inst->data)) {
      if (s == "vertical") r->state = canonical_vertical(r->points);
      else if (s == "horizontal") r->state = canonical_horizontal(r->points);
      else if (s == "walk") r->state = random_walk(canonical_vertical(r->points), r->points, 5 * r->points.size(), rng);
      else throw Error(ErrorCode::InvalidArgument, "unknown start '" + s + "'");
      return;
    }
    auto& c = std::get<ConvexInstance>(inst->data);
    if (s == "vertical") c.state = convex_vertical(c.points);
    else if (s == "walk") c.state = random_convex_walk(convex_vertical(c.points), c.points, 5 * c.points.size(), rng);
    else throw Error(ErrorCode::InvalidArgument, "start '" + s + "' is not available for convex instances");
  });
}

rf_status rf_instance_validate(const rf_instance* inst, char** report) {
  ValidationReport rep;
  rf_status st = guarded([&] {
    need(inst, "instance");
    if (auto* r = std::get_if<Instance>(&inst->data)) {
      rep = validate(rect_state(*r), r->points);
    } else {
      const auto& c = std::get<ConvexInstance>(inst->data);
      rep = validate_convex(convex_state(c), c.points);
    }
    json v = json::array();
    for (const Violation& x : rep.violations) {
      v.push_back({{"kind", to_string(x.kind)}, {"first", x.first}, {"second", x.second}, {"detail", x.detail}});
    }
    put(report, json{{"valid", rep.ok()}, {"violations", v}}.dump());
  });
  if (st == RF_OK && !rep.ok()) {
    last_error = rep.summary();
    return RF_E_INVALID_STATE;
  }
  return st;
}

rf_status rf_canonicalize(const rf_instance* inst, const char* strategy, int validate_ops, rf_result** out) {
  return guarded([&] {
    need(inst, "instance");
    need(out, "out");
    auto res = std::make_unique<rf_result>();
    const bool convex = std::holds_alternative<ConvexInstance>(inst->data);
    res->strategy = strategy ? strategy : (convex ? "convex" : "general");
    const std::string& s = res->strategy;
    if (!convex) {
      const Instance& in = std::get<Instance>(inst->data);
      const Rectangulation start = rect_state(in);
      res->n = in.points.size();
      Rectangulation final;
      if (s == "general") {
        CanonicalizeOptions o;
        o.validate_each_op = validate_ops != 0;
        auto r = canonicalize(start, in.points, o);
        for (const RoundRecord& rr : r.rounds) res->bound_ok &= shrinks(rr.horizontal_before, rr.horizontal_after, 6);
        res->rounds = r.rounds.size();
        res->trace = std::move(r.trace);
        final = r.final;
      } else if (s == "diagonal") {
        if (!is_diagonal(in.points)) throw Error(ErrorCode::StrategyMismatch, "points are not diagonal");
        DiagonalOptions o;
        o.validate_each_op = validate_ops != 0;
        auto r = canonicalize_diagonal(start, in.points, o);
        res->rounds = 4;
        res->trace = std::move(r.trace);
        res->bound_ok = res->trace.size() <= 12 * res->n;
        final = r.final;
      } else {
        throw Error(ErrorCode::StrategyMismatch, "strategy '" + s + "' does not apply to rectangulations");
      }
      res->final_instance = instance_json(in.points, &final);
    } else {
      const ConvexInstance& in = std::get<ConvexInstance>(inst->data);
      const ConvexSubdivision start = convex_state(in);
      res->n = in.points.size();
      ConvexOptions o;
      o.validate_each_op = validate_ops != 0;
      ConvexResult r;
      if (s == "convex") {
        r = canonicalize_convex(start, in.points, o);
        for (const ConvexRoundRecord& rr : r.rounds) {
          res->bound_ok &= shrinks(rr.nonvertical_before, rr.nonvertical_after, 54);
        }
        res->rounds = r.rounds.size();
      } else if (s == "collinear") {
        r = collinear_canonicalize(start, in.points, o);
        res->rounds = 2;
        res->bound_ok = r.trace.size() <= 8 * res->n;
      } else {
        throw Error(ErrorCode::StrategyMismatch, "strategy '" + s + "' does not apply to convex subdivisions");
      }
      res->trace = std::move(r.trace);
      res->final_instance = instance_json(in.points, &r.final);
    }
    *out = res.release();
  });
}

void rf_result_free(rf_result* res) { delete res; }

rf_status rf_result_ops(const rf_result* res, size_t* ops) {
  return guarded([&] {
    need(res, "result");
    need(ops, "ops");
    *ops = res->trace.size();
  });
}

rf_status rf_result_bound_ok(const rf_result* res, int* ok) {
  return guarded([&] {
    need(res, "result");
    need(ok, "ok");
    *ok = res->bound_ok;
  });
}

rf_status rf_result_stats_json(const rf_result* res, char** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    *out = dup(to_json(make_stats(res->n, res->strategy, res->trace, res->rounds)).dump());
  });
}

rf_status rf_result_stats_csv(const rf_result* res, int header, char** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    std::string s = header ? stats_csv_header() + "\n" : "";
    *out = dup(s + stats_csv_row(make_stats(res->n, res->strategy, res->trace, res->rounds)) + "\n");
  });
}

rf_status rf_result_trace_jsonl(const rf_result* res, char** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    *out = dup(trace_to_jsonl(res->trace));
  });
}

rf_status rf_result_final_json(const rf_result* res, char** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    *out = dup(res->final_instance.dump(1));
  });
}

rf_status rf_replay(const rf_instance* inst, const char* trace_jsonl, char** final_json) {
  return guarded([&] {
    need(inst, "instance");
    need(trace_jsonl, "trace");
    const OpTrace trace = parse_trace_jsonl(trace_jsonl);
    auto as_state_error = [](const Error& e) {
      if (e.code() == ErrorCode::IllegalFlip || e.code() == ErrorCode::IllegalRotate ||
          e.code() == ErrorCode::InvalidDirection) {
        throw Error(ErrorCode::InvalidState, e.what());
      }
      throw;
    };
    if (auto* r = std::get_if<Instance>(&inst->data)) {
      Rectangulation fin;
      try {
        fin = replay(rect_state(*r), r->points, trace, true);
      } catch (const Error& e) {
        as_state_error(e);
      }
      put(final_json, instance_json(r->points, &fin).dump(1));
    } else {
      const auto& c = std::get<ConvexInstance>(inst->data);
      ConvexSubdivision fin;
      try {
        fin = replay(convex_state(c), c.points, trace, true);
      } catch (const Error& e) {
        as_state_error(e);
      }
      put(final_json, instance_json(c.points, &fin).dump(1));
    }
  });
}

rf_status rf_audit(const rf_instance* inst, int k, const char* trace_jsonl, char** csv, char** summary) {
  bool violated = false;
  std::string first_violation;
  rf_status st = guarded([&] {
    need(inst, "instance");
    need(trace_jsonl, "trace");
    const Instance& in = rect_of(inst);
    if (k <= 0) k = static_cast<int>(std::floor(std::log2(static_cast<double>(in.points.size()))));
    const OpTrace trace = parse_trace_jsonl(trace_jsonl);
    const AuditReport rep = audit_trace(in.points, k, rect_state(in), trace, false);
    put(csv, rep.csv());
    const bool saturated = rep.final_total == mpq_class(static_cast<long>(k) << (k - 1));
    json j{{"k", k},
           {"ops", trace.size()},
           {"lower_bound", lower_bound(k)},
           {"initial_total", rep.initial_total.get_str()},
           {"final_total", rep.final_total.get_str()},
           {"saturated", saturated},
           {"containment_checks", rep.containment_checks},
           {"violations", rep.violations},
           {"ok", rep.ok()}};
    put(summary, j.dump());
    violated = !rep.ok();
    if (violated) first_violation = rep.violations.front();
  });
  if (st == RF_OK && violated) {
    last_error = first_violation;
    return RF_E_AUDIT_VIOLATION;
  }
  return st;
}

rf_status rf_enumerate(const rf_instance* inst, size_t node_limit, int with_edges, char** out) {
  return guarded([&] {
    need(inst, "instance");
    need(out, "out");
    const Instance& in = rect_of(inst);
    const FlipGraph g = enumerate(in.points, node_limit ? node_limit : kDefaultNodeLimit);
    json j{{"n", in.points.size()},
           {"nodes", g.node_count()},
           {"edges", g.edge_count()},
           {"count", g.node_count()},
           {"truncated", g.truncated},
           {"connected", connected(g)}};
    j["diameter"] = g.truncated ? json(nullptr) : json(diameter(g));
    if (with_edges) {
      json e = json::array();
      for (int u = 0; u < static_cast<int>(g.node_count()); ++u) {
        for (const auto& [v, m] : g.adj[u]) {
          if (u < v) e.push_back({{"from", u}, {"to", v}, {"move", to_json(m)}});
        }
      }
      j["edge_list"] = e;
    }
    *out = dup(j.dump());
  });
}

rf_status rf_render_svg(const rf_instance* inst, const char* trace_jsonl, size_t frame, int boxes_k, char** svg) {
  return guarded([&] {
    need(inst, "instance");
    need(svg, "svg");
    SvgOptions o;
    o.boxes_k = boxes_k;
    if (auto* c = std::get_if<ConvexInstance>(&inst->data)) {
      ConvexSubdivision r = convex_state(*c);
      if (trace_jsonl) {
        const OpTrace t = parse_trace_jsonl(trace_jsonl);
        if (frame > t.size()) throw Error(ErrorCode::InvalidArgument, "frame index past the end of the trace");
        for (std::size_t s = 0; s < frame; ++s) apply_move(r, c->points, t.entries[s].move);
      }
      *svg = dup(render_svg(c->points, r, o));
      return;
    }
    const Instance& in = std::get<Instance>(inst->data);
    Rectangulation r = rect_state(in);
    if (trace_jsonl) {
      const OpTrace t = parse_trace_jsonl(trace_jsonl);
      if (frame > t.size()) throw Error(ErrorCode::InvalidArgument, "frame index past the end of the trace");
      for (std::size_t s = 0; s < frame; ++s) apply_move(r, in.points, t.entries[s].move);
    }
    *svg = dup(render_svg(in.points, r, o));
  });
}

}  // extern "C"
