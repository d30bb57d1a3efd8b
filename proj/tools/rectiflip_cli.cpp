#include <rectiflip.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kError = 1, kBound = 2, kInvalid = 3 };

struct Failure {
  rf_status status;
  std::string message;
};

int exit_code(rf_status s) {
  switch (s) {
    case RF_OK: return kOk;
    case RF_E_AUDIT_VIOLATION: return kBound;
    case RF_E_INVALID_STATE: return kInvalid;
    default: return kError;
  }
}

void check(rf_status s) {
  if (s != RF_OK) throw Failure{s, std::string(rf_status_name(s)) + ": " + rf_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  rf_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{RF_E_IO, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{RF_E_IO, "cannot write '" + path + "'"};
}

struct InstanceHandle {
  rf_instance* p = nullptr;
  InstanceHandle() = default;
  InstanceHandle(const InstanceHandle&) = delete;
  InstanceHandle& operator=(const InstanceHandle&) = delete;
  ~InstanceHandle() { rf_instance_free(p); }
};

struct ResultHandle {
  rf_result* p = nullptr;
  ResultHandle() = default;
  ResultHandle(const ResultHandle&) = delete;
  ResultHandle& operator=(const ResultHandle&) = delete;
  ~ResultHandle() { rf_result_free(p); }
};

struct Source {
  std::string instance;
  std::string gen;
  std::string start;
  std::string mode;
  std::uint64_t seed = 0;
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("--instance", src.instance, "Instance JSON file");
  cmd->add_option("--gen", src.gen, "Generator spec, e.g. diagonal:100 or random-permutation:50:7");
  cmd->add_option("--start", src.start, "Start state: vertical, horizontal or walk");
  cmd->add_option("--seed", src.seed, "Seed for random starts");
  cmd->add_option("--mode", src.mode, "Set to convex to treat the points as a convex-subdivision instance")
      ->check(CLI::IsMember({"convex", "rect"}));
}

void load(InstanceHandle& h, const Source& src) {
  if (src.instance.empty() == src.gen.empty()) throw Failure{RF_E_INVALID_ARGUMENT, "give exactly one of --instance, --gen"};
  if (!src.instance.empty()) check(rf_instance_from_json(slurp(src.instance).c_str(), &h.p));
  else check(rf_instance_generate(src.gen.c_str(), &h.p));
  int convex = 0;
  check(rf_instance_is_convex(h.p, &convex));
  if (src.mode == "convex" && !convex) {
    // Reload the same points without the rectangle or the rectilinear state.
    json j = json::parse(take([&] {
      char* s = nullptr;
      check(rf_instance_to_json(h.p, &s));
      return s;
    }()));
    json c{{"mode", "convex"}, {"points", j.at("points")}};
    rf_instance_free(h.p);
    h.p = nullptr;
    check(rf_instance_from_json(c.dump().c_str(), &h.p));
  }
  if (!src.start.empty()) check(rf_instance_set_start(h.p, src.start.c_str(), src.seed));
}

int cmd_gen(const Source& src, const std::string& out) {
  InstanceHandle h;
  load(h, src);
  char* s = nullptr;
  check(rf_instance_to_json(h.p, &s));
  emit(out, take(s) + "\n");
  return kOk;
}

int cmd_canonicalize(const Source& src, const std::string& strategy, const std::string& out,
                     const std::string& stats_out, const std::string& format, bool validate) {
  InstanceHandle h;
  load(h, src);
  ResultHandle r;
  check(rf_canonicalize(h.p, strategy.empty() ? nullptr : strategy.c_str(), validate, &r.p));
  char* s = nullptr;
  if (!out.empty()) {
    check(rf_result_trace_jsonl(r.p, &s));
    emit(out, take(s));
  }
  if (format == "csv") check(rf_result_stats_csv(r.p, 1, &s));
  else check(rf_result_stats_json(r.p, &s));
  emit(stats_out, take(s) + (format == "csv" ? "" : "\n"));
  int ok = 0;
  check(rf_result_bound_ok(r.p, &ok));
  if (!ok) std::cerr << "bound violated\n";
  return ok ? kOk : kBound;
}

int cmd_audit(const Source& src, const std::string& trace_path, int k, const std::string& out) {
  InstanceHandle h;
  Source s = src;
  if (s.start.empty()) s.start = "horizontal";
  load(h, s);
  std::string trace;
  if (trace_path.empty()) {
    ResultHandle r;
    check(rf_canonicalize(h.p, "general", 0, &r.p));
    char* t = nullptr;
    check(rf_result_trace_jsonl(r.p, &t));
    trace = take(t);
  } else {
    trace = slurp(trace_path);
  }
  char *csv = nullptr, *summary = nullptr;
  const rf_status st = rf_audit(h.p, k, trace.c_str(), &csv, &summary);
  if (st != RF_OK && st != RF_E_AUDIT_VIOLATION) check(st);
  emit(out, take(csv));
  const std::string sum = take(summary);
  std::cerr << sum << "\n";
  const json j = json::parse(sum);
  const bool ok = st == RF_OK && j.at("saturated").get<bool>() &&
                  j.at("ops").get<long long>() >= j.at("lower_bound").get<long long>();
  return ok ? kOk : kBound;
}

int cmd_enumerate(const Source& src, int n, std::size_t limit, bool edges, const std::string& out) {
  InstanceHandle h;
  Source s = src;
  if (s.instance.empty() && s.gen.empty()) {
    if (n < 1) throw Failure{RF_E_INVALID_ARGUMENT, "give --n, --gen or --instance"};
    s.gen = "diagonal:" + std::to_string(n);
  }
  load(h, s);
  char* o = nullptr;
  check(rf_enumerate(h.p, limit, edges, &o));
  const std::string text = take(o);
  emit(out, text + "\n");
  const json j = json::parse(text);
  if (j.at("truncated").get<bool>()) return kBound;
  return j.at("connected").get<bool>() ? kOk : kBound;
}

int cmd_render(const Source& src, const std::string& trace_path, int boxes, bool all_frames, long frame,
               const std::string& out) {
  InstanceHandle h;
  load(h, src);
  std::string trace;
  if (!trace_path.empty()) trace = slurp(trace_path);
  const char* t = trace_path.empty() ? nullptr : trace.c_str();
  if (!all_frames) {
    std::size_t f = 0;
    if (t) {
      // Default to the final frame of the trace.
      const std::size_t len = static_cast<std::size_t>(std::count(trace.begin(), trace.end(), '\n'));
      f = frame < 0 ? len : static_cast<std::size_t>(frame);
    }
    char* svg = nullptr;
    check(rf_render_svg(h.p, t, f, boxes, &svg));
    emit(out, take(svg));
    return kOk;
  }
  if (!t || out.empty() || out == "-") throw Failure{RF_E_INVALID_ARGUMENT, "--all-frames needs --trace and --out PREFIX"};
  const std::size_t len = static_cast<std::size_t>(std::count(trace.begin(), trace.end(), '\n'));
  for (std::size_t f = 0; f <= len; ++f) {
    char* svg = nullptr;
    check(rf_render_svg(h.p, t, f, boxes, &svg));
    char name[32];
    std::snprintf(name, sizeof name, "-%05zu.svg", f);
    emit(out + name, take(svg));
  }
  return kOk;
}

int cmd_validate(const Source& src, const std::string& trace_path, const std::string& out) {
  InstanceHandle h;
  load(h, src);
  char* report = nullptr;
  rf_status st = rf_instance_validate(h.p, &report);
  const std::string rep = take(report);
  if (st != RF_OK) {
    std::cerr << rep << "\n";
    check(st);
  }
  if (trace_path.empty()) {
    emit(out, rep + "\n");
    return kOk;
  }
  char* fin = nullptr;
  check(rf_replay(h.p, slurp(trace_path).c_str(), &fin));
  emit(out, take(fin) + "\n");
  return kOk;
}

struct BenchRow {
  long long size = 0;
  std::size_t runs = 0;
  double mean_ops = 0;
  std::size_t max_ops = 0;
  std::size_t n = 0;
  bool bounds_ok = true;
  std::string error;
};

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RECTIFLIP_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

int cmd_bench(const std::string& family, const std::vector<long long>& sizes, int seeds, std::string strategy,
              std::string start, const std::string& format, const std::string& out) {
  if (sizes.empty()) throw Failure{RF_E_INVALID_ARGUMENT, "bench needs --n with at least one size"};
  const bool bitrev = family == "bitreversal";
  if (start.empty()) start = bitrev ? "horizontal" : "walk";
  if (strategy.empty()) strategy = family == "diagonal" ? "diagonal" : family == "collinear" ? "collinear" : "";
  struct Job {
    std::size_t row;
    int seed;
  };
  std::vector<Job> jobs;
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    for (int s = 0; s < seeds; ++s) jobs.push_back({r, s});
  }
  std::vector<BenchRow> rows(sizes.size());
  std::vector<std::vector<std::size_t>> ops(sizes.size());
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      const Job job = jobs[j];
      const long long size = sizes[job.row];
      std::string spec = family + ":" + std::to_string(size);
      if (family == "random-permutation") spec += ":" + std::to_string(job.seed);
      std::optional<std::size_t> got;
      std::size_t n = 0;
      bool ok = true;
      std::string err;
      try {
        InstanceHandle h;
        check(rf_instance_generate(spec.c_str(), &h.p));
        check(rf_instance_set_start(h.p, start.c_str(), static_cast<std::uint64_t>(job.seed)));
        check(rf_instance_size(h.p, &n));
        ResultHandle r;
        check(rf_canonicalize(h.p, strategy.empty() ? nullptr : strategy.c_str(), 0, &r.p));
        std::size_t o = 0;
        int b = 0;
        check(rf_result_ops(r.p, &o));
        check(rf_result_bound_ok(r.p, &b));
        ok = b != 0;
        if (bitrev) ok &= static_cast<double>(o) >= std::ceil(static_cast<double>(size) * std::ldexp(1.0, static_cast<int>(size) - 3));
        got = o;
      } catch (const Failure& f) {
        ok = false;
        err = f.message;
      }
      std::lock_guard lock(mu);
      BenchRow& row = rows[job.row];
      row.size = size;
      row.n = std::max(row.n, n);
      row.bounds_ok &= ok;
      if (!err.empty() && row.error.empty()) row.error = err;
      if (got) ops[job.row].push_back(*got);
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::min<std::size_t>(worker_count(), jobs.size());
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  bool all_ok = true;
  json arr = json::array();
  std::string csv = "family,size,n,runs,mean_ops,max_ops,max_ops_per_n,max_ops_per_nlogn,bounds_ok\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    BenchRow& row = rows[r];
    row.runs = ops[r].size();
    for (std::size_t o : ops[r]) row.mean_ops += static_cast<double>(o);
    if (row.runs) row.mean_ops /= static_cast<double>(row.runs);
    row.max_ops = ops[r].empty() ? 0 : *std::max_element(ops[r].begin(), ops[r].end());
    const double n = static_cast<double>(row.n);
    const double per_n = n > 0 ? static_cast<double>(row.max_ops) / n : 0;
    const double per_nlogn = n > 1 ? static_cast<double>(row.max_ops) / (n * std::log2(n)) : 0;
    all_ok &= row.bounds_ok;
    char line[256];
    std::snprintf(line, sizeof line, "%s,%lld,%zu,%zu,%.2f,%zu,%.4f,%.4f,%d\n", family.c_str(), row.size, row.n,
                  row.runs, row.mean_ops, row.max_ops, per_n, per_nlogn, row.bounds_ok ? 1 : 0);
    csv += line;
    json j{{"family", family}, {"size", row.size},          {"n", row.n},
           {"runs", row.runs}, {"mean_ops", row.mean_ops},   {"max_ops", row.max_ops},
           {"max_ops_per_n", per_n}, {"max_ops_per_nlogn", per_nlogn}, {"bounds_ok", row.bounds_ok}};
    if (!row.error.empty()) j["error"] = row.error;
    arr.push_back(j);
  }
  emit(out, format == "json" ? arr.dump(1) + "\n" : csv);
  for (const BenchRow& row : rows) {
    if (!row.error.empty()) std::cerr << "size " << row.size << ": " << row.error << "\n";
  }
  return all_ok ? kOk : kBound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flip and rotate reconfiguration of rectangulations and convex subdivisions"};
  app.require_subcommand(1);
  Source src;
  std::string out, strategy, format = "json", trace_path, stats_out;
  std::size_t limit = 0;
  int k = 0, n = 0, boxes = 0, seeds = 10;
  long frame = -1;
  bool validate = false, edges = false, all_frames = false;
  std::string family;
  std::vector<long long> sizes;

  auto* gen = app.add_subcommand("gen", "Write an instance JSON");
  add_source(gen, src);
  gen->add_option("--out", out, "Output file (default stdout)");

  auto* canon = app.add_subcommand("canonicalize", "Transform the start state into the vertical one");
  add_source(canon, src);
  canon->add_option("--strategy", strategy, "general, diagonal, convex or collinear")
      ->check(CLI::IsMember({"general", "diagonal", "convex", "collinear"}));
  canon->add_option("--out", out, "Trace JSONL output");
  canon->add_option("--stats", stats_out, "Stats output (default stdout)");
  canon->add_option("--format", format, "Stats format")->check(CLI::IsMember({"json", "csv"}));
  canon->add_flag("--validate", validate, "Check every intermediate state");

  auto* audit = app.add_subcommand("audit", "Saturation audit of a trace on the bit-reversal set");
  add_source(audit, src);
  audit->add_option("--trace", trace_path, "Trace JSONL (default: run the general canonicalizer)");
  audit->add_option("--k", k, "Bit-reversal order (default floor(log2 n))");
  audit->add_option("--out", out, "Per-operation CSV output");

  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive flip graph of a small instance");
  add_source(enumerate, src);
  enumerate->add_option("--n", n, "Diagonal instance size when no instance is given");
  enumerate->add_option("--limit", limit, "Node limit");
  enumerate->add_flag("--edges", edges, "Include the edge list");
  enumerate->add_option("--out", out, "Output file");

  auto* render = app.add_subcommand("render", "SVG drawing of a state or of trace frames");
  add_source(render, src);
  render->add_option("--trace", trace_path, "Trace JSONL replayed from the start state");
  render->add_option("--boxes", boxes, "Overlay the boxes of P_k for this k");
  render->add_option("--frame", frame, "Frame index (default: last)");
  render->add_flag("--all-frames", all_frames, "Write PREFIX-00000.svg and onwards");
  render->add_option("--format", format, "Output format")->check(CLI::IsMember({"svg"}));
  render->add_option("--out", out, "Output file or frame prefix");

  auto* bench = app.add_subcommand("bench", "Operation counts over sizes and seeds");
  bench->add_option("--gen", family, "Generator family")
      ->required()
      ->check(CLI::IsMember({"diagonal", "random-permutation", "bitreversal", "collinear"}));
  bench->add_option("--n", sizes, "Sizes (k for bitreversal)")->delimiter(',')->required();
  bench->add_option("--seeds", seeds, "Seeds per size")->check(CLI::PositiveNumber);
  bench->add_option("--strategy", strategy, "Strategy override");
  bench->add_option("--start", src.start, "Start state (default walk, horizontal for bitreversal)");
  bench->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  bench->add_option("--out", out, "Output file");

  auto* valid = app.add_subcommand("validate", "Validate a state and optionally replay a trace");
  valid->alias("replay");
  add_source(valid, src);
  valid->add_option("--trace", trace_path, "Trace JSONL to replay");
  valid->add_option("--out", out, "Report or final instance output");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_gen(src, out);
    if (*canon) return cmd_canonicalize(src, strategy, out, stats_out, format, validate);
    if (*audit) return cmd_audit(src, trace_path, k, out);
    if (*enumerate) return cmd_enumerate(src, n, limit, edges, out);
    if (*render) return cmd_render(src, trace_path, boxes, all_frames, frame, out);
    if (*bench) return cmd_bench(family, sizes, seeds, strategy, src.start, format, out);
    if (*valid) return cmd_validate(src, trace_path, out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return exit_code(f.status);
  }
  return kError;
}
