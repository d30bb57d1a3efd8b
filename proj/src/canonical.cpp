#include "canonical.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "errors.hpp"
#include "ops.hpp"

namespace rectiflip {

std::size_t Graph::edge_count() const noexcept {
  std::size_t deg = 0;
  for (const auto& a : adj) deg += a.size();
  return deg / 2;
}

void Graph::add_edge(int a, int b) {
  if (a == b || has_edge(a, b)) return;
  adj[a].push_back(b);
  adj[b].push_back(a);
}

bool Graph::has_edge(int a, int b) const {
  const auto& s = adj[a].size() <= adj[b].size() ? adj[a] : adj[b];
  const int other = adj[a].size() <= adj[b].size() ? b : a;
  return std::find(s.begin(), s.end(), other) != s.end();
}

Graph bar_visibility_sweep(const std::vector<Bar>& bars) {
  const int m = static_cast<int>(bars.size());
  Graph g(m);
  // Events: bars leave at hi and enter at lo; the active set between two
  // consecutive event abscissae is ordered by y (all y values distinct).
  std::map<std::int64_t, std::pair<std::vector<int>, std::vector<int>>> events;
  for (int k = 0; k < m; ++k) {
    events[bars[k].lo].second.push_back(k);
    events[bars[k].hi].first.push_back(k);
  }
  std::map<std::int64_t, int> active;  // y -> bar
  std::set<std::pair<int, int>> seen;
  auto link = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    if (seen.insert({a, b}).second) g.add_edge(a, b);
  };
  for (auto& [x, ev] : events) {
    auto& [leaving, entering] = ev;
    for (int k : leaving) active.erase(bars[k].y);
    for (int k : entering) active.emplace(bars[k].y, k);
    for (int k : entering) {
      auto it = active.find(bars[k].y);
      if (it != active.begin()) link(std::prev(it)->second, k);
      if (auto nx = std::next(it); nx != active.end()) link(k, nx->second);
    }
    for (int k : leaving) {
      auto it = active.lower_bound(bars[k].y);
      if (it == active.end() || it == active.begin()) continue;
      link(std::prev(it)->second, it->second);
    }
  }
  return g;
}

Graph bar_visibility_naive(const std::vector<Bar>& bars) {
  const int m = static_cast<int>(bars.size());
  Graph g(m);
  std::vector<std::int64_t> xs;
  for (const Bar& b : bars) {
    xs.push_back(b.lo);
    xs.push_back(b.hi);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  // Doubled coordinates: midpoints of elementary intervals become integers.
  auto covers = [](const Bar& b, std::int64_t x2) { return 2 * b.lo < x2 && x2 < 2 * b.hi; };
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const std::int64_t ylo = std::min(bars[a].y, bars[b].y), yhi = std::max(bars[a].y, bars[b].y);
      for (std::size_t t = 0; t + 1 < xs.size(); ++t) {
        const std::int64_t x2 = xs[t] + xs[t + 1];
        if (!covers(bars[a], x2) || !covers(bars[b], x2)) continue;
        bool blocked = false;
        for (int c = 0; c < m && !blocked; ++c) {
          blocked = c != a && c != b && ylo < bars[c].y && bars[c].y < yhi && covers(bars[c], x2);
        }
        if (!blocked) {
          g.add_edge(a, b);
          break;
        }
      }
    }
  }
  return g;
}

BarVisibilityGraph bar_visibility(const Rectangulation& r, const PointSet& P) {
  BarVisibilityGraph out;
  for (int i = 0; i < static_cast<int>(r.size()); ++i) {
    if (r.orient[i] != Orientation::Horizontal) continue;
    SegmentGeometry g = segment_geometry(r, P, i);
    out.bars.push_back({i, g.fixed, g.lo, g.hi});
  }
  out.graph = bar_visibility_sweep(out.bars);
  return out;
}

std::vector<int> independent_set(const Graph& g) {
  const int m = static_cast<int>(g.size());
  std::vector<int> deg(m);
  std::set<std::pair<int, int>> queue;
  for (int v = 0; v < m; ++v) {
    deg[v] = static_cast<int>(g.adj[v].size());
    queue.insert({deg[v], v});
  }
  std::vector<char> gone(m, 0);
  std::vector<int> out;
  auto remove = [&](int v) {
    gone[v] = 1;
    queue.erase({deg[v], v});
    for (int w : g.adj[v]) {
      if (gone[w]) continue;
      queue.erase({deg[w], w});
      --deg[w];
      queue.insert({deg[w], w});
    }
  };
  while (!queue.empty()) {
    const int v = queue.begin()->second;
    out.push_back(v);
    std::vector<int> nbrs;
    for (int w : g.adj[v]) {
      if (!gone[w]) nbrs.push_back(w);
    }
    remove(v);
    for (int w : nbrs) remove(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

StepHook checking_hook(const PointSet& P, const CanonicalizeOptions& opts) {
  return [&P, &opts](const Rectangulation& r, const TraceEntry& e) {
    if (opts.validate_each_op) {
      const int seg = e.move.index;
      auto rep = validate_local(r, P, std::span<const int>(&seg, 1));
      if (!rep.ok()) throw Error(ErrorCode::InvalidState, "after " + to_string(e.move) + ": " + rep.summary());
    }
    if (opts.hook && *opts.hook) (*opts.hook)(r, e);
  };
}

}  // namespace

RoundRecord flip_round(Rectangulation& r, const PointSet& P, OpTrace& trace,
                       const CanonicalizeOptions& opts) {
  RoundRecord rec;
  rec.horizontal_before = count_horizontal(r);
  const std::size_t before_ops = trace.size();
  BarVisibilityGraph h = bar_visibility(r, P);
  std::vector<int> chosen = independent_set(h.graph);
  rec.independent = chosen.size();
  const StepHook hook = checking_hook(P, opts);
  for (int v : chosen) shorten_and_flip(r, P, h.bars[v].seg, trace, &hook);
  rec.horizontal_after = count_horizontal(r);
  rec.ops = trace.size() - before_ops;
  if (opts.validate_rounds) {
    auto rep = validate(r, P);
    if (!rep.ok()) throw Error(ErrorCode::InvalidState, "after round: " + rep.summary());
  }
  return rec;
}

CanonicalizeResult canonicalize(const Rectangulation& start, const PointSet& P,
                                const CanonicalizeOptions& opts) {
  CanonicalizeResult res;
  res.final = start;
  res.trace.initial = encode(start);
  while (count_horizontal(res.final) > 0) {
    RoundRecord rec = flip_round(res.final, P, res.trace, opts);
    if (rec.horizontal_after >= rec.horizontal_before) internal_error("round made no progress");
    res.rounds.push_back(rec);
  }
  return res;
}

}  // namespace rectiflip
