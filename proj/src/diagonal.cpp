#include "diagonal.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"
#include "ops.hpp"

namespace rectiflip {

bool is_diagonal(const PointSet& P) {
  const auto& q = P.order_by_x();
  for (std::size_t t = 1; t < q.size(); ++t) {
    if (P[q[t - 1]].y > P[q[t]].y) return false;
  }
  return true;
}

namespace {

std::size_t ends_on_top_or_bottom(const Rectangulation& r, std::span<const int> segs) {
  std::size_t c = 0;
  for (int s : segs) {
    for (const Attachment& a : r.attach[s]) {
      c += a.is_boundary() && (a.side() == Side::Top || a.side() == Side::Bottom);
    }
  }
  return c;
}

// Applies single operations with bookkeeping shared by all phases.
class Runner {
 public:
  Runner(Rectangulation& r, const PointSet& P, OpTrace& trace, DiagonalStats& stats,
         const DiagonalOptions& opts)
      : r_(r), P_(P), trace_(trace), stats_(stats), opts_(opts) {}

  void watch_boundary(bool on) { watch_ = on; }

  void rotate(int j, End e) { step(Move::rotate(j, e)); }
  void flip(int p) { step(Move::flip(p)); }

  void shorten_and_flip(int i) {
    // Same loop as the generic routine, routed through step() for bookkeeping.
    const std::int64_t p = along_coord(P_, r_.orient[i], i);
    for (;;) {
      auto resting = attachments_on(r_, P_, i);
      if (resting.empty()) break;
      auto [c1, c2] = std::minmax_element(resting.begin(), resting.end(),
                                          [](const EndRef& a, const EndRef& b) { return a.coord < b.coord; });
      const EndRef& pick = c1->coord < p ? *c1 : *c2;
      rotate(pick.seg, pick.end);
    }
    flip(i);
  }

 private:
  void step(const Move& m) {
    std::vector<int> touched = touched_segments(r_, m);
    const std::size_t before = watch_ ? ends_on_top_or_bottom(r_, touched) : 0;
    TraceEntry entry{m, apply_move(r_, P_, m)};
    trace_.entries.push_back(entry);
    if (watch_ && ends_on_top_or_bottom(r_, touched) <= before) ++stats_.boundary_count_stalls;
    if (opts_.validate_each_op) {
      auto rep = validate_local(r_, P_, touched);
      if (!rep.ok()) throw Error(ErrorCode::InvalidState, "after " + to_string(m) + ": " + rep.summary());
    }
    if (opts_.hook && *opts_.hook) (*opts_.hook)(r_, entry);
  }

  Rectangulation& r_;
  const PointSet& P_;
  OpTrace& trace_;
  DiagonalStats& stats_;
  const DiagonalOptions& opts_;
  bool watch_ = false;
};

bool parallel_triple(const Rectangulation& r, const std::vector<int>& q, std::size_t t) {
  return r.orient[q[t - 1]] == r.orient[q[t]] && r.orient[q[t]] == r.orient[q[t + 1]];
}

// Endpoint of the chain: a point index, or one of R's two corners.
constexpr int kLowerLeft = -1;
constexpr int kUpperRight = -2;

// Monotone path from `from` along its segment and then along seg(to) (or the
// corresponding sides of R for corners).
bool l_path(const Rectangulation& r, const PointSet& P, int from, int to) {
  const Rect& R = P.rect();
  if (from == kLowerLeft) {
    SegmentGeometry g = segment_geometry(r, P, to);
    return g.lo == (g.orient == Orientation::Vertical ? R.y0 : R.x0);
  }
  SegmentGeometry ga = segment_geometry(r, P, from);
  if (to == kUpperRight) return ga.hi == (ga.orient == Orientation::Vertical ? R.y1 : R.x1);
  if (r.orient[from] == r.orient[to]) return false;
  SegmentGeometry gt = segment_geometry(r, P, to);
  if (ga.orient == Orientation::Horizontal) return ga.hi >= P[to].x && gt.lo <= P[from].y;
  return ga.hi >= P[to].y && gt.lo <= P[from].x;
}

}  // namespace

void no_three_parallel(Rectangulation& r, const PointSet& P, OpTrace& trace, DiagonalStats& stats,
                       const DiagonalOptions& opts) {
  const auto& q = P.order_by_x();
  const std::size_t start = trace.size();
  Runner run(r, P, trace, stats, opts);
  // Flipping q[t] breaks every triple that contains it, and the triple ending
  // at q[t] was already clean, so one forward pass suffices.
  for (std::size_t t = 1; t + 1 < q.size(); ++t) {
    if (parallel_triple(r, q, t)) run.shorten_and_flip(q[t]);
  }
  std::set<std::pair<int, End>> extended;
  for (std::size_t k = start; k < trace.size(); ++k) {
    const Move& m = trace.entries[k].move;
    if (m.kind == MoveKind::Flip) {
      ++stats.phase1_flips;
      continue;
    }
    ++stats.phase1_rotations;
    if (!extended.insert({m.index, m.end}).second) ++stats.phase1_repeat_extensions;
  }
  stats.phase_ops[0] += trace.size() - start;
}

Staircase build_staircase(Rectangulation& r, const PointSet& P, OpTrace& trace, DiagonalStats& stats,
                          const DiagonalOptions& opts) {
  const auto& q = P.order_by_x();
  const std::size_t n = q.size();
  for (std::size_t t = 1; t + 1 < n; ++t) {
    if (parallel_triple(r, q, t)) {
      throw Error(ErrorCode::PhasePreconditionViolated,
                  "segments of points " + std::to_string(q[t - 1]) + ", " + std::to_string(q[t]) + ", " +
                      std::to_string(q[t + 1]) + " are parallel");
    }
  }
  const std::size_t start = trace.size();
  Runner run(r, P, trace, stats, opts);
  Staircase st;
  std::vector<int> visited;
  int cur = kLowerLeft;
  std::size_t next = 0;  // position in q of the first point not yet passed
  while (next < n) {
    const int b = q[next];
    if (l_path(r, P, cur, b)) {
      visited.push_back(b);
      cur = b;
      ++next;
      continue;
    }
    const int c = next + 1 < n ? q[next + 1] : kUpperRight;
    if (c != kUpperRight && !l_path(r, P, cur, c)) {
      if (cur == kLowerLeft || r.orient[cur] != r.orient[b]) {
        internal_error("no monotone path between consecutive perpendicular segments");
      }
      // seg(c) ends on seg(b); clear seg(b) beyond b, ending with the junction at c.
      const std::int64_t pb = along_coord(P, r.orient[b], b);
      auto resting = attachments_on(r, P, b);
      std::vector<EndRef> beyond;
      for (const EndRef& e : resting) {
        if (e.coord > pb) beyond.push_back(e);
      }
      std::sort(beyond.begin(), beyond.end(), [](const EndRef& x, const EndRef& y) { return x.coord > y.coord; });
      for (const EndRef& e : beyond) {
        run.rotate(e.seg, e.end);
        ++stats.phase2_rotations;
      }
      if (!l_path(r, P, cur, c)) internal_error("junction rotations left no path to the point after next");
    }
    st.skipped.push_back(b);
    if (c == kUpperRight) {
      if (!l_path(r, P, cur, kUpperRight)) internal_error("no path to the upper right corner");
      next = n;
    } else {
      visited.push_back(c);
      cur = c;
      next += 2;
    }
  }

  const Rect& R = P.rect();
  for (std::size_t t = 0; t < visited.size(); ++t) {
    const int s = visited[t];
    const bool vertical = r.orient[s] == Orientation::Vertical;
    std::int64_t lo = vertical ? R.y0 : R.x0, hi = vertical ? R.y1 : R.x1;
    if (t > 0) lo = vertical ? P[visited[t - 1]].y : P[visited[t - 1]].x;
    if (t + 1 < visited.size()) hi = vertical ? P[visited[t + 1]].y : P[visited[t + 1]].x;
    st.steps.push_back({s, r.orient[s], lo, hi});
  }
  stats.phase_ops[1] += trace.size() - start;
  return st;
}

void sweep_regions(Rectangulation& r, const PointSet& P, const Staircase& st, OpTrace& trace,
                   DiagonalStats& stats, const DiagonalOptions& opts) {
  const std::size_t start = trace.size();
  Runner run(r, P, trace, stats, opts);
  run.watch_boundary(true);

  // Above the chain: skipped horizontals, and chain horizontals left of their step.
  struct Portion {
    std::int64_t y;
    int seg;
    std::int64_t cut;  // step boundary on the segment's axis
    bool skipped;
  };
  std::vector<Portion> above, below;
  for (int s : st.skipped) {
    if (r.orient[s] == Orientation::Horizontal) above.push_back({P[s].y, s, 0, true});
  }
  for (const auto& step : st.steps) {
    if (step.orient != Orientation::Horizontal) continue;
    SegmentGeometry g = segment_geometry(r, P, step.seg);
    if (g.lo < step.lo) above.push_back({P[step.seg].y, step.seg, step.lo, false});
    if (g.hi > step.hi) below.push_back({P[step.seg].y, step.seg, step.hi, false});
  }
  std::sort(above.begin(), above.end(), [](const Portion& a, const Portion& b) { return a.y > b.y; });
  std::sort(below.begin(), below.end(), [](const Portion& a, const Portion& b) { return a.y < b.y; });

  for (const Portion& part : above) {
    if (part.skipped) {
      run.shorten_and_flip(part.seg);
      continue;
    }
    auto resting = attachments_on(r, P, part.seg);
    std::vector<EndRef> left;
    for (const EndRef& e : resting) {
      if (e.coord <= part.cut) left.push_back(e);
    }
    std::sort(left.begin(), left.end(), [](const EndRef& a, const EndRef& b) { return a.coord < b.coord; });
    for (const EndRef& e : left) run.rotate(e.seg, e.end);
  }
  for (const Portion& part : below) {
    auto resting = attachments_on(r, P, part.seg);
    std::vector<EndRef> right;
    for (const EndRef& e : resting) {
      if (e.coord >= part.cut) right.push_back(e);
    }
    std::sort(right.begin(), right.end(), [](const EndRef& a, const EndRef& b) { return a.coord > b.coord; });
    for (const EndRef& e : right) run.rotate(e.seg, e.end);
  }
  stats.phase_ops[2] += trace.size() - start;
}

void finish_strips(Rectangulation& r, const PointSet& P, const Staircase& st, OpTrace& trace,
                   DiagonalStats& stats, const DiagonalOptions& opts) {
  const std::size_t start = trace.size();
  Runner run(r, P, trace, stats, opts);
  run.watch_boundary(true);
  const auto& q = P.order_by_x();
  for (const auto& step : st.steps) {
    if (step.orient != Orientation::Horizontal) continue;
    auto first = std::upper_bound(q.begin(), q.end(), step.lo, [&](std::int64_t x, int i) { return x < P[i].x; });
    auto last = std::lower_bound(q.begin(), q.end(), step.hi, [&](int i, std::int64_t x) { return P[i].x < x; });
    const std::size_t inside = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, last - first));
    stats.max_strip_points = std::max(stats.max_strip_points, inside);
    if (inside > 3) {
      throw Error(ErrorCode::StripTooLarge, "strip of segment " + std::to_string(step.seg) + " holds " +
                                                std::to_string(inside) + " points");
    }
    run.shorten_and_flip(step.seg);
  }
  stats.phase_ops[3] += trace.size() - start;
}

DiagonalResult canonicalize_diagonal(const Rectangulation& start, const PointSet& P,
                                     const DiagonalOptions& opts) {
  if (!is_diagonal(P)) throw Error(ErrorCode::NotDiagonal, "points are not in diagonal position");
  DiagonalResult res;
  res.final = start;
  res.trace.initial = encode(start);
  no_three_parallel(res.final, P, res.trace, res.stats, opts);
  res.staircase = build_staircase(res.final, P, res.trace, res.stats, opts);
  sweep_regions(res.final, P, res.staircase, res.trace, res.stats, opts);
  finish_strips(res.final, P, res.staircase, res.trace, res.stats, opts);
  if (!(res.final == canonical_vertical(P))) internal_error("diagonal phases did not end all-vertical");
  return res;
}

}  // namespace rectiflip
