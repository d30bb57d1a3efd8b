#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "convex.hpp"
#include "errors.hpp"

namespace rectiflip {

namespace {

using i128 = __int128;

// Shear x' = x + lambda * y. Normalizing a sheared direction may reverse it,
// in which case the segment's ends trade names.
bool reverses(const Direction& d, std::int64_t lambda) { return d.dx + lambda * d.dy < 0; }

Direction shear_dir(const Direction& d, std::int64_t lambda) {
  return Direction::normalized(d.dx + lambda * d.dy, d.dy);
}

ConvexSubdivision shear(const ConvexSubdivision& r, std::int64_t lambda) {
  ConvexSubdivision out = r;
  for (std::size_t i = 0; i < r.size(); ++i) {
    out.dir[i] = shear_dir(r.dir[i], lambda);
    if (reverses(r.dir[i], lambda)) std::swap(out.attach[i][0], out.attach[i][1]);
  }
  return out;
}

std::int64_t pick_shear(const PlanarPointSet& P) {
  for (std::int64_t lambda = 1;; ++lambda) {
    std::set<std::int64_t> xs;
    bool fits = true;
    for (const Point& p : P.points()) {
      const std::int64_t x = p.x + lambda * p.y;
      fits &= x >= -kConvexCoordLimit && x <= kConvexCoordLimit;
      xs.insert(x);
    }
    if (!fits) throw Error(ErrorCode::InvalidArgument, "no shear keeps the coordinates within 2^20");
    if (xs.size() == P.size()) return lambda;
  }
}

void emit(ConvexSubdivision& r, const PlanarPointSet& P, const Move& m, OpTrace& trace, const ConvexOptions& opts) {
  const auto touched = touched_segments(r, m);
  TraceEntry entry{m, apply_move(r, P, m)};
  trace.entries.push_back(entry);
  if (opts.validate_each_op) {
    auto rep = validate_convex_local(r, P, touched);
    if (!rep.ok()) throw Error(ErrorCode::InvalidState, "invalid state after " + to_string(m) + ": " + rep.summary());
  }
  if (opts.hook && *opts.hook) (*opts.hook)(r, entry);
}

void snf(ConvexSubdivision& r, const PlanarPointSet& P, int i, Direction sigma, OpTrace& trace,
         const ConvexOptions& opts) {
  const std::size_t before = trace.size();
  shorten_and_flip(r, P, i, sigma, trace, opts.hook);
  if (opts.validate_each_op) {
    auto rep = validate_convex(r, P);
    if (!rep.ok()) {
      throw Error(ErrorCode::InvalidState, "invalid state after Shorten&Flip of " + std::to_string(i) + " (ops " +
                                               std::to_string(before) + ".." + std::to_string(trace.size()) +
                                               "): " + rep.summary());
    }
  }
}

void require_valid(const ConvexSubdivision& r, const PlanarPointSet& P) {
  auto rep = validate_convex(r, P);
  if (!rep.ok()) throw Error(ErrorCode::InvalidState, "start state is invalid: " + rep.summary());
}

}  // namespace

ConvexResult canonicalize_convex(const ConvexSubdivision& start, const PlanarPointSet& P, const ConvexOptions& opts) {
  require_valid(start, P);
  ConvexResult res;
  res.trace.initial = encode(start);
  const std::int64_t lambda = P.distinct_x() ? 0 : pick_shear(P);
  res.shear = lambda;
  PlanarPointSet Q = P;
  ConvexSubdivision r = start;
  if (lambda) {
    std::vector<Point> pts(P.points().begin(), P.points().end());
    for (Point& p : pts) p.x += lambda * p.y;
    Q = PlanarPointSet::create(std::move(pts));
    r = shear(start, lambda);
    require_valid(r, Q);
  }

  OpTrace sheared;
  for (;;) {
    std::vector<int> nonvertical;
    for (int i = 0; i < static_cast<int>(r.size()); ++i) {
      if (!r.dir[i].is_vertical()) nonvertical.push_back(i);
    }
    if (nonvertical.empty()) break;
    ConvexRoundRecord rec;
    rec.nonvertical_before = nonvertical.size();
    const auto ext = extension_visibility(r, Q);
    std::vector<int> first;
    for (int v : independent_set(ext.support(nonvertical))) first.push_back(nonvertical[v]);
    std::vector<int> second;
    for (int v : independent_set(vertical_visibility(r, Q, first))) second.push_back(first[v]);
    rec.first_set = first.size();
    rec.second_set = second.size();
    if (second.size() * 54 < nonvertical.size()) {
      internal_error("round flipped " + std::to_string(second.size()) + " of " + std::to_string(nonvertical.size()) +
                     " nonvertical segments");
    }
    const std::size_t before = sheared.size();
    for (int s : second) snf(r, Q, s, Direction::vertical(), sheared, opts);
    rec.ops = sheared.size() - before;
    rec.nonvertical_after = count_nonvertical(r);
    if (rec.nonvertical_after >= rec.nonvertical_before) internal_error("round made no progress");
    res.rounds.push_back(rec);
  }
  if (r != convex_vertical(Q)) internal_error("canonicalization ended away from the vertical subdivision");
  res.phase_ops[0] = sheared.size();

  if (!lambda) {
    res.final = r;
    res.trace.entries = std::move(sheared.entries);
    return res;
  }
  // Map the trace back: end names follow the direction each segment has when
  // the operation is applied.
  ConvexSubdivision walk = shear(start, lambda);
  for (const TraceEntry& e : sheared.entries) {
    TraceEntry out = e;
    if (e.move.kind == MoveKind::Flip) {
      out.move.dir = shear_dir(*e.move.dir, -lambda);
    } else if (reverses(walk.dir[e.move.index], -lambda)) {
      out.move.end = opposite(e.move.end);
    }
    apply_move(walk, Q, e.move);
    res.trace.entries.push_back(out);
  }
  res.final = shear(r, -lambda);
  return res;
}

ConvexResult collinear_canonicalize(const ConvexSubdivision& start, const PlanarPointSet& P, const ConvexOptions& opts) {
  const int n = static_cast<int>(P.size());
  std::vector<int> q(n);
  std::iota(q.begin(), q.end(), 0);
  std::sort(q.begin(), q.end(), [&](int a, int b) { return P[a].x < P[b].x; });
  for (int t = 0; t < n; ++t) {
    if (P[q[t]].y != P[q[0]].y || P[q[t]].x != P[q[0]].x + t) {
      throw Error(ErrorCode::NotCollinear, "points must be evenly spaced unit steps on one horizontal line");
    }
  }
  require_valid(start, P);
  ConvexResult res;
  res.trace.initial = encode(start);
  ConvexSubdivision r = start;

  // Minimum absolute slope a/b over the nonvertical segments.
  std::int64_t a = -1, b = 1;
  for (const Direction& d : r.dir) {
    if (d.is_vertical()) continue;
    const std::int64_t dy = d.dy < 0 ? -d.dy : d.dy;
    if (a < 0 || i128(dy) * b < i128(a) * d.dx) a = dy, b = d.dx;
  }
  if (a < 0) {
    res.final = r;
    return res;
  }
  if (a == 0) throw Error(ErrorCode::NotCollinear, "a horizontal segment lies on the line through the points");
  const Direction up = Direction::normalized(b * n, a), down = Direction::normalized(b * n, -a);
  if (up.dx > kConvexDirLimit) throw Error(ErrorCode::InvalidDirection, "sweep direction exceeds 2^20");

  OpTrace& trace = res.trace;
  std::set<std::pair<int, int>> extended;
  auto count_repeats = [&](std::size_t from) {
    for (std::size_t k = from; k < trace.size(); ++k) {
      const Move& m = trace.entries[k].move;
      if (m.kind == MoveKind::Flip) {
        extended.erase({m.index, 0});
        extended.erase({m.index, 1});
      } else if (!extended.insert({m.index, index_of(m.end)}).second) {
        ++res.repeat_extensions;
      }
    }
  };
  for (int t = 0; t < n; ++t) {
    const int i = q[t];
    const std::size_t before = trace.size();
    snf(r, P, i, t % 2 == 0 ? up : down, trace, opts);
    count_repeats(before);
    if (t == 0) continue;
    if (r.end(i, End::Low) != ConvexEnd::on_segment(q[t - 1])) {
      throw Error(ErrorCode::PhasePreconditionViolated,
                  "segment " + std::to_string(i) + " does not rest on its left neighbour after its flip");
    }
    emit(r, P, Move::rotate(i, End::Low), trace, opts);
    if (!r.end(i, End::Low).is_infinite()) {
      throw Error(ErrorCode::PhasePreconditionViolated,
                  "left end of segment " + std::to_string(i) + " did not reach infinity");
    }
  }
  res.phase_ops[0] = trace.size();

  auto rotate_if = [&](int i, End e) {
    if (r.end(i, e).is_segment()) emit(r, P, Move::rotate(i, e), trace, opts);
  };
  for (int t = (n - 1) / 2 * 2; t >= 0; t -= 2) rotate_if(q[t], End::High);
  for (int t = 1; t < n; t += 2) snf(r, P, q[t], Direction::vertical(), trace, opts);
  for (int t = 1; t < n; t += 2) rotate_if(q[t], End::High);
  for (int t = n - 1 - (n % 2 == 0 ? 0 : 1); t >= 1; t -= 2) rotate_if(q[t], End::Low);
  for (int t = 0; t < n; t += 2) snf(r, P, q[t], Direction::vertical(), trace, opts);
  res.phase_ops[1] = trace.size() - res.phase_ops[0];

  if (r != convex_vertical(P)) internal_error("collinear sweep ended away from the vertical subdivision");
  res.final = r;
  return res;
}

ConvexSubdivision random_convex_walk(ConvexSubdivision r, const PlanarPointSet& P, std::size_t steps,
                                     std::mt19937_64& rng, std::int64_t max_component) {
  std::uniform_int_distribution<std::int64_t> dxs(0, max_component), dys(-max_component, max_component);
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < steps && attempt < 50 * steps + 50; ++attempt) {
    const auto flips = legal_flips(r);
    const auto rotates = legal_rotates(r, P);
    std::uniform_int_distribution<std::size_t> pick(0, flips.size() + rotates.size() - 1);
    const std::size_t c = pick(rng);
    try {
      if (c < flips.size()) {
        std::int64_t dx = dxs(rng), dy = dys(rng);
        if (dx == 0) dy = 1;
        if (dy == 0 && dx != 0) continue;
        apply_flip_dir(r, P, flips[c], Direction::normalized(dx, dy));
      } else {
        const Move& m = rotates[c - flips.size()];
        apply_rotate(r, P, m.index, m.end);
      }
      ++done;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidDirection && e.code() != ErrorCode::IllegalRotate) throw;
    }
  }
  return r;
}

}  // namespace rectiflip
