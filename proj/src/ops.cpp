#include "ops.hpp"

#include <algorithm>
#include <limits>

#include "errors.hpp"

namespace rectiflip {

Attachment ray_shoot(const Rectangulation& r, const PointSet& P, Point from, RayDir dir,
                     int exclude) {
  const bool vertical_ray = dir == RayDir::Up || dir == RayDir::Down;
  const bool forward = dir == RayDir::Up || dir == RayDir::Right;
  // A vertical ray can only be stopped by horizontal segments and vice versa.
  const Orientation blocker = vertical_ray ? Orientation::Horizontal : Orientation::Vertical;
  const std::int64_t ray_fixed = vertical_ray ? from.x : from.y;
  const std::int64_t start = vertical_ray ? from.y : from.x;

  int best = -1;
  std::int64_t best_coord = 0;
  const int n = static_cast<int>(r.size());
  for (int k = 0; k < n; ++k) {
    if (k == exclude || r.orient[k] != blocker) continue;
    const std::int64_t kf = fixed_coord(P, blocker, k);
    if (forward ? kf <= start : kf >= start) continue;
    if (best >= 0 && (forward ? kf >= best_coord : kf <= best_coord)) continue;
    const std::int64_t lo = attachment_coord(P, blocker, r.attach[k][0]);
    const std::int64_t hi = attachment_coord(P, blocker, r.attach[k][1]);
    if (lo < ray_fixed && ray_fixed < hi) {
      best = k;
      best_coord = kf;
    }
  }
  if (best >= 0) return Attachment::on_segment(best);
  switch (dir) {
    case RayDir::Left: return Attachment::boundary(Side::Left);
    case RayDir::Right: return Attachment::boundary(Side::Right);
    case RayDir::Down: return Attachment::boundary(Side::Bottom);
    case RayDir::Up: return Attachment::boundary(Side::Top);
  }
  return {};
}

std::vector<EndRef> attachments_on(const Rectangulation& r, const PointSet& P, int i) {
  std::vector<EndRef> out;
  const int n = static_cast<int>(r.size());
  for (int k = 0; k < n; ++k) {
    for (End e : {End::Low, End::High}) {
      Attachment a = r.end(k, e);
      if (a.is_segment() && a.segment() == i) {
        out.push_back({k, e, fixed_coord(P, r.orient[k], k)});
      }
    }
  }
  return out;
}

std::vector<int> legal_flips(const Rectangulation& r) {
  std::vector<char> carries(r.size(), 0);
  for (const auto& ends : r.attach) {
    for (const Attachment& a : ends) {
      if (a.is_segment()) carries[a.segment()] = 1;
    }
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!carries[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<Move> legal_rotates(const Rectangulation& r, const PointSet& P) {
  const int n = static_cast<int>(r.size());
  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();
  // Per carrying segment: the resting end nearest each of its two ends.
  struct Extreme {
    std::int64_t coord = kNone;
    int seg = -1;
    End end = End::Low;
  };
  std::vector<Extreme> low_side(n), high_side(n);
  for (int k = 0; k < n; ++k) {
    for (End e : {End::Low, End::High}) {
      Attachment a = r.end(k, e);
      if (!a.is_segment()) continue;
      const int i = a.segment();
      const std::int64_t c = fixed_coord(P, r.orient[k], k);
      const std::int64_t p = along_coord(P, r.orient[i], i);
      if (c < p) {
        if (low_side[i].seg < 0 || c < low_side[i].coord) low_side[i] = {c, k, e};
      } else {
        if (high_side[i].seg < 0 || c > high_side[i].coord) high_side[i] = {c, k, e};
      }
    }
  }
  std::vector<Move> out;
  for (int i = 0; i < n; ++i) {
    if (low_side[i].seg >= 0) out.push_back(Move::rotate(low_side[i].seg, low_side[i].end));
    if (high_side[i].seg >= 0) out.push_back(Move::rotate(high_side[i].seg, high_side[i].end));
  }
  return out;
}

std::vector<Move> legal_moves(const Rectangulation& r, const PointSet& P) {
  std::vector<Move> out;
  for (int p : legal_flips(r)) out.push_back(Move::flip(p));
  auto rot = legal_rotates(r, P);
  out.insert(out.end(), rot.begin(), rot.end());
  return out;
}

namespace {

Attachment shoot_end(const Rectangulation& r, const PointSet& P, Point from, Orientation o,
                     End e, int self) {
  RayDir dir;
  if (o == Orientation::Vertical) dir = e == End::Low ? RayDir::Down : RayDir::Up;
  else dir = e == End::Low ? RayDir::Left : RayDir::Right;
  return ray_shoot(r, P, from, dir, self);
}

}  // namespace

std::uint64_t apply_flip(Rectangulation& r, const PointSet& P, int p) {
  if (p < 0 || p >= static_cast<int>(r.size())) {
    throw Error(ErrorCode::IllegalFlip, "no point " + std::to_string(p));
  }
  auto resting = attachments_on(r, P, p);
  if (!resting.empty()) {
    throw Error(ErrorCode::IllegalFlip, "segment " + std::to_string(p) + " carries the " +
                                            (resting[0].end == End::Low ? "low" : "high") +
                                            " end of segment " + std::to_string(resting[0].seg));
  }
  const Orientation o = flipped(r.orient[p]);
  r.orient[p] = o;
  // Both faces next to the old segment merge; the new segment spans their union,
  // which is exactly what the first hits from p delimit.
  const Attachment lo = shoot_end(r, P, P[p], o, End::Low, p);
  const Attachment hi = shoot_end(r, P, P[p], o, End::High, p);
  r.end(p, End::Low) = lo;
  r.end(p, End::High) = hi;
  return 0;  // no endpoints ride on a flippable segment
}

std::uint64_t apply_rotate(Rectangulation& r, const PointSet& P, int j, End e) {
  const int n = static_cast<int>(r.size());
  if (j < 0 || j >= n) throw Error(ErrorCode::IllegalRotate, "no segment " + std::to_string(j));
  const Attachment t = r.end(j, e);
  if (!t.is_segment()) {
    throw Error(ErrorCode::IllegalRotate, "end of segment " + std::to_string(j) + " is on the boundary");
  }
  const int i = t.segment();
  const Orientation oi = r.orient[i];
  const std::int64_t c = fixed_coord(P, r.orient[j], j);
  const std::int64_t p = along_coord(P, oi, i);
  const End ea = c < p ? End::Low : End::High;
  const std::int64_t a = attachment_coord(P, oi, r.end(i, ea));
  const std::int64_t lo = std::min(a, c), hi = std::max(a, c);

  for (const EndRef& ref : attachments_on(r, P, i)) {
    if (ref.seg == j) continue;
    if (lo < ref.coord && ref.coord < hi) {
      throw Error(ErrorCode::IllegalRotate,
                  "segment " + std::to_string(ref.seg) + " rests between the pivot and the end of segment " +
                      std::to_string(i));
    }
  }

  // Shorten i to the pivot, then extend j past it.
  r.end(i, ea) = Attachment::on_segment(j);
  const Point pivot = r.orient[j] == Orientation::Vertical ? Point{P[j].x, P[i].y}
                                                           : Point{P[i].x, P[j].y};
  const Attachment ext = shoot_end(r, P, pivot, r.orient[j], e, j);
  r.end(j, e) = ext;

  // Weight: endpoints of other segments on the extension (strictly past the pivot).
  const std::int64_t d = attachment_coord(P, r.orient[j], ext);
  const std::int64_t at_pivot = fixed_coord(P, oi, i);
  const std::int64_t elo = std::min(d, at_pivot), ehi = std::max(d, at_pivot);
  std::uint64_t weight = 0;
  for (const EndRef& ref : attachments_on(r, P, j)) {
    if (ref.seg != i && elo < ref.coord && ref.coord < ehi) ++weight;
  }
  return weight;
}

std::uint64_t apply_move(Rectangulation& r, const PointSet& P, const Move& m) {
  if (m.kind == MoveKind::Flip) {
    if (m.dir) throw Error(ErrorCode::InvalidArgument, "directed flips apply to convex subdivisions only");
    return apply_flip(r, P, m.index);
  }
  return apply_rotate(r, P, m.index, m.end);
}

Rectangulation flip(const Rectangulation& r, const PointSet& P, int p) {
  Rectangulation out = r;
  apply_flip(out, P, p);
  return out;
}

Rectangulation rotate(const Rectangulation& r, const PointSet& P, int j, End e) {
  Rectangulation out = r;
  apply_rotate(out, P, j, e);
  return out;
}

Rectangulation apply(const Rectangulation& r, const PointSet& P, const Move& m) {
  Rectangulation out = r;
  apply_move(out, P, m);
  return out;
}

Move inverse_move(const Rectangulation& r, const PointSet& P, const Move& m) {
  if (m.kind == MoveKind::Flip) return Move::flip(m.index);
  // Rotate(j, e) shortened i at its end facing the pivot; that end of i now
  // rests on j, and rotating there extends i back over the pivot.
  const Attachment t = r.end(m.index, m.end);
  if (!t.is_segment()) throw Error(ErrorCode::IllegalRotate, "rotate end is on the boundary");
  const int i = t.segment();
  const std::int64_t c = fixed_coord(P, r.orient[m.index], m.index);
  const std::int64_t p = along_coord(P, r.orient[i], i);
  return Move::rotate(i, c < p ? End::Low : End::High);
}

std::vector<int> touched_segments(const Rectangulation& r, const Move& m) {
  if (m.kind == MoveKind::Flip) return {m.index};
  const Attachment t = r.end(m.index, m.end);
  if (t.is_segment()) return {m.index, t.segment()};
  return {m.index};
}

void shorten_and_flip(Rectangulation& r, const PointSet& P, int i, OpTrace& trace,
                      const StepHook* hook) {
  const std::int64_t p = along_coord(P, r.orient[i], i);
  for (;;) {
    auto resting = attachments_on(r, P, i);
    if (resting.empty()) break;
    auto [c1, c2] = std::minmax_element(resting.begin(), resting.end(),
                                        [](const EndRef& a, const EndRef& b) { return a.coord < b.coord; });
    // c1 is nearest the low end a; when p lies between a and c1 the high side is used.
    const EndRef& pick = c1->coord < p ? *c1 : *c2;
    TraceEntry entry{Move::rotate(pick.seg, pick.end), 0};
    entry.weight = apply_rotate(r, P, pick.seg, pick.end);
    trace.entries.push_back(entry);
    if (hook && *hook) (*hook)(r, entry);
  }
  TraceEntry entry{Move::flip(i), apply_flip(r, P, i)};
  trace.entries.push_back(entry);
  if (hook && *hook) (*hook)(r, entry);
}

Rectangulation replay(const Rectangulation& start, const PointSet& P, const OpTrace& trace,
                      bool check) {
  Rectangulation r = start;
  for (std::size_t k = 0; k < trace.entries.size(); ++k) {
    const Move& m = trace.entries[k].move;
    auto touched = touched_segments(r, m);
    apply_move(r, P, m);
    if (check) {
      auto rep = validate_local(r, P, touched);
      if (!rep.ok()) {
        throw Error(ErrorCode::InvalidState,
                    "state after operation " + std::to_string(k) + " is invalid: " + rep.summary());
      }
    }
  }
  return r;
}

}  // namespace rectiflip
