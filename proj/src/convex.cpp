#include "convex.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <optional>
#include <set>

#include "errors.hpp"

namespace rectiflip {

using i128 = __int128;

namespace {

int sgn(i128 v) { return (v > 0) - (v < 0); }
i128 cross(i128 ax, i128 ay, i128 bx, i128 by) { return ax * by - ay * bx; }

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

}  // namespace

PlanarPointSet PlanarPointSet::create(std::vector<Point> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (iabs(points[i].x) > kConvexCoordLimit || iabs(points[i].y) > kConvexCoordLimit) {
      throw Error(ErrorCode::InvalidArgument, "point " + std::to_string(i) + " exceeds the coordinate limit 2^20");
    }
  }
  std::vector<int> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return points[a].x != points[b].x ? points[a].x < points[b].x : points[a].y < points[b].y;
  });
  for (std::size_t t = 1; t < idx.size(); ++t) {
    if (points[idx[t]] == points[idx[t - 1]]) {
      throw Error(ErrorCode::InvalidArgument,
                  "points " + std::to_string(idx[t - 1]) + " and " + std::to_string(idx[t]) + " coincide");
    }
  }
  PlanarPointSet P;
  P.points_ = std::move(points);
  return P;
}

bool PlanarPointSet::distinct_x() const {
  std::vector<std::int64_t> xs;
  for (const Point& p : points_) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}

ConvexSubdivision convex_vertical(const PlanarPointSet& P) {
  if (!P.distinct_x()) throw Error(ErrorCode::InvalidArgument, "vertical lines need distinct x-coordinates");
  ConvexSubdivision r;
  r.dir.assign(P.size(), Direction::vertical());
  r.attach.assign(P.size(), {ConvexEnd::infinite(), ConvexEnd::infinite()});
  return r;
}

bool all_vertical(const ConvexSubdivision& r) noexcept { return count_nonvertical(r) == 0; }

std::size_t count_nonvertical(const ConvexSubdivision& r) noexcept {
  return static_cast<std::size_t>(
      std::count_if(r.dir.begin(), r.dir.end(), [](const Direction& d) { return !d.is_vertical(); }));
}

CanonicalKey encode(const ConvexSubdivision& r) {
  CanonicalKey key;
  key.reserve(r.size() * 24);
  auto put = [&](const void* p, std::size_t n) { key.append(static_cast<const char*>(p), n); };
  for (std::size_t i = 0; i < r.size(); ++i) {
    put(&r.dir[i].dx, 8);
    put(&r.dir[i].dy, 8);
    for (const ConvexEnd& e : r.attach[i]) {
      std::int32_t c = e.code();
      put(&c, 4);
    }
  }
  return key;
}

// ---------------------------------------------------------------------------
// Exact kernel. A finite point is (X/W, Y/W) with W > 0; a position along a
// segment is its x (or y for vertical segments), possibly infinite.

namespace {

struct HPoint {
  i128 X, Y, W;
};

bool same_point(const HPoint& a, const HPoint& b) { return a.X * b.W == b.X * a.W && a.Y * b.W == b.Y * a.W; }

struct Pos {
  i128 num = 0;
  i128 den = 1;
  int inf = 0;  // -1 or +1 for the two infinite ends
};

int cmp(const Pos& a, const Pos& b) {
  if (a.inf || b.inf) return (a.inf > b.inf) - (a.inf < b.inf);
  return sgn(a.num * b.den - b.num * a.den);
}

class Kernel {
 public:
  Kernel(const ConvexSubdivision& r, const PlanarPointSet& P) : r_(r), P_(P) {}

  const Direction& d(int i) const { return r_.dir[i]; }

  bool parallel(int i, int j) const { return cross(d(i).dx, d(i).dy, d(j).dx, d(j).dy) == 0; }

  bool collinear(int i, int j) const {
    return parallel(i, j) && cross(P_[j].x - P_[i].x, P_[j].y - P_[i].y, d(i).dx, d(i).dy) == 0;
  }

  HPoint meet(int i, int j) const {
    const Direction &a = d(i), &b = d(j);
    i128 W = cross(a.dx, a.dy, b.dx, b.dy);
    i128 num = cross(P_[j].x - P_[i].x, P_[j].y - P_[i].y, b.dx, b.dy);
    HPoint h{i128(P_[i].x) * W + num * a.dx, i128(P_[i].y) * W + num * a.dy, W};
    if (W < 0) h = {-h.X, -h.Y, -h.W};
    return h;
  }

  Pos along(int i, const HPoint& h) const {
    return d(i).is_vertical() ? Pos{h.Y, h.W, 0} : Pos{h.X, h.W, 0};
  }

  Pos point_pos(int i) const { return d(i).is_vertical() ? Pos{P_[i].y, 1, 0} : Pos{P_[i].x, 1, 0}; }

  Pos end_pos(int i, End e) const {
    ConvexEnd a = r_.end(i, e);
    if (a.is_infinite()) return Pos{0, 1, e == End::Low ? -1 : 1};
    return along(i, meet(i, a.segment()));
  }

  HPoint point(int i) const { return {P_[i].x, P_[i].y, 1}; }

  // Side of q relative to the directed line through h with direction (vx, vy).
  int side(i128 vx, i128 vy, const HPoint& h, const Point& q) const {
    return sgn(cross(vx, vy, i128(q.x) * h.W - h.X, i128(q.y) * h.W - h.Y));
  }

  const ConvexSubdivision& r() const { return r_; }
  const PlanarPointSet& P() const { return P_; }

 private:
  const ConvexSubdivision& r_;
  const PlanarPointSet& P_;
};

struct Shot {
  ConvexEnd end = ConvexEnd::infinite();
  bool degenerate = false;
  HPoint hit{0, 0, 1};
  Pos pos;
};

// First segment met by the ray along line i from position `from`, towards
// +dir (dir = +1) or -dir (dir = -1). Contact with an endpoint, a vertex, a
// point of P or a collinear segment marks the shot degenerate.
Shot shoot(const Kernel& K, int i, const Pos& from, int dir) {
  const int n = static_cast<int>(K.r().size());
  Shot best;
  best.pos = Pos{0, 1, dir};
  bool have = false;
  std::optional<Pos> block;
  auto beyond = [&](const Pos& a) { return dir > 0 ? cmp(a, from) > 0 : cmp(a, from) < 0; };
  auto nearer = [&](const Pos& a, const Pos& b) { return dir > 0 ? cmp(a, b) < 0 : cmp(a, b) > 0; };
  for (int k = 0; k < n; ++k) {
    if (k == i) continue;
    if (K.parallel(i, k)) {
      if (!K.collinear(i, k)) continue;
      const Pos lo = K.end_pos(k, End::Low), hi = K.end_pos(k, End::High);
      const Pos& near = dir > 0 ? lo : hi;
      if (beyond(dir > 0 ? hi : lo) && (!block || nearer(near, *block))) block = near;
      continue;
    }
    const HPoint h = K.meet(i, k);
    const Pos a = K.along(i, h);
    if (!beyond(a)) continue;
    const Pos b = K.along(k, h);
    const int c_lo = cmp(b, K.end_pos(k, End::Low)), c_hi = cmp(b, K.end_pos(k, End::High));
    if (c_lo < 0 || c_hi > 0) continue;
    const bool touches_end = c_lo == 0 || c_hi == 0;
    if (touches_end || cmp(b, K.point_pos(k)) == 0) {
      if (!block || nearer(a, *block)) block = a;
      continue;
    }
    if (have && cmp(a, best.pos) == 0) {
      if (!block || nearer(a, *block)) block = a;
      continue;
    }
    if (!have || nearer(a, best.pos)) {
      have = true;
      best.end = ConvexEnd::on_segment(k);
      best.hit = h;
      best.pos = a;
    }
  }
  if (block && (!have || !nearer(best.pos, *block))) best.degenerate = true;
  if (have && !best.degenerate) {
    const int k = best.end.segment();
    for (int m = 0; m < n; ++m) {
      if (m == i || m == k) continue;
      for (End e : {End::Low, End::High}) {
        if (K.r().end(m, e) == ConvexEnd::on_segment(k) && same_point(K.meet(m, k), best.hit)) best.degenerate = true;
      }
    }
  }
  return best;
}

enum class Where { Outside, LowEnd, HighEnd, Interior };

Where classify(const Kernel& K, int i, const Pos& a) {
  const int lo = cmp(a, K.end_pos(i, End::Low)), hi = cmp(a, K.end_pos(i, End::High));
  if (lo < 0 || hi > 0) return Where::Outside;
  if (lo == 0) return Where::LowEnd;
  if (hi == 0) return Where::HighEnd;
  return Where::Interior;
}

bool check_structure(const Kernel& K, int i, std::vector<Violation>& out) {
  const ConvexSubdivision& r = K.r();
  const int n = static_cast<int>(r.size());
  const Direction& d = r.dir[i];
  if (iabs(d.dx) > kConvexDirLimit || iabs(d.dy) > kConvexDirLimit || !(d == Direction::normalized(d.dx, d.dy))) {
    out.push_back({ViolationKind::DirectionOutOfRange, i, -1, {}});
    return false;
  }
  bool ok = true;
  for (End e : {End::Low, End::High}) {
    ConvexEnd a = r.end(i, e);
    if (a.is_infinite()) continue;
    const int j = a.segment();
    if (j >= n) {
      out.push_back({ViolationKind::TargetOutOfRange, i, j, {}});
      ok = false;
    } else if (j == i) {
      out.push_back({ViolationKind::SelfAttachment, i, j, {}});
      ok = false;
    } else if (K.parallel(i, j)) {
      out.push_back({ViolationKind::ParallelTarget, i, j, {}});
      ok = false;
    }
  }
  if (!ok) return false;
  const Pos p = K.point_pos(i);
  if (!(cmp(K.end_pos(i, End::Low), p) < 0 && cmp(p, K.end_pos(i, End::High)) < 0)) {
    out.push_back({ViolationKind::PointNotInterior, i, -1, {}});
  }
  return true;
}

void check_pair(const Kernel& K, int i, int k, std::vector<Violation>& out) {
  const ConvexSubdivision& r = K.r();
  const int a = std::min(i, k), b = std::max(i, k);
  if (K.parallel(i, k)) {
    if (!K.collinear(i, k)) return;
    const bool apart = cmp(K.end_pos(i, End::High), K.end_pos(k, End::Low)) < 0 ||
                       cmp(K.end_pos(k, End::High), K.end_pos(i, End::Low)) < 0;
    if (!apart) out.push_back({ViolationKind::CollinearOverlap, a, b, {}});
    return;
  }
  const HPoint h = K.meet(i, k);
  const Where wi = classify(K, i, K.along(i, h)), wk = classify(K, k, K.along(k, h));
  auto attached = [&](int s, Where w, int t) {
    End e = w == Where::LowEnd ? End::Low : End::High;
    return r.end(s, e) == ConvexEnd::on_segment(t);
  };
  for (int s : {i, k}) {
    const int t = s == i ? k : i;
    const Where ws = s == i ? wi : wk, wt = s == i ? wk : wi;
    for (End e : {End::Low, End::High}) {
      if (r.end(s, e) == ConvexEnd::on_segment(t) && wt != Where::Interior) {
        out.push_back({ViolationKind::EndpointOutsideTarget, s, t, {}});
      }
    }
    (void)ws;
  }
  if (wi == Where::Outside || wk == Where::Outside) return;
  if (wi == Where::Interior && wk == Where::Interior) {
    out.push_back({ViolationKind::Crossing, a, b, {}});
  } else if (wi != Where::Interior && wk != Where::Interior) {
    out.push_back({ViolationKind::SharedPoint, a, b, "endpoints coincide"});
  } else if (wi != Where::Interior ? !attached(i, wi, k) : !attached(k, wk, i)) {
    out.push_back({ViolationKind::SharedPoint, a, b, "endpoint on a segment it is not attached to"});
  }
  // The contact point may not be one of the two input points.
  if (same_point(h, K.point(i)) || same_point(h, K.point(k))) {
    out.push_back({ViolationKind::SharedPoint, a, b, "segment touches a foreign point"});
  }
}

}  // namespace

ValidationReport validate_convex(const ConvexSubdivision& r, const PlanarPointSet& P) {
  ValidationReport rep;
  const int n = static_cast<int>(P.size());
  if (r.dir.size() != P.size() || r.attach.size() != P.size()) {
    rep.violations.push_back({ViolationKind::SizeMismatch, -1, -1, {}});
    return rep;
  }
  Kernel K(r, P);
  bool ok = true;
  for (int i = 0; i < n; ++i) ok &= check_structure(K, i, rep.violations);
  if (!ok) return rep;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) check_pair(K, i, k, rep.violations);
  }
  return rep;
}

ValidationReport validate_convex_local(const ConvexSubdivision& r, const PlanarPointSet& P,
                                       std::span<const int> segments) {
  ValidationReport rep;
  const int n = static_cast<int>(P.size());
  if (r.dir.size() != P.size() || r.attach.size() != P.size()) {
    rep.violations.push_back({ViolationKind::SizeMismatch, -1, -1, {}});
    return rep;
  }
  Kernel K(r, P);
  std::vector<char> mark(n, 0);
  for (int s : segments) mark[s] = 1;
  bool ok = true;
  for (int i = 0; i < n; ++i) {
    bool involved = mark[i];
    for (const ConvexEnd& e : r.attach[i]) involved |= e.is_segment() && e.segment() < n && mark[e.segment()];
    if (involved) ok &= check_structure(K, i, rep.violations);
  }
  if (!ok) return rep;
  for (int s : segments) {
    for (int k = 0; k < n; ++k) {
      if (k != s && !(mark[k] && k < s)) check_pair(K, s, k, rep.violations);
    }
  }
  return rep;
}

std::vector<ConvexDrawSegment> draw_geometry(const ConvexSubdivision& r, const PlanarPointSet& P) {
  Kernel K(r, P);
  std::vector<ConvexDrawSegment> out;
  for (int i = 0; i < static_cast<int>(r.size()); ++i) {
    ConvexDrawSegment s{};
    double xy[2][2];
    bool inf[2];
    for (End e : {End::Low, End::High}) {
      const int k = index_of(e);
      ConvexEnd a = r.end(i, e);
      inf[k] = a.is_infinite();
      if (inf[k]) {
        xy[k][0] = static_cast<double>(P[i].x);
        xy[k][1] = static_cast<double>(P[i].y);
      } else {
        HPoint h = K.meet(i, a.segment());
        xy[k][0] = static_cast<double>(h.X) / static_cast<double>(h.W);
        xy[k][1] = static_cast<double>(h.Y) / static_cast<double>(h.W);
      }
    }
    s = {xy[0][0], xy[0][1], xy[1][0], xy[1][1], inf[0], inf[1]};
    out.push_back(s);
  }
  return out;
}

std::vector<ConvexEndRef> attachments_on(const ConvexSubdivision& r, const PlanarPointSet&, int i) {
  std::vector<ConvexEndRef> out;
  for (int k = 0; k < static_cast<int>(r.size()); ++k) {
    for (End e : {End::Low, End::High}) {
      if (r.end(k, e) == ConvexEnd::on_segment(i)) out.push_back({k, e});
    }
  }
  return out;
}

std::vector<int> legal_flips(const ConvexSubdivision& r) {
  std::vector<char> carries(r.size(), 0);
  for (const auto& ends : r.attach) {
    for (const ConvexEnd& a : ends) {
      if (a.is_segment()) carries[a.segment()] = 1;
    }
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!carries[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<Move> legal_rotates(const ConvexSubdivision& r, const PlanarPointSet& P) {
  Kernel K(r, P);
  const int n = static_cast<int>(r.size());
  struct Extreme {
    Pos pos;
    int seg = -1;
    End end = End::Low;
  };
  std::vector<Extreme> low(n), high(n);
  for (int k = 0; k < n; ++k) {
    for (End e : {End::Low, End::High}) {
      ConvexEnd a = r.end(k, e);
      if (!a.is_segment()) continue;
      const int i = a.segment();
      const Pos c = K.along(i, K.meet(k, i));
      if (cmp(c, K.point_pos(i)) < 0) {
        if (low[i].seg < 0 || cmp(c, low[i].pos) < 0) low[i] = {c, k, e};
      } else if (high[i].seg < 0 || cmp(c, high[i].pos) > 0) {
        high[i] = {c, k, e};
      }
    }
  }
  std::vector<Move> out;
  for (int i = 0; i < n; ++i) {
    if (low[i].seg >= 0) out.push_back(Move::rotate(low[i].seg, low[i].end));
    if (high[i].seg >= 0) out.push_back(Move::rotate(high[i].seg, high[i].end));
  }
  return out;
}

std::uint64_t apply_flip_dir(ConvexSubdivision& r, const PlanarPointSet& P, int p, Direction sigma) {
  const int n = static_cast<int>(r.size());
  if (p < 0 || p >= n) throw Error(ErrorCode::IllegalFlip, "no point " + std::to_string(p));
  sigma = Direction::normalized(sigma.dx, sigma.dy);
  if (iabs(sigma.dx) > kConvexDirLimit || iabs(sigma.dy) > kConvexDirLimit) {
    throw Error(ErrorCode::InvalidDirection, "direction components exceed 2^20");
  }
  for (const auto& ends : r.attach) {
    for (const ConvexEnd& a : ends) {
      if (a == ConvexEnd::on_segment(p)) {
        throw Error(ErrorCode::IllegalFlip, "segment " + std::to_string(p) + " carries an endpoint");
      }
    }
  }
  const Direction old_dir = r.dir[p];
  const auto old_ends = r.attach[p];
  r.dir[p] = sigma;
  r.attach[p] = {ConvexEnd::infinite(), ConvexEnd::infinite()};
  Kernel K(r, P);
  const Shot lo = shoot(K, p, K.point_pos(p), -1);
  const Shot hi = shoot(K, p, K.point_pos(p), +1);
  auto restore = [&](const std::string& why) {
    r.dir[p] = old_dir;
    r.attach[p] = old_ends;
    throw Error(ErrorCode::InvalidDirection, "flip of " + std::to_string(p) + " to [" + std::to_string(sigma.dx) + "," +
                                                 std::to_string(sigma.dy) + "]: " + why);
  };
  if (lo.degenerate || hi.degenerate) restore("the new segment would meet a vertex, an endpoint or a point");
  r.attach[p] = {lo.end, hi.end};
  const int seg = p;
  auto rep = validate_convex_local(r, P, std::span<const int>(&seg, 1));
  if (!rep.ok()) restore(rep.summary());
  return 0;
}

namespace {

// Vertices on the boundary of the face swept by a rotate, strictly between
// the vanishing end a of the shortened segment and the new end d.
class SweepCounter {
 public:
  explicit SweepCounter(const Kernel& K) : K_(K), on_(K.r().size()) {
    const auto& r = K.r();
    for (int k = 0; k < static_cast<int>(r.size()); ++k) {
      for (End e : {End::Low, End::High}) {
        if (r.end(k, e).is_segment()) on_[r.end(k, e).segment()].push_back({k, e});
      }
    }
  }

  // Walks from point h on segment s, travelling along s in direction sdir,
  // keeping the face on `side`; stops at (target, tpos) or at infinity.
  std::uint64_t walk(int s, HPoint h, int sdir, int side, int target, const Pos& tpos) const {
    const auto& r = K_.r();
    std::uint64_t count = 0;
    Pos pos = K_.along(s, h);
    const std::size_t guard = 8 * r.size() + 8;
    for (std::size_t step = 0; step < guard; ++step) {
      const i128 tx = i128(sdir) * K_.d(s).dx, ty = i128(sdir) * K_.d(s).dy;
      auto beyond = [&](const Pos& a) { return sdir > 0 ? cmp(a, pos) > 0 : cmp(a, pos) < 0; };
      auto nearer = [&](const Pos& a, const Pos& b) { return sdir > 0 ? cmp(a, b) < 0 : cmp(a, b) > 0; };
      const End far = sdir > 0 ? End::High : End::Low;
      Pos best = K_.end_pos(s, far);
      int via = -1;
      End via_end = End::Low;
      HPoint via_h{};
      for (const ConvexEndRef& ref : on_[s]) {
        const HPoint mh = K_.meet(ref.seg, s);
        const Pos mp = K_.along(s, mh);
        if (beyond(mp) && nearer(mp, best)) {
          best = mp;
          via = ref.seg;
          via_end = ref.end;
          via_h = mh;
        }
      }
      if (s == target && beyond(tpos) && !nearer(best, tpos)) return count;
      if (via < 0) {
        ConvexEnd e = r.end(s, far);
        if (e.is_infinite()) return count;
        const int l = e.segment();
        ++count;
        h = K_.meet(s, l);
        const int ldir = sgn(cross(tx, ty, K_.d(l).dx, K_.d(l).dy)) == side ? 1 : -1;
        s = l;
        sdir = ldir;
        pos = K_.along(s, h);
        continue;
      }
      ++count;
      if (K_.side(tx, ty, via_h, K_.P()[via]) == side) {
        s = via;
        sdir = via_end == End::Low ? 1 : -1;
        pos = K_.along(s, via_h);
      } else {
        pos = best;
      }
    }
    internal_error("face walk did not terminate");
  }

 private:
  const Kernel& K_;
  std::vector<std::vector<ConvexEndRef>> on_;
};

}  // namespace

std::uint64_t apply_rotate(ConvexSubdivision& r, const PlanarPointSet& P, int j, End e) {
  const int n = static_cast<int>(r.size());
  if (j < 0 || j >= n) throw Error(ErrorCode::IllegalRotate, "no segment " + std::to_string(j));
  const ConvexEnd t = r.end(j, e);
  if (!t.is_segment()) throw Error(ErrorCode::IllegalRotate, "end of segment " + std::to_string(j) + " is at infinity");
  const int i = t.segment();
  std::uint64_t weight = 0;
  ConvexEnd ext;
  {
    const Kernel K(r, P);
    const HPoint c = K.meet(j, i);
    const Pos pc = K.along(i, c);
    const End ea = cmp(pc, K.point_pos(i)) < 0 ? End::Low : End::High;
    const Pos pa = K.end_pos(i, ea);
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      for (End ke : {End::Low, End::High}) {
        if (r.end(k, ke) != ConvexEnd::on_segment(i)) continue;
        const Pos q = K.along(i, K.meet(k, i));
        const bool between = ea == End::Low ? (cmp(pa, q) < 0 && cmp(q, pc) < 0) : (cmp(pc, q) < 0 && cmp(q, pa) < 0);
        if (between) {
          throw Error(ErrorCode::IllegalRotate, "segment " + std::to_string(k) +
                                                    " rests between the pivot and the end of segment " +
                                                    std::to_string(i));
        }
      }
    }
    const int edir = e == End::High ? 1 : -1;
    // The shortened part of i lies on j's far side, so it never blocks j's ray.
    const Shot shot = shoot(K, j, K.along(j, c), edir);
    if (shot.degenerate) {
      throw Error(ErrorCode::IllegalRotate, "extension of segment " + std::to_string(j) + " would meet a vertex");
    }
    ext = shot.end;

    const SweepCounter counter(K);
    const i128 ux = i128(ea == End::High ? 1 : -1) * K.d(i).dx, uy = i128(ea == End::High ? 1 : -1) * K.d(i).dy;
    const i128 vx = i128(edir) * K.d(j).dx, vy = i128(edir) * K.d(j).dy;
    const ConvexEnd a = r.end(i, ea);
    if (a.is_segment()) {
      const int side = -K.side(ux, uy, c, P[j]);
      const int la = a.segment();
      const int ldir = sgn(cross(ux, uy, K.d(la).dx, K.d(la).dy)) == side ? 1 : -1;
      const int target = ext.is_segment() ? ext.segment() : -1;
      const Pos tpos = ext.is_segment() ? K.along(target, shot.hit) : Pos{};
      weight = counter.walk(la, K.meet(i, la), ldir, side, target, tpos);
    } else if (ext.is_segment()) {
      const int side = sgn(cross(vx, vy, ux, uy));
      const int kd = ext.segment();
      const int kdir = sgn(cross(vx, vy, K.d(kd).dx, K.d(kd).dy)) == side ? 1 : -1;
      weight = counter.walk(kd, shot.hit, kdir, side, -1, Pos{});
    }
    r.end(i, ea) = ConvexEnd::on_segment(j);
  }
  r.end(j, e) = ext;
  return weight;
}

std::uint64_t apply_move(ConvexSubdivision& r, const PlanarPointSet& P, const Move& m) {
  if (m.kind == MoveKind::Flip) {
    if (!m.dir) throw Error(ErrorCode::InvalidArgument, "a flip in a convex subdivision needs a direction");
    return apply_flip_dir(r, P, m.index, *m.dir);
  }
  return apply_rotate(r, P, m.index, m.end);
}

Move inverse_move(const ConvexSubdivision& r, const PlanarPointSet& P, const Move& m) {
  if (m.kind == MoveKind::Flip) return Move::flip(m.index, r.dir[m.index]);
  const ConvexEnd t = r.end(m.index, m.end);
  if (!t.is_segment()) throw Error(ErrorCode::IllegalRotate, "rotate end is at infinity");
  const int i = t.segment();
  const Kernel K(r, P);
  const Pos pc = K.along(i, K.meet(m.index, i));
  return Move::rotate(i, cmp(pc, K.point_pos(i)) < 0 ? End::Low : End::High);
}

std::vector<int> touched_segments(const ConvexSubdivision& r, const Move& m) {
  if (m.kind == MoveKind::Flip) return {m.index};
  const ConvexEnd t = r.end(m.index, m.end);
  if (t.is_segment()) return {m.index, t.segment()};
  return {m.index};
}

Graph ExtensionVisibility::support(std::span<const int> vertices) const {
  std::map<int, int> local;
  for (int v : vertices) local.emplace(v, static_cast<int>(local.size()));
  Graph g(local.size());
  for (auto [a, b] : edges) {
    auto ia = local.find(a), ib = local.find(b);
    if (ia != local.end() && ib != local.end()) g.add_edge(ia->second, ib->second);
  }
  return g;
}

ExtensionVisibility extension_visibility(const ConvexSubdivision& r, const PlanarPointSet& P) {
  const Kernel K(r, P);
  std::set<std::pair<int, int>> edges;
  for (int s1 = 0; s1 < static_cast<int>(r.size()); ++s1) {
    for (End e : {End::Low, End::High}) {
      const ConvexEnd a = r.end(s1, e);
      if (!a.is_segment()) continue;
      const int s2 = a.segment();
      edges.insert({s1, s2});
      const Shot shot = shoot(K, s1, K.along(s1, K.meet(s1, s2)), e == End::High ? 1 : -1);
      if (shot.end.is_segment()) edges.insert({s2, shot.end.segment()});
    }
  }
  return {std::vector<std::pair<int, int>>(edges.begin(), edges.end())};
}

Graph vertical_visibility(const ConvexSubdivision& r, const PlanarPointSet& P, std::span<const int> members) {
  const Kernel K(r, P);
  const int n = static_cast<int>(r.size());
  std::map<int, int> local;
  for (int v : members) local.emplace(v, static_cast<int>(local.size()));
  Graph g(local.size());

  auto end_x = [&](int i, End e) -> std::optional<mpq_class> {
    ConvexEnd a = r.end(i, e);
    if (a.is_infinite()) return std::nullopt;
    HPoint h = K.meet(i, a.segment());
    auto big = [](i128 v) {
      mpz_class z = static_cast<long>(v >> 64);
      z <<= 64;
      z += mpz_class(static_cast<unsigned long>(static_cast<unsigned __int128>(v) & ~0UL));
      return z;
    };
    mpq_class q(big(h.X), big(h.W));
    q.canonicalize();
    return q;
  };

  std::vector<mpq_class> xs;
  struct Span {
    std::optional<mpq_class> lo, hi;
  };
  std::vector<Span> spans(n);
  for (int i = 0; i < n; ++i) {
    xs.emplace_back(P[i].x);
    if (K.d(i).is_vertical()) continue;
    spans[i] = {end_x(i, End::Low), end_x(i, End::High)};
    if (spans[i].lo) xs.push_back(*spans[i].lo);
    if (spans[i].hi) xs.push_back(*spans[i].hi);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<mpq_class> samples;
  samples.push_back(xs.front() - 1);
  for (std::size_t t = 0; t + 1 < xs.size(); ++t) samples.push_back((xs[t] + xs[t + 1]) / 2);
  samples.push_back(xs.back() + 1);

  for (const mpq_class& x : samples) {
    std::vector<std::pair<mpq_class, int>> column;
    for (int i = 0; i < n; ++i) {
      if (K.d(i).is_vertical()) continue;
      if (spans[i].lo && !(*spans[i].lo < x)) continue;
      if (spans[i].hi && !(x < *spans[i].hi)) continue;
      mpq_class y = mpq_class(P[i].y) + (x - P[i].x) * mpq_class(K.d(i).dy, K.d(i).dx);
      column.emplace_back(y, i);
    }
    std::sort(column.begin(), column.end());
    for (std::size_t t = 0; t + 1 < column.size(); ++t) {
      auto a = local.find(column[t].second), b = local.find(column[t + 1].second);
      if (a != local.end() && b != local.end()) g.add_edge(a->second, b->second);
    }
  }
  return g;
}

void shorten_and_flip(ConvexSubdivision& r, const PlanarPointSet& P, int i, Direction sigma, OpTrace& trace,
                      const ConvexStepHook* hook) {
  sigma = Direction::normalized(sigma.dx, sigma.dy);
  bool rotated = false;
  for (;;) {
    const Kernel K(r, P);
    const auto resting = attachments_on(r, P, i);
    if (resting.empty()) break;
    std::vector<Pos> pos;
    for (const ConvexEndRef& ref : resting) pos.push_back(K.along(i, K.meet(ref.seg, i)));
    std::size_t c1 = 0, c2 = 0;
    for (std::size_t t = 1; t < pos.size(); ++t) {
      if (cmp(pos[t], pos[c1]) < 0) c1 = t;
      if (cmp(pos[t], pos[c2]) > 0) c2 = t;
    }
    const ConvexEndRef& pick = cmp(pos[c1], K.point_pos(i)) < 0 ? resting[c1] : resting[c2];
    TraceEntry entry{Move::rotate(pick.seg, pick.end), 0};
    entry.weight = apply_rotate(r, P, pick.seg, pick.end);
    trace.entries.push_back(entry);
    rotated = true;
    if (hook && *hook) (*hook)(r, entry);
  }
  if (!rotated && r.dir[i] == sigma) return;
  TraceEntry entry{Move::flip(i, sigma), apply_flip_dir(r, P, i, sigma)};
  trace.entries.push_back(entry);
  if (hook && *hook) (*hook)(r, entry);
}

ConvexSubdivision replay(const ConvexSubdivision& start, const PlanarPointSet& P, const OpTrace& trace, bool check) {
  ConvexSubdivision r = start;
  for (std::size_t k = 0; k < trace.entries.size(); ++k) {
    const Move& m = trace.entries[k].move;
    const auto touched = touched_segments(r, m);
    apply_move(r, P, m);
    if (check) {
      auto rep = validate_convex_local(r, P, touched);
      if (!rep.ok()) {
        throw Error(ErrorCode::InvalidState,
                    "state after operation " + std::to_string(k) + " is invalid: " + rep.summary());
      }
    }
  }
  return r;
}

}  // namespace rectiflip
