#include "rectangulation.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "errors.hpp"

namespace rectiflip {

std::int64_t boundary_coord(const Rect& rect, Side s) noexcept {
  switch (s) {
    case Side::Left: return rect.x0;
    case Side::Right: return rect.x1;
    case Side::Bottom: return rect.y0;
    case Side::Top: return rect.y1;
  }
  return 0;
}

std::int64_t attachment_coord(const PointSet& P, Orientation seg_orient, Attachment a) {
  if (a.is_boundary()) return boundary_coord(P.rect(), a.side());
  // The target is orthogonal, so its fixed coordinate is along our axis.
  return seg_orient == Orientation::Vertical ? P[a.segment()].y : P[a.segment()].x;
}

SegmentGeometry segment_geometry(const Rectangulation& r, const PointSet& P, int i) {
  SegmentGeometry g;
  g.orient = r.orient[i];
  g.fixed = fixed_coord(P, g.orient, i);
  g.lo = attachment_coord(P, g.orient, r.attach[i][0]);
  g.hi = attachment_coord(P, g.orient, r.attach[i][1]);
  return g;
}

RealizedGeometry realize(const Rectangulation& r, const PointSet& P) {
  RealizedGeometry out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = segment_geometry(r, P, static_cast<int>(i));
  return out;
}

const char* to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::SizeMismatch: return "SizeMismatch";
    case ViolationKind::TargetOutOfRange: return "TargetOutOfRange";
    case ViolationKind::SelfAttachment: return "SelfAttachment";
    case ViolationKind::ParallelTarget: return "ParallelTarget";
    case ViolationKind::WrongBoundarySide: return "WrongBoundarySide";
    case ViolationKind::PointNotInterior: return "PointNotInterior";
    case ViolationKind::EndpointOutsideTarget: return "EndpointOutsideTarget";
    case ViolationKind::Crossing: return "Crossing";
    case ViolationKind::FaceCount: return "FaceCount";
    case ViolationKind::SharedPoint: return "SharedPoint";
    case ViolationKind::CollinearOverlap: return "CollinearOverlap";
    case ViolationKind::DirectionOutOfRange: return "DirectionOutOfRange";
  }
  return "Unknown";
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    const auto& v = violations[k];
    if (k) os << "; ";
    os << to_string(v.kind) << "(" << v.first;
    if (v.second >= 0) os << "," << v.second;
    os << ")";
    if (!v.detail.empty()) os << ": " << v.detail;
  }
  return os.str();
}

namespace {

// Structural checks for one segment; returns false if geometry cannot be derived.
bool check_structure(const Rectangulation& r, const PointSet& P, int i,
                     std::vector<Violation>& out) {
  const int n = static_cast<int>(r.size());
  bool derivable = true;
  for (End e : {End::Low, End::High}) {
    Attachment a = r.end(i, e);
    if (a.is_boundary()) {
      if (a.side() != boundary_side(r.orient[i], e)) {
        out.push_back({ViolationKind::WrongBoundarySide, i, -1, "end on wrong side of R"});
        derivable = false;
      }
      continue;
    }
    int j = a.segment();
    if (j >= n) {
      out.push_back({ViolationKind::TargetOutOfRange, i, j, {}});
      derivable = false;
    } else if (j == i) {
      out.push_back({ViolationKind::SelfAttachment, i, j, {}});
      derivable = false;
    } else if (r.orient[j] == r.orient[i]) {
      out.push_back({ViolationKind::ParallelTarget, i, j, {}});
      derivable = false;
    }
  }
  if (!derivable) return false;
  SegmentGeometry g = segment_geometry(r, P, i);
  std::int64_t p = along_coord(P, g.orient, i);
  if (!(g.lo < p && p < g.hi)) {
    out.push_back({ViolationKind::PointNotInterior, i, -1, {}});
  }
  return true;
}

void check_ends_inside_target(const Rectangulation& r, const PointSet& P, int i,
                              std::vector<Violation>& out) {
  for (End e : {End::Low, End::High}) {
    Attachment a = r.end(i, e);
    if (!a.is_segment()) continue;
    int j = a.segment();
    SegmentGeometry gj = segment_geometry(r, P, j);
    std::int64_t at = fixed_coord(P, r.orient[i], i);
    if (!(gj.lo < at && at < gj.hi)) {
      out.push_back({ViolationKind::EndpointOutsideTarget, i, j, {}});
    }
  }
}

bool crosses(const SegmentGeometry& a, const SegmentGeometry& b) {
  if (a.orient == b.orient) return false;  // parallel segments have distinct fixed coords
  return b.lo < a.fixed && a.fixed < b.hi && a.lo < b.fixed && b.fixed < a.hi;
}

// Interior faces via Euler's formula on the planar graph induced by R's sides,
// the segments and all their endpoints. Incidence is found geometrically.
long euler_faces(const RealizedGeometry& geom, const Rect& rect) {
  struct Element {
    bool vertical;
    std::int64_t fixed, lo, hi;
  };
  std::vector<Element> elems;
  elems.push_back({false, rect.y0, rect.x0, rect.x1});
  elems.push_back({false, rect.y1, rect.x0, rect.x1});
  elems.push_back({true, rect.x0, rect.y0, rect.y1});
  elems.push_back({true, rect.x1, rect.y0, rect.y1});
  for (const auto& g : geom) elems.push_back({g.orient == Orientation::Vertical, g.fixed, g.lo, g.hi});

  std::vector<Point> verts;
  for (const auto& e : elems) {
    if (e.vertical) {
      verts.push_back({e.fixed, e.lo});
      verts.push_back({e.fixed, e.hi});
    } else {
      verts.push_back({e.lo, e.fixed});
      verts.push_back({e.hi, e.fixed});
    }
  }
  std::sort(verts.begin(), verts.end(),
            [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const long V = static_cast<long>(verts.size());

  std::unordered_map<std::int64_t, std::vector<int>> by_x, by_y;
  for (int v = 0; v < V; ++v) {
    by_x[verts[v].x].push_back(v);
    by_y[verts[v].y].push_back(v);
  }

  std::vector<int> parent(elems.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<int> owner(V, -1);

  long E = 0;
  for (int k = 0; k < static_cast<int>(elems.size()); ++k) {
    const auto& e = elems[k];
    const auto& bucket = e.vertical ? by_x[e.fixed] : by_y[e.fixed];
    long on = 0;
    for (int v : bucket) {
      std::int64_t t = e.vertical ? verts[v].y : verts[v].x;
      if (e.lo <= t && t <= e.hi) {
        ++on;
        if (owner[v] < 0) owner[v] = k;
        else parent[find(owner[v])] = find(k);
      }
    }
    E += on - 1;
  }
  long C = 0;
  for (int k = 0; k < static_cast<int>(elems.size()); ++k) C += find(k) == k;
  // F (with outer face) = E - V + 1 + C.
  return E - V + C;
}

}  // namespace

ValidationReport validate(const Rectangulation& r, const PointSet& P) {
  ValidationReport rep;
  const int n = static_cast<int>(P.size());
  if (r.orient.size() != P.size() || r.attach.size() != P.size()) {
    rep.violations.push_back({ViolationKind::SizeMismatch, -1, -1, "segment count differs from point count"});
    return rep;
  }
  bool derivable = true;
  for (int i = 0; i < n; ++i) derivable &= check_structure(r, P, i, rep.violations);
  if (!derivable) return rep;
  for (int i = 0; i < n; ++i) check_ends_inside_target(r, P, i, rep.violations);

  RealizedGeometry geom = realize(r, P);
  std::vector<int> verticals, horizontals;
  for (int i = 0; i < n; ++i) {
    (geom[i].orient == Orientation::Vertical ? verticals : horizontals).push_back(i);
  }
  for (int v : verticals) {
    for (int h : horizontals) {
      if (crosses(geom[v], geom[h])) {
        rep.violations.push_back({ViolationKind::Crossing, std::min(v, h), std::max(v, h), {}});
      }
    }
  }
  rep.faces = euler_faces(geom, P.rect());
  if (rep.faces != n + 1) {
    rep.violations.push_back({ViolationKind::FaceCount, static_cast<int>(rep.faces), n + 1,
                              "Euler face count differs from n+1"});
  }
  return rep;
}

ValidationReport validate_local(const Rectangulation& r, const PointSet& P,
                                std::span<const int> segments) {
  ValidationReport rep;
  const int n = static_cast<int>(P.size());
  if (r.orient.size() != P.size() || r.attach.size() != P.size()) {
    rep.violations.push_back({ViolationKind::SizeMismatch, -1, -1, {}});
    return rep;
  }
  bool derivable = true;
  for (int i : segments) derivable &= check_structure(r, P, i, rep.violations);
  if (!derivable) return rep;
  for (int i : segments) {
    check_ends_inside_target(r, P, i, rep.violations);
    SegmentGeometry gi = segment_geometry(r, P, i);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      const bool targets_i = (r.attach[k][0].is_segment() && r.attach[k][0].segment() == i) ||
                             (r.attach[k][1].is_segment() && r.attach[k][1].segment() == i);
      if (targets_i) {
        if (!check_structure(r, P, k, rep.violations)) continue;
        check_ends_inside_target(r, P, k, rep.violations);
      }
      if (r.orient[k] == gi.orient) continue;
      if (crosses(gi, segment_geometry(r, P, k))) {
        rep.violations.push_back({ViolationKind::Crossing, std::min(i, k), std::max(i, k), {}});
      }
    }
  }
  return rep;
}

namespace {

Rectangulation canonical(const PointSet& P, Orientation o) {
  Rectangulation r;
  r.orient.assign(P.size(), o);
  r.attach.assign(P.size(), {Attachment::boundary(boundary_side(o, End::Low)),
                             Attachment::boundary(boundary_side(o, End::High))});
  return r;
}

}  // namespace

Rectangulation canonical_vertical(const PointSet& P) { return canonical(P, Orientation::Vertical); }
Rectangulation canonical_horizontal(const PointSet& P) { return canonical(P, Orientation::Horizontal); }

std::size_t count_horizontal(const Rectangulation& r) noexcept {
  return static_cast<std::size_t>(
      std::count(r.orient.begin(), r.orient.end(), Orientation::Horizontal));
}

bool all_vertical(const Rectangulation& r) noexcept { return count_horizontal(r) == 0; }

CanonicalKey encode(const Rectangulation& r) {
  CanonicalKey key;
  key.reserve(r.size() * 9);
  for (std::size_t i = 0; i < r.size(); ++i) {
    key.push_back(static_cast<char>(r.orient[i]));
    for (const Attachment& a : r.attach[i]) {
      std::int32_t c = a.code();
      char buf[4];
      std::memcpy(buf, &c, 4);
      key.append(buf, 4);
    }
  }
  return key;
}

Rectangulation decode(const CanonicalKey& key) {
  if (key.size() % 9 != 0) throw Error(ErrorCode::InvalidArgument, "malformed rectangulation key");
  Rectangulation r;
  const std::size_t n = key.size() / 9;
  r.orient.resize(n);
  r.attach.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const char* rec = key.data() + 9 * i;
    r.orient[i] = static_cast<Orientation>(rec[0]);
    for (int e = 0; e < 2; ++e) {
      std::int32_t c;
      std::memcpy(&c, rec + 1 + 4 * e, 4);
      r.attach[i][e] = Attachment::from_code(c);
    }
  }
  return r;
}

}  // namespace rectiflip
