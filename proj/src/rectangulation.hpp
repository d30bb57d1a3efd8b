#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "point_set.hpp"

namespace rectiflip {

enum class Orientation : std::uint8_t { Horizontal = 0, Vertical = 1 };
enum class Side : std::uint8_t { Left = 0, Right = 1, Bottom = 2, Top = 3 };
/// Segment end: Low is left/bottom along the segment's own axis, High is right/top.
enum class End : std::uint8_t { Low = 0, High = 1 };

constexpr Orientation flipped(Orientation o) noexcept {
  return o == Orientation::Vertical ? Orientation::Horizontal : Orientation::Vertical;
}
constexpr End opposite(End e) noexcept { return e == End::Low ? End::High : End::Low; }
constexpr int index_of(End e) noexcept { return static_cast<int>(e); }

/// Boundary side a segment of orientation `o` reaches at end `e`.
constexpr Side boundary_side(Orientation o, End e) noexcept {
  if (o == Orientation::Vertical) return e == End::Low ? Side::Bottom : Side::Top;
  return e == End::Low ? Side::Left : Side::Right;
}

/// Where a segment end sits: on one of R's four sides, or on another segment.
/// The sides behave as pseudo-segments so both cases share a coordinate lookup.
class Attachment {
 public:
  constexpr Attachment() = default;
  static constexpr Attachment boundary(Side s) noexcept {
    return Attachment(-1 - static_cast<std::int32_t>(s));
  }
  static constexpr Attachment on_segment(int j) noexcept { return Attachment(j); }
  static constexpr Attachment from_code(std::int32_t code) noexcept { return Attachment(code); }

  constexpr bool is_boundary() const noexcept { return code_ < 0; }
  constexpr bool is_segment() const noexcept { return code_ >= 0; }
  constexpr Side side() const noexcept { return static_cast<Side>(-1 - code_); }
  constexpr int segment() const noexcept { return code_; }
  constexpr std::int32_t code() const noexcept { return code_; }

  friend constexpr bool operator==(Attachment, Attachment) = default;

 private:
  constexpr explicit Attachment(std::int32_t code) : code_(code) {}
  std::int32_t code_ = -1;
};

/// Combinatorial rectangulation: one segment per point, geometry derived on demand.
struct Rectangulation {
  std::vector<Orientation> orient;
  std::vector<std::array<Attachment, 2>> attach;

  std::size_t size() const noexcept { return orient.size(); }
  Attachment end(int i, End e) const { return attach[i][index_of(e)]; }
  Attachment& end(int i, End e) { return attach[i][index_of(e)]; }

  friend bool operator==(const Rectangulation&, const Rectangulation&) = default;
};

struct SegmentGeometry {
  Orientation orient = Orientation::Vertical;
  std::int64_t fixed = 0;  // x for vertical, y for horizontal
  std::int64_t lo = 0;     // span along the segment's axis
  std::int64_t hi = 0;
};

using RealizedGeometry = std::vector<SegmentGeometry>;

std::int64_t boundary_coord(const Rect& rect, Side s) noexcept;

/// Coordinate, along segment i's axis, of the end attached via `a`.
/// Segment targets contribute their point's coordinate on the orthogonal axis.
std::int64_t attachment_coord(const PointSet& P, Orientation seg_orient, Attachment a);

/// Fixed coordinate of segment i (x for vertical, y for horizontal).
inline std::int64_t fixed_coord(const PointSet& P, Orientation o, int i) {
  return o == Orientation::Vertical ? P[i].x : P[i].y;
}
/// Coordinate of p_i along segment i's own axis.
inline std::int64_t along_coord(const PointSet& P, Orientation o, int i) {
  return o == Orientation::Vertical ? P[i].y : P[i].x;
}

SegmentGeometry segment_geometry(const Rectangulation& r, const PointSet& P, int i);
RealizedGeometry realize(const Rectangulation& r, const PointSet& P);

enum class ViolationKind {
  SizeMismatch,
  TargetOutOfRange,
  SelfAttachment,
  ParallelTarget,
  WrongBoundarySide,
  PointNotInterior,
  EndpointOutsideTarget,
  Crossing,
  FaceCount,
  SharedPoint,        // three segments, two endpoints, or a segment and a foreign point meet
  CollinearOverlap,
  DirectionOutOfRange,
};

const char* to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  int first = -1;
  int second = -1;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  long faces = -1;  // interior faces from the Euler count; -1 when not computed

  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
};

/// Full check of every rectangulation invariant, including the Euler face count.
ValidationReport validate(const Rectangulation& r, const PointSet& P);

/// Checks only the invariants that involve `segments`: their own structure,
/// crossings against every other segment, and endpoints resting on them.
/// O(n * |segments|); used after single operations.
ValidationReport validate_local(const Rectangulation& r, const PointSet& P,
                                std::span<const int> segments);

Rectangulation canonical_vertical(const PointSet& P);
Rectangulation canonical_horizontal(const PointSet& P);

std::size_t count_horizontal(const Rectangulation& r) noexcept;
bool all_vertical(const Rectangulation& r) noexcept;

/// Byte encoding of (orientation, attachments) by point index; injective and decodable.
using CanonicalKey = std::string;
CanonicalKey encode(const Rectangulation& r);
Rectangulation decode(const CanonicalKey& key);

}  // namespace rectiflip
