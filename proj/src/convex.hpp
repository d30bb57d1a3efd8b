#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "moves.hpp"
#include "point_set.hpp"
#include "rectangulation.hpp"

namespace rectiflip {

/// Coordinates and direction components are bounded so that every predicate
/// fits in 128-bit integers.
inline constexpr std::int64_t kConvexCoordLimit = std::int64_t{1} << 20;
inline constexpr std::int64_t kConvexDirLimit = std::int64_t{1} << 20;

/// Distinct points in the plane; unlike PointSet, shared x or y is allowed.
class PlanarPointSet {
 public:
  PlanarPointSet() = default;
  /// Throws InvalidArgument on duplicates or out-of-range coordinates.
  static PlanarPointSet create(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }
  bool distinct_x() const;

 private:
  std::vector<Point> points_;
};

/// End of a convex segment: at infinity or on another segment.
class ConvexEnd {
 public:
  constexpr ConvexEnd() = default;
  static constexpr ConvexEnd infinite() noexcept { return ConvexEnd(-1); }
  static constexpr ConvexEnd on_segment(int j) noexcept { return ConvexEnd(j); }
  static constexpr ConvexEnd from_code(std::int32_t c) noexcept { return ConvexEnd(c < 0 ? -1 : c); }

  constexpr bool is_infinite() const noexcept { return code_ < 0; }
  constexpr bool is_segment() const noexcept { return code_ >= 0; }
  constexpr int segment() const noexcept { return code_; }
  constexpr std::int32_t code() const noexcept { return code_; }

  friend constexpr bool operator==(ConvexEnd, ConvexEnd) = default;

 private:
  constexpr explicit ConvexEnd(std::int32_t c) : code_(c) {}
  std::int32_t code_ = -1;
};

/// Segment i lies on the line through p_i with direction dir[i]. Low is the
/// end towards -dir, High towards +dir.
struct ConvexSubdivision {
  std::vector<Direction> dir;
  std::vector<std::array<ConvexEnd, 2>> attach;

  std::size_t size() const noexcept { return dir.size(); }
  ConvexEnd end(int i, End e) const { return attach[i][index_of(e)]; }
  ConvexEnd& end(int i, End e) { return attach[i][index_of(e)]; }

  friend bool operator==(const ConvexSubdivision&, const ConvexSubdivision&) = default;
};

/// n vertical lines; the points must have distinct x.
ConvexSubdivision convex_vertical(const PlanarPointSet& P);
bool all_vertical(const ConvexSubdivision& r) noexcept;
std::size_t count_nonvertical(const ConvexSubdivision& r) noexcept;

CanonicalKey encode(const ConvexSubdivision& r);

ValidationReport validate_convex(const ConvexSubdivision& r, const PlanarPointSet& P);
ValidationReport validate_convex_local(const ConvexSubdivision& r, const PlanarPointSet& P,
                                       std::span<const int> segments);

/// Exact endpoint coordinates as (x, y) doubles, for rendering only.
struct ConvexDrawSegment {
  double x0, y0, x1, y1;
  bool inf_lo, inf_hi;
};
std::vector<ConvexDrawSegment> draw_geometry(const ConvexSubdivision& r, const PlanarPointSet& P);

struct ConvexEndRef {
  int seg;
  End end;
};
std::vector<ConvexEndRef> attachments_on(const ConvexSubdivision& r, const PlanarPointSet& P, int i);

std::vector<int> legal_flips(const ConvexSubdivision& r);
std::vector<Move> legal_rotates(const ConvexSubdivision& r, const PlanarPointSet& P);

/// Directed flip. Throws IllegalFlip when the segment carries an endpoint and
/// InvalidDirection when the result would not be a convex subdivision (r is
/// left unchanged). Returns the weight, 0 for every legal flip.
std::uint64_t apply_flip_dir(ConvexSubdivision& r, const PlanarPointSet& P, int p, Direction sigma);
/// Rotate; returns the number of vertices swept by the moving portion.
std::uint64_t apply_rotate(ConvexSubdivision& r, const PlanarPointSet& P, int j, End e);
std::uint64_t apply_move(ConvexSubdivision& r, const PlanarPointSet& P, const Move& m);

Move inverse_move(const ConvexSubdivision& r, const PlanarPointSet& P, const Move& m);
std::vector<int> touched_segments(const ConvexSubdivision& r, const Move& m);

using ConvexStepHook = std::function<void(const ConvexSubdivision&, const TraceEntry&)>;

/// Rotates away every endpoint resting on segment i, then flips it to sigma.
/// The flip is skipped when nothing rested on i and it already has direction
/// sigma.
void shorten_and_flip(ConvexSubdivision& r, const PlanarPointSet& P, int i, Direction sigma, OpTrace& trace,
                      const ConvexStepHook* hook = nullptr);

ConvexSubdivision replay(const ConvexSubdivision& start, const PlanarPointSet& P, const OpTrace& trace,
                         bool check = true);

/// Edge (s2, s3) when s2 hits s3, or when some s1 hits s2 and its extension
/// beyond s2 first meets s3.
struct ExtensionVisibility {
  std::vector<std::pair<int, int>> edges;
  Graph support(std::span<const int> vertices) const;  // undirected, induced, local ids
};
ExtensionVisibility extension_visibility(const ConvexSubdivision& r, const PlanarPointSet& P);

/// Vertical visibility between the given nonvertical segments: two of them are
/// adjacent when some vertical segment joins them without crossing any segment.
Graph vertical_visibility(const ConvexSubdivision& r, const PlanarPointSet& P, std::span<const int> members);

struct ConvexRoundRecord {
  std::size_t nonvertical_before = 0;
  std::size_t first_set = 0;   // independent in the extension visibility support
  std::size_t second_set = 0;  // further independent in the vertical visibility graph
  std::size_t nonvertical_after = 0;
  std::size_t ops = 0;
};

struct ConvexOptions {
  bool validate_each_op = false;
  const ConvexStepHook* hook = nullptr;
};

struct ConvexResult {
  ConvexSubdivision final;
  OpTrace trace;
  std::vector<ConvexRoundRecord> rounds;
  std::int64_t shear = 0;  // x' = x + shear * y applied when x-coordinates collide
  std::size_t phase_ops[2] = {0, 0};
  std::size_t repeat_extensions = 0;
};

/// Rounds of Shorten&Flip-to-vertical over doubly independent sets. Result
/// segments are all vertical in the sheared frame (shear = 0 when the
/// input x-coordinates are distinct).
ConvexResult canonicalize_convex(const ConvexSubdivision& start, const PlanarPointSet& P,
                                 const ConvexOptions& opts = {});

/// Linear-time canonicalization for points (i, 0), i = 1..n. Throws NotCollinear.
ConvexResult collinear_canonicalize(const ConvexSubdivision& start, const PlanarPointSet& P,
                                    const ConvexOptions& opts = {});

/// Random walk of legal moves. Flip directions are random nonhorizontal vectors
/// with components up to max_component; small values make concurrent lines, and
/// with them blocked rotates, common.
ConvexSubdivision random_convex_walk(ConvexSubdivision r, const PlanarPointSet& P, std::size_t steps,
                                     std::mt19937_64& rng, std::int64_t max_component = 1000);

}  // namespace rectiflip
