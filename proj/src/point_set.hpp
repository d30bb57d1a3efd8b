#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rectiflip {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned bounding rectangle [x0,x1] x [y0,y1].
struct Rect {
  std::int64_t x0 = 0;
  std::int64_t y0 = 0;
  std::int64_t x1 = 0;
  std::int64_t y1 = 0;
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Noncorectilinear points strictly inside a rectangle. Immutable once built.
class PointSet {
 public:
  PointSet() = default;

  /// Validates and builds. Throws Error{DuplicateX | DuplicateY | PointOutsideRect}.
  static PointSet create(std::vector<Point> points, Rect rect);

  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }
  const Rect& rect() const noexcept { return rect_; }

  /// Point indices sorted by increasing x.
  const std::vector<int>& order_by_x() const noexcept { return by_x_; }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.rect_ == b.rect_ && a.points_ == b.points_;
  }

 private:
  std::vector<Point> points_;
  Rect rect_;
  std::vector<int> by_x_;
};

}  // namespace rectiflip
