#include "point_set.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace rectiflip {

namespace {

// Values beyond this would overflow the int64 predicates used downstream.
constexpr std::int64_t kCoordLimit = std::int64_t{1} << 40;

void check_distinct(const std::vector<Point>& pts, bool by_x) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](int i) { return by_x ? pts[i].x : pts[i].y; };
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return key(a) != key(b) ? key(a) < key(b) : a < b;
  });
  for (std::size_t k = 1; k < idx.size(); ++k) {
    if (key(idx[k - 1]) == key(idx[k])) {
      throw Error(by_x ? ErrorCode::DuplicateX : ErrorCode::DuplicateY,
                  std::string("points ") + std::to_string(idx[k - 1]) + " and " +
                      std::to_string(idx[k]) + " share " + (by_x ? "x" : "y") +
                      "=" + std::to_string(key(idx[k])));
    }
  }
}

}  // namespace

PointSet PointSet::create(std::vector<Point> points, Rect rect) {
  if (rect.x0 >= rect.x1 || rect.y0 >= rect.y1) {
    throw Error(ErrorCode::InvalidArgument, "bounding rectangle is empty");
  }
  for (auto v : {rect.x0, rect.x1, rect.y0, rect.y1}) {
    if (v > kCoordLimit || v < -kCoordLimit) {
      throw Error(ErrorCode::InvalidArgument, "coordinate out of supported range");
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    if (!(rect.x0 < p.x && p.x < rect.x1 && rect.y0 < p.y && p.y < rect.y1)) {
      throw Error(ErrorCode::PointOutsideRect,
                  "point " + std::to_string(i) + " (" + std::to_string(p.x) + "," +
                      std::to_string(p.y) + ") is not strictly inside the rectangle");
    }
  }
  check_distinct(points, true);
  check_distinct(points, false);

  PointSet ps;
  ps.points_ = std::move(points);
  ps.rect_ = rect;
  ps.by_x_.resize(ps.points_.size());
  std::iota(ps.by_x_.begin(), ps.by_x_.end(), 0);
  std::sort(ps.by_x_.begin(), ps.by_x_.end(),
            [&](int a, int b) { return ps.points_[a].x < ps.points_[b].x; });
  return ps;
}

}  // namespace rectiflip
