#include "moves.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace rectiflip {

Direction Direction::normalized(std::int64_t dx, std::int64_t dy) {
  if (dx == 0 && dy == 0) throw Error(ErrorCode::InvalidDirection, "zero direction vector");
  std::int64_t g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
  dx /= g;
  dy /= g;
  if (dx < 0 || (dx == 0 && dy < 0)) {
    dx = -dx;
    dy = -dy;
  }
  return {dx, dy};
}

std::string to_string(const Move& m) {
  if (m.kind == MoveKind::Flip) {
    std::string s = "Flip(" + std::to_string(m.index);
    if (m.dir) s += ", [" + std::to_string(m.dir->dx) + "," + std::to_string(m.dir->dy) + "]";
    return s + ")";
  }
  return "Rotate(" + std::to_string(m.index) + ", " + (m.end == End::Low ? "low" : "high") + ")";
}

std::size_t OpTrace::flips() const noexcept {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const TraceEntry& e) {
    return e.move.kind == MoveKind::Flip;
  }));
}

std::size_t OpTrace::rotates() const noexcept { return size() - flips(); }

std::uint64_t OpTrace::max_weight() const noexcept {
  std::uint64_t w = 0;
  for (const auto& e : entries) w = std::max(w, e.weight);
  return w;
}

}  // namespace rectiflip
