#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rectangulation.hpp"

namespace rectiflip {

/// Integer direction vector, normalized: gcd(|dx|,|dy|) = 1 and
/// dx > 0, or dx == 0 and dy == 1 (vertical).
struct Direction {
  std::int64_t dx = 0;
  std::int64_t dy = 1;

  static Direction normalized(std::int64_t dx, std::int64_t dy);
  static constexpr Direction vertical() noexcept { return {0, 1}; }
  bool is_vertical() const noexcept { return dx == 0; }

  friend bool operator==(const Direction&, const Direction&) = default;
};

enum class MoveKind : std::uint8_t { Flip, Rotate };

/// Flip(p [, direction]) or Rotate(segment j, end e). A rotate names the end of j
/// that rests on the segment being shortened.
struct Move {
  MoveKind kind = MoveKind::Flip;
  int index = 0;
  End end = End::Low;
  std::optional<Direction> dir;  // convex flips only

  static Move flip(int p) { return {MoveKind::Flip, p, End::Low, std::nullopt}; }
  static Move flip(int p, Direction d) { return {MoveKind::Flip, p, End::Low, d}; }
  static Move rotate(int j, End e) { return {MoveKind::Rotate, j, e, std::nullopt}; }

  friend bool operator==(const Move&, const Move&) = default;
};

std::string to_string(const Move& m);

struct TraceEntry {
  Move move;
  std::uint64_t weight = 0;  // vertices swept by the operation
};

struct OpTrace {
  std::string initial;  // encoded starting state
  std::vector<TraceEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::size_t flips() const noexcept;
  std::size_t rotates() const noexcept;
  std::uint64_t max_weight() const noexcept;
  void append(const OpTrace& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }
};

/// Called after every applied operation with the resulting state.
using StepHook = std::function<void(const Rectangulation&, const TraceEntry&)>;

}  // namespace rectiflip
