#pragma once

#include <vector>

#include "moves.hpp"
#include "point_set.hpp"
#include "rectangulation.hpp"

namespace rectiflip {

/// Sorting by x sorts by y as well.
bool is_diagonal(const PointSet& P);

/// Monotone chain from R's lower-left to its upper-right corner. Visited
/// points alternate between horizontal and vertical segments; a point is
/// skipped only when its two neighbours in x-order are both visited.
struct Staircase {
  struct Step {
    int seg;
    Orientation orient;
    std::int64_t lo, hi;  // covered portion along the segment's axis
  };
  std::vector<Step> steps;
  std::vector<int> skipped;
};

struct DiagonalStats {
  std::size_t phase_ops[4] = {0, 0, 0, 0};
  std::size_t phase1_flips = 0;
  std::size_t phase1_rotations = 0;
  std::size_t phase1_repeat_extensions = 0;  // a segment extended twice the same way
  std::size_t phase2_rotations = 0;
  std::size_t boundary_count_stalls = 0;      // phase 3/4 ops not adding an end on top/bottom
  std::size_t max_strip_points = 0;
};

struct DiagonalOptions {
  bool validate_each_op = false;
  const StepHook* hook = nullptr;
};

struct DiagonalResult {
  Rectangulation final;
  OpTrace trace;
  Staircase staircase;
  DiagonalStats stats;
};

/// Phase 1: Shorten&Flip the middle of every run of three consecutive parallel
/// segments, lowest index first.
void no_three_parallel(Rectangulation& r, const PointSet& P, OpTrace& trace, DiagonalStats& stats,
                       const DiagonalOptions& opts = {});

/// Phase 2. Throws PhasePreconditionViolated if three consecutive segments are parallel.
Staircase build_staircase(Rectangulation& r, const PointSet& P, OpTrace& trace, DiagonalStats& stats,
                          const DiagonalOptions& opts = {});

/// Phase 3: clears the regions above and below the staircase so that its
/// vertical segments span R.
void sweep_regions(Rectangulation& r, const PointSet& P, const Staircase& st, OpTrace& trace,
                   DiagonalStats& stats, const DiagonalOptions& opts = {});

/// Phase 4: one Shorten&Flip per staircase strip. Throws StripTooLarge when a
/// strip holds more than three points.
void finish_strips(Rectangulation& r, const PointSet& P, const Staircase& st, OpTrace& trace,
                   DiagonalStats& stats, const DiagonalOptions& opts = {});

/// All four phases; the result is canonical_vertical(P). Throws NotDiagonal.
DiagonalResult canonicalize_diagonal(const Rectangulation& start, const PointSet& P,
                                     const DiagonalOptions& opts = {});

}  // namespace rectiflip
