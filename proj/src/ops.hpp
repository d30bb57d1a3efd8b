#pragma once

#include <vector>

#include "moves.hpp"
#include "point_set.hpp"
#include "rectangulation.hpp"

namespace rectiflip {

enum class RayDir : std::uint8_t { Left, Right, Down, Up };

/// First segment (or side of R) hit by an axis-parallel ray from `from`.
/// A segment is hit when its span strictly contains the ray's fixed coordinate
/// and its own fixed coordinate lies strictly beyond `from`. Linear scan.
Attachment ray_shoot(const Rectangulation& r, const PointSet& P, Point from, RayDir dir,
                     int exclude = -1);

struct EndRef {
  int seg;
  End end;
  std::int64_t coord;  // position along the carrying segment's axis
};

/// Ends of other segments resting on segment i.
std::vector<EndRef> attachments_on(const Rectangulation& r, const PointSet& P, int i);

std::vector<int> legal_flips(const Rectangulation& r);
std::vector<Move> legal_rotates(const Rectangulation& r, const PointSet& P);
std::vector<Move> legal_moves(const Rectangulation& r, const PointSet& P);

/// In-place operators; they return the operation weight and throw
/// Error{IllegalFlip | IllegalRotate} when the precondition fails.
std::uint64_t apply_flip(Rectangulation& r, const PointSet& P, int p);
std::uint64_t apply_rotate(Rectangulation& r, const PointSet& P, int j, End e);
std::uint64_t apply_move(Rectangulation& r, const PointSet& P, const Move& m);

Rectangulation flip(const Rectangulation& r, const PointSet& P, int p);
Rectangulation rotate(const Rectangulation& r, const PointSet& P, int j, End e);
Rectangulation apply(const Rectangulation& r, const PointSet& P, const Move& m);

/// The move that undoes `m` when applied to apply(r, m). `m` must be legal on r.
Move inverse_move(const Rectangulation& r, const PointSet& P, const Move& m);

/// Segments whose geometry `m` changes (for local validation).
std::vector<int> touched_segments(const Rectangulation& r, const Move& m);

/// Rotates away every endpoint resting on segment i, then flips it.
/// Appends (attachments on i) + 1 operations to `trace`.
void shorten_and_flip(Rectangulation& r, const PointSet& P, int i, OpTrace& trace,
                      const StepHook* hook = nullptr);

/// Replays a trace from `start`; with `check` set, every intermediate state is
/// locally validated and an invalid one throws Error{InvalidState}.
Rectangulation replay(const Rectangulation& start, const PointSet& P, const OpTrace& trace,
                      bool check = true);

}  // namespace rectiflip
