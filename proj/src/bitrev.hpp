#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "moves.hpp"
#include "point_set.hpp"
#include "rectangulation.hpp"

namespace rectiflip {

std::uint64_t bit_reverse(std::uint64_t m, int k) noexcept;

/// {(m, rev_k(m))} for m < 2^k inside [-1, n]^2. With pad_to > 2^k the set is
/// completed to pad_to points by (2^k + t, 2^k + t) and n = pad_to.
PointSet gen_bit_reversal(int k, std::int64_t pad_to = 0);

/// Closed box spanned by two points whose indices differ in exactly one bit.
struct Box {
  std::int64_t m1, m2;  // m1 < m2, m2 = m1 + 2^(bit-1)
  int bit;              // 1-based
  std::int64_t x0, x1, y0, y1;

  std::int64_t width() const noexcept { return x1 - x0; }
  std::int64_t height() const noexcept { return y1 - y0; }
};

/// The k * 2^(k-1) boxes of P_k.
std::vector<Box> boxes(int k);

/// Union length of the y-projections of vertical segments clipped to the
/// closed box, over the box height.
mpq_class saturation(const Rectangulation& r, const PointSet& P, const Box& b);
mpq_class total_saturation(const Rectangulation& r, const PointSet& P, const std::vector<Box>& bs);

/// ceil(k * 2^(k-3)): operations needed to go from all-horizontal to all-vertical on P_k.
std::int64_t lower_bound(int k);

struct AuditRow {
  std::size_t op_index = 0;
  MoveKind kind = MoveKind::Flip;
  mpq_class delta;
  mpq_class running_total;
};

struct AuditReport {
  mpq_class initial_total;
  mpq_class final_total;
  std::vector<AuditRow> rows;
  std::vector<std::string> violations;
  std::size_t containment_checks = 0;  // saturation-increasing insertions examined

  bool ok() const noexcept { return violations.empty(); }
  std::string csv() const;
};

/// Replays `trace` from `start` and checks, per operation, that the total
/// saturation grows by at most 2 (rotate) or 4 (flip) and that every inserted
/// vertical piece that raises a box's saturation lies inside that box.
/// With `strict`, the first violation throws Error{AuditViolation}.
AuditReport audit_trace(const PointSet& P, int k, const Rectangulation& start, const OpTrace& trace,
                        bool strict = true);

}  // namespace rectiflip
