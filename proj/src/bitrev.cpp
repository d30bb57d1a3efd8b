#include "bitrev.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <sstream>

#include "errors.hpp"
#include "ops.hpp"

namespace rectiflip {

std::uint64_t bit_reverse(std::uint64_t m, int k) noexcept {
  std::uint64_t y = 0;
  for (int b = 0; b < k; ++b) {
    if (m >> b & 1) y |= std::uint64_t{1} << (k - 1 - b);
  }
  return y;
}

PointSet gen_bit_reversal(int k, std::int64_t pad_to) {
  if (k < 0 || k > 30) throw Error(ErrorCode::InvalidArgument, "bit-reversal order must be in [0, 30]");
  const std::int64_t base = std::int64_t{1} << k;
  if (pad_to != 0 && pad_to < base) {
    throw Error(ErrorCode::InvalidArgument, "pad size " + std::to_string(pad_to) + " is below 2^k");
  }
  const std::int64_t n = std::max(base, pad_to);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::int64_t m = 0; m < base; ++m) {
    pts.push_back({m, static_cast<std::int64_t>(bit_reverse(static_cast<std::uint64_t>(m), k))});
  }
  for (std::int64_t t = base; t < n; ++t) pts.push_back({t, t});
  return PointSet::create(std::move(pts), Rect{-1, -1, n, n});
}

std::vector<Box> boxes(int k) {
  if (k < 1 || k > 30) throw Error(ErrorCode::InvalidArgument, "box family needs k in [1, 30]");
  std::vector<Box> out;
  const std::int64_t n = std::int64_t{1} << k;
  for (int bit = 1; bit <= k; ++bit) {
    const std::int64_t step = std::int64_t{1} << (bit - 1);
    for (std::int64_t m = 0; m < n; ++m) {
      if (m & step) continue;
      const std::int64_t m2 = m | step;
      const auto y1 = static_cast<std::int64_t>(bit_reverse(m, k));
      const auto y2 = static_cast<std::int64_t>(bit_reverse(m2, k));
      out.push_back({m, m2, bit, m, m2, std::min(y1, y2), std::max(y1, y2)});
    }
  }
  return out;
}

std::int64_t lower_bound(int k) {
  if (k <= 0) return 0;
  if (k >= 3) return static_cast<std::int64_t>(k) << (k - 3);
  return 1;
}

namespace {

struct Piece {
  std::int64_t x, lo, hi;
};

class Coverage {
 public:
  explicit Coverage(const PointSet& P) : P_(P), by_x_(P.size()) {
    std::iota(by_x_.begin(), by_x_.end(), 0);
    std::sort(by_x_.begin(), by_x_.end(), [&](int a, int b) { return P[a].x < P[b].x; });
  }

  // Covered length of the box's vertical extent by verticals of r and `extra`.
  std::int64_t length(const Rectangulation& r, const Box& b, std::span<const Piece> extra = {}) const {
    std::vector<std::pair<std::int64_t, std::int64_t>> iv;
    auto first = std::lower_bound(by_x_.begin(), by_x_.end(), b.x0,
                                  [&](int i, std::int64_t x) { return P_[i].x < x; });
    for (auto it = first; it != by_x_.end() && P_[*it].x <= b.x1; ++it) {
      if (r.orient[*it] != Orientation::Vertical) continue;
      SegmentGeometry g = segment_geometry(r, P_, *it);
      clip(g.lo, g.hi, b, iv);
    }
    for (const Piece& p : extra) {
      if (b.x0 <= p.x && p.x <= b.x1) clip(p.lo, p.hi, b, iv);
    }
    std::sort(iv.begin(), iv.end());
    std::int64_t total = 0, reach = b.y0;
    for (auto [lo, hi] : iv) {
      lo = std::max(lo, reach);
      if (hi > lo) {
        total += hi - lo;
        reach = hi;
      }
    }
    return total;
  }

 private:
  static void clip(std::int64_t lo, std::int64_t hi, const Box& b,
                   std::vector<std::pair<std::int64_t, std::int64_t>>& iv) {
    lo = std::max(lo, b.y0);
    hi = std::min(hi, b.y1);
    if (lo < hi) iv.emplace_back(lo, hi);
  }

  const PointSet& P_;
  std::vector<int> by_x_;
};

mpq_class ratio(std::int64_t num, std::int64_t den) {
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

bool contains(const Box& b, const Piece& p) {
  return b.x0 <= p.x && p.x <= b.x1 && b.y0 <= p.lo && p.hi <= b.y1;
}

}  // namespace

mpq_class saturation(const Rectangulation& r, const PointSet& P, const Box& b) {
  return ratio(Coverage(P).length(r, b), b.height());
}

mpq_class total_saturation(const Rectangulation& r, const PointSet& P, const std::vector<Box>& bs) {
  Coverage cov(P);
  mpq_class total = 0;
  for (const Box& b : bs) total += ratio(cov.length(r, b), b.height());
  return total;
}

std::string AuditReport::csv() const {
  std::ostringstream os;
  os << "op_index,kind,delta_total_saturation,running_total\n";
  for (const AuditRow& row : rows) {
    os << row.op_index << ',' << (row.kind == MoveKind::Flip ? "flip" : "rotate") << ','
       << row.delta.get_str() << ',' << row.running_total.get_str() << '\n';
  }
  return os.str();
}

AuditReport audit_trace(const PointSet& P, int k, const Rectangulation& start, const OpTrace& trace,
                        bool strict) {
  const std::vector<Box> bs = boxes(k);
  const Coverage cov(P);
  const std::int64_t side = std::int64_t{1} << k;
  std::vector<std::vector<int>> boxes_at(side);  // boxes whose closed x-range holds x
  for (int b = 0; b < static_cast<int>(bs.size()); ++b) {
    for (std::int64_t x = bs[b].x0; x <= bs[b].x1; ++x) boxes_at[x].push_back(b);
  }

  AuditReport rep;
  std::vector<std::int64_t> covered(bs.size());
  mpq_class total = 0;
  for (std::size_t b = 0; b < bs.size(); ++b) {
    covered[b] = cov.length(start, bs[b]);
    total += ratio(covered[b], bs[b].height());
  }
  rep.initial_total = total;

  auto fail = [&](std::size_t op, const std::string& what) {
    std::string msg = "operation " + std::to_string(op) + ": " + what;
    if (strict) throw Error(ErrorCode::AuditViolation, msg);
    rep.violations.push_back(std::move(msg));
  };

  Rectangulation r = start;
  for (std::size_t op = 0; op < trace.entries.size(); ++op) {
    const Move& m = trace.entries[op].move;
    std::vector<int> touched = touched_segments(r, m);
    const Rectangulation before = r;
    apply_move(r, P, m);
    {
      auto lv = validate_local(r, P, std::span<const int>(touched.data(), 1));
      if (!lv.ok()) throw Error(ErrorCode::InvalidState, "operation " + std::to_string(op) + ": " + lv.summary());
    }

    std::vector<Piece> pieces;
    if (r.orient[m.index] == Orientation::Vertical) {
      SegmentGeometry g = segment_geometry(r, P, m.index);
      const std::int64_t x = P[m.index].x;
      if (m.kind == MoveKind::Flip) {
        pieces.push_back({x, P[m.index].y, g.hi});
        pieces.push_back({x, g.lo, P[m.index].y});
      } else {
        const SegmentGeometry old = segment_geometry(before, P, m.index);
        if (g.lo < old.lo) pieces.push_back({x, g.lo, old.lo});
        if (g.hi > old.hi) pieces.push_back({x, old.hi, g.hi});
      }
    }

    std::vector<int> affected;
    for (int s : touched) {
      const std::int64_t x = P[s].x;
      if (x < 0 || x >= side) continue;
      if (before.orient[s] != Orientation::Vertical && r.orient[s] != Orientation::Vertical) continue;
      affected.insert(affected.end(), boxes_at[x].begin(), boxes_at[x].end());
    }
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

    mpq_class delta = 0;
    for (int b : affected) {
      const std::int64_t now = cov.length(r, bs[b]);
      if (now > covered[b]) {
        std::int64_t prev = covered[b];
        for (std::size_t t = 0; t < pieces.size(); ++t) {
          const std::int64_t with =
              cov.length(before, bs[b], std::span<const Piece>(pieces.data(), t + 1));
          if (with > prev) {
            ++rep.containment_checks;
            if (!contains(bs[b], pieces[t])) {
              fail(op, "inserted piece at x=" + std::to_string(pieces[t].x) + " raises the saturation of box (" +
                           std::to_string(bs[b].m1) + "," + std::to_string(bs[b].m2) + ") without lying inside it");
            }
          }
          prev = with;
        }
      }
      delta += ratio(now - covered[b], bs[b].height());
      covered[b] = now;
    }
    total += delta;
    const int cap = m.kind == MoveKind::Flip ? 4 : 2;
    if (delta > cap) {
      fail(op, std::string(m.kind == MoveKind::Flip ? "flip" : "rotate") + " raises total saturation by " +
                   delta.get_str() + " > " + std::to_string(cap));
    }
    rep.rows.push_back({op, m.kind, delta, total});
  }
  rep.final_total = total;
  return rep;
}

}  // namespace rectiflip
