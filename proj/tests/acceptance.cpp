// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "bitrev.hpp"
#include "canonical.hpp"
#include "convex.hpp"
#include "diagonal.hpp"
#include "errors.hpp"
#include "flipgraph.hpp"
#include "generators.hpp"
#include "ops.hpp"

using namespace rectiflip;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failure;

  void fail(const std::string& why) {
    if (pass) failure = why;
    pass = false;
  }
};

// 1. Diagonal point sets.
void diagonal(Outcome& out) {
  const auto start_clock = Clock::now();
  for (int n : {10, 100, 1000}) {
    PointSet P = gen_diagonal(n);
    std::size_t worst = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng(seed);
      const Rectangulation start = random_walk(canonical_vertical(P), P, 5 * n, rng);
      DiagonalResult res = canonicalize_diagonal(start, P);
      worst = std::max(worst, res.trace.size());
      if (!all_vertical(res.final)) out.fail("n=" + std::to_string(n) + " ended with a horizontal segment");
      if (res.trace.size() > 12u * n) out.fail("n=" + std::to_string(n) + " used " + std::to_string(res.trace.size()) + " ops");
      if (replay(start, P, res.trace) != res.final) out.fail("replay mismatch at n=" + std::to_string(n));
    }
    out.detail << " n=" << n << ":max_ops=" << worst << "/" << 12 * n;
  }
  const double elapsed = seconds_since(start_clock);
  if (elapsed >= 30) out.fail("runtime " + std::to_string(elapsed) + " s");
  out.detail << " runtime=" << elapsed << "s";
}

// 2. Collinear point sets.
void collinear(Outcome& out) {
  for (int n : {10, 100, 500}) {
    PlanarPointSet P = PlanarPointSet::create(gen_collinear(n));
    std::size_t worst = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(seed);
      const ConvexSubdivision start = random_convex_walk(convex_vertical(P), P, 5 * n, rng);
      ConvexResult res = collinear_canonicalize(start, P);
      worst = std::max(worst, res.trace.size());
      if (!all_vertical(res.final)) out.fail("n=" + std::to_string(n) + " ended with a nonvertical segment");
      if (res.trace.size() > 8u * n) out.fail("n=" + std::to_string(n) + " used " + std::to_string(res.trace.size()) + " ops");
      if (replay(start, P, res.trace) != res.final) out.fail("replay mismatch at n=" + std::to_string(n));
    }
    out.detail << " n=" << n << ":max_ops=" << worst << "/" << 8 * n;
  }
}

// 3. Saturation audit on the bit-reversal sets.
void audit(Outcome& out) {
  const auto t0 = Clock::now();
  for (int k = 2; k <= 8; ++k) {
    PointSet P = gen_bit_reversal(k);
    const Rectangulation start = canonical_horizontal(P);
    CanonicalizeResult res = canonicalize(start, P);
    AuditReport rep = audit_trace(P, k, start, res.trace, false);
    const std::string tag = "k=" + std::to_string(k) + ": ";
    if (!rep.ok()) out.fail(tag + rep.violations.front());
    if (rep.initial_total != 0) out.fail(tag + "initial saturation " + rep.initial_total.get_str());
    if (rep.final_total != mpq_class(static_cast<long>(k) << (k - 1))) {
      out.fail(tag + "final saturation " + rep.final_total.get_str());
    }
    if (static_cast<std::int64_t>(res.trace.size()) < lower_bound(k)) out.fail(tag + "trace shorter than the lower bound");
    if (rep.containment_checks == 0) out.fail(tag + "no containment checks ran");
    out.detail << " k=" << k << ":" << res.trace.size() << ">=" << lower_bound(k);
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 60) out.fail("runtime " + std::to_string(elapsed) + " s");
  out.detail << " runtime=" << elapsed << "s";
}

// 4. General canonicalizer on random permutations.
void general(Outcome& out) {
  double worst_ratio = 0;
  for (int e = 4; e <= 12; ++e) {
    const int n = 1 << e;
    PointSet P = gen_random_permutation(n, static_cast<std::uint64_t>(e));
    CanonicalizeOptions o;
    o.validate_each_op = true;
    const Rectangulation start = canonical_horizontal(P);
    CanonicalizeResult res = canonicalize(start, P, o);
    const std::string tag = "n=" + std::to_string(n) + ": ";
    if (!all_vertical(res.final)) out.fail(tag + "not all vertical");
    for (const RoundRecord& rr : res.rounds) {
      if (rr.horizontal_before - rr.horizontal_after < (rr.horizontal_before + 5) / 6) out.fail(tag + "round shrank too little");
    }
    const double ratio = static_cast<double>(res.trace.size()) / (n * static_cast<double>(e));
    worst_ratio = std::max(worst_ratio, ratio);
    char buf[64];
    std::snprintf(buf, sizeof buf, " n=%d:%.2f", n, ratio);
    out.detail << buf;
  }
  if (worst_ratio > 20) out.fail("ops/(n log2 n) reached " + std::to_string(worst_ratio));
  out.detail << " max_ops_per_nlogn=" << worst_ratio;
}

// 5. Exhaustive oracle on small instances.
void oracle(Outcome& out) {
  std::size_t traces = 0;
  for (int n = 1; n <= 4; ++n) {
    for (int family = 0; family < 4; ++family) {
      PointSet P = family == 0 ? gen_diagonal(n) : gen_random_permutation(n, static_cast<std::uint64_t>(family));
      const std::string tag = (family == 0 ? "diagonal:" : "permutation:") + std::to_string(n) + ": ";
      FlipGraph g = enumerate(P);
      if (!connected(g)) {
        out.fail(tag + "disconnected");
        continue;
      }
      const CanonicalKey V = encode(canonical_vertical(P)), H = encode(canonical_horizontal(P));
      const int d_hv = distance(g, H, V);
      if (diameter(g) < d_hv) out.fail(tag + "diameter below dist(H, V)");
      std::vector<CanonicalKey> keys = g.keys;
      std::sort(keys.begin(), keys.end());
      if (keys != brute_force_states(P)) out.fail(tag + "BFS and exhaustive generator disagree");
      const auto dist_to_v = bfs_distances(g, g.id(V));
      // Every state of the graph as a start.
      for (std::size_t s = 0; s < g.node_count(); ++s) {
        const Rectangulation start = decode(g.keys[s]);
        std::vector<std::size_t> lengths{canonicalize(start, P).trace.size()};
        if (family == 0) lengths.push_back(canonicalize_diagonal(start, P).trace.size());
        for (std::size_t len : lengths) {
          ++traces;
          if (len < static_cast<std::size_t>(dist_to_v[s])) out.fail(tag + "trace shorter than the oracle distance");
        }
      }
    }
  }
  out.detail << " n<=4 traces_checked=" << traces;
}

// 6. Operator algebra.
void algebra(Outcome& out) {
  std::size_t pairs = 0;
  for (std::uint64_t seed = 0; pairs < 10000; ++seed) {
    const int n = 3 + static_cast<int>(seed % 18);
    PointSet P = gen_random_permutation(n, seed);
    Rng rng(seed);
    Rectangulation r = random_walk(canonical_vertical(P), P, static_cast<std::size_t>(3 * n), rng);
    for (int step = 0; step < 200; ++step) {
      auto moves = legal_moves(r, P);
      const Move m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      const Rectangulation s = apply(r, P, m);
      ++pairs;
      if (!validate(s, P).ok()) out.fail("invalid result of " + to_string(m));
      if (apply(s, P, inverse_move(r, P, m)) != r) out.fail("inverse of " + to_string(m) + " failed");
      std::size_t toggled = 0;
      for (int i = 0; i < n; ++i) toggled += r.orient[i] != s.orient[i];
      if (m.kind == MoveKind::Flip && (toggled != 1 || s.orient[m.index] == r.orient[m.index])) {
        out.fail(to_string(m) + " did not toggle exactly its own orientation");
      }
      if (m.kind == MoveKind::Rotate && toggled != 0) out.fail(to_string(m) + " changed an orientation");
      r = s;
    }
  }
  out.detail << " pairs=" << pairs;
}

// 7. Box family of P_k.
void box_family(Outcome& out) {
  for (int k = 1; k <= 8; ++k) {
    const auto bs = boxes(k);
    PointSet P = gen_bit_reversal(k);
    const std::string tag = "k=" + std::to_string(k) + ": ";
    if (bs.size() != static_cast<std::size_t>(k) << (k - 1)) out.fail(tag + "wrong box count");
    std::vector<int> on(P.size(), 0);
    for (const Box& b : bs) {
      for (std::size_t i = 0; i < P.size(); ++i) {
        const Point& p = P[i];
        if (p.x > b.x0 && p.x < b.x1 && p.y > b.y0 && p.y < b.y1) out.fail(tag + "point inside a box");
        on[i] += p.x >= b.x0 && p.x <= b.x1 && p.y >= b.y0 && p.y <= b.y1;
      }
    }
    for (int c : on) {
      if (c != k) out.fail(tag + "a point lies on " + std::to_string(c) + " boxes");
    }
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<const Box*>> by_size;
    for (const Box& b : bs) by_size[{b.width(), b.height()}].push_back(&b);
    for (const auto& [size, group] : by_size) {
      for (std::size_t a = 0; a < group.size(); ++a) {
        for (std::size_t c = a + 1; c < group.size(); ++c) {
          const Box &u = *group[a], &v = *group[c];
          if (u.x0 < v.x1 && v.x0 < u.x1 && u.y0 < v.y1 && v.y0 < u.y1) out.fail(tag + "same-size boxes overlap");
        }
      }
    }
    out.detail << " k=" << k << ":" << bs.size();
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"diagonal", diagonal}, {"collinear", collinear}, {"audit", audit},          {"general", general},
      {"oracle", oracle},     {"algebra", algebra},     {"boxes", box_family},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      run(out);
    } catch (const Error& e) {
      out.fail(std::string(to_string(e.code())) + ": " + e.what());
    }
    std::printf("%s criterion %d (%s):%s [%.1fs]%s%s\n", out.pass ? "PASS" : "FAIL", index, name,
                out.detail.str().c_str(), seconds_since(t0), out.pass ? "" : " -- ", out.failure.c_str());
    std::fflush(stdout);
    failed += !out.pass;
  }
  return failed == 0 ? 0 : 1;
}
