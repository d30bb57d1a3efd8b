#include "flipgraph.hpp"

#include <algorithm>
#include <deque>

#include "errors.hpp"
#include "ops.hpp"

namespace rectiflip {

std::size_t FlipGraph::edge_count() const noexcept {
  std::size_t deg = 0;
  for (const auto& a : adj) deg += a.size();
  return deg / 2;
}

int FlipGraph::id(const CanonicalKey& key) const {
  auto it = index.find(key);
  if (it == index.end()) throw Error(ErrorCode::UnknownKey, "state is not in the flip graph");
  return it->second;
}

FlipGraph enumerate(const PointSet& P, std::size_t node_limit) {
  if (node_limit < 1) throw Error(ErrorCode::InvalidArgument, "node limit must be positive");
  FlipGraph g;
  auto add = [&](CanonicalKey key) -> std::pair<int, bool> {
    auto [it, fresh] = g.index.emplace(std::move(key), static_cast<int>(g.keys.size()));
    if (fresh) {
      g.keys.push_back(it->first);
      g.adj.emplace_back();
    }
    return {it->second, fresh};
  };
  std::deque<int> queue;
  queue.push_back(add(encode(canonical_vertical(P))).first);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const Rectangulation r = decode(g.keys[u]);
    for (const Move& m : legal_moves(r, P)) {
      CanonicalKey key = encode(apply(r, P, m));
      int v;
      if (auto it = g.index.find(key); it != g.index.end()) {
        v = it->second;
      } else {
        if (g.keys.size() >= node_limit) {
          g.truncated = true;
          continue;
        }
        v = add(std::move(key)).first;
        queue.push_back(v);
      }
      auto& nbrs = g.adj[u];
      if (std::none_of(nbrs.begin(), nbrs.end(), [&](const auto& e) { return e.first == v; })) nbrs.push_back({v, m});
    }
  }
  return g;
}

void require_complete(const FlipGraph& g) {
  if (g.truncated) {
    throw Error(ErrorCode::LimitExceeded,
                "enumeration stopped at the node limit after " + std::to_string(g.node_count()) + " states");
  }
}

std::vector<int> bfs_distances(const FlipGraph& g, int source) {
  std::vector<int> dist(g.node_count(), -1);
  std::vector<int> queue{source};
  dist[source] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const int u = queue[h];
    for (const auto& [v, m] : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

bool connected(const FlipGraph& g) {
  if (g.node_count() == 0) return true;
  auto d = bfs_distances(g, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

int diameter(const FlipGraph& g) {
  require_complete(g);
  int best = 0;
  for (int s = 0; s < static_cast<int>(g.node_count()); ++s) {
    for (int d : bfs_distances(g, s)) {
      if (d < 0) throw Error(ErrorCode::Disconnected, "flip graph is disconnected");
      best = std::max(best, d);
    }
  }
  return best;
}

int distance(const FlipGraph& g, const CanonicalKey& a, const CanonicalKey& b) {
  const int ia = g.id(a), ib = g.id(b);
  const int d = bfs_distances(g, ia)[ib];
  if (d < 0) throw Error(ErrorCode::Disconnected, "states lie in different components");
  return d;
}

namespace {

class BruteForce {
 public:
  explicit BruteForce(const PointSet& P) : P_(P), n_(static_cast<int>(P.size())) {}

  std::vector<CanonicalKey> run() {
    r_.orient.resize(n_);
    r_.attach.resize(n_);
    for (std::uint32_t mask = 0; mask < (1u << n_); ++mask) {
      for (int i = 0; i < n_; ++i) r_.orient[i] = (mask >> i) & 1 ? Orientation::Vertical : Orientation::Horizontal;
      assign(0);
    }
    std::sort(out_.begin(), out_.end());
    return out_;
  }

 private:
  // Candidates for end e of segment i: its boundary side, or any segment of
  // the other orientation lying on that side of p_i.
  std::vector<Attachment> candidates(int i, End e) const {
    const Orientation o = r_.orient[i];
    std::vector<Attachment> c{Attachment::boundary(boundary_side(o, e))};
    for (int j = 0; j < n_; ++j) {
      if (j == i || r_.orient[j] == o) continue;
      const std::int64_t there = fixed_coord(P_, r_.orient[j], j), here = along_coord(P_, o, i);
      if (e == End::Low ? there < here : there > here) c.push_back(Attachment::on_segment(j));
    }
    return c;
  }

  void assign(int slot) {
    if (slot == 2 * n_) {
      if (validate(r_, P_).ok()) out_.push_back(encode(r_));
      return;
    }
    const int i = slot / 2;
    const End e = slot % 2 ? End::High : End::Low;
    for (Attachment a : candidates(i, e)) {
      r_.end(i, e) = a;
      assign(slot + 1);
    }
  }

  const PointSet& P_;
  int n_;
  Rectangulation r_;
  std::vector<CanonicalKey> out_;
};

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t c = 1;
  for (int t = 1; t <= k; ++t) c = c * static_cast<std::uint64_t>(n - k + t) / static_cast<std::uint64_t>(t);
  return c;
}

}  // namespace

std::vector<CanonicalKey> brute_force_states(const PointSet& P) {
  if (P.size() > 8) throw Error(ErrorCode::LimitExceeded, "exhaustive generation is limited to 8 points");
  return BruteForce(P).run();
}

std::uint64_t baxter(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Baxter index must be nonnegative");
  if (n == 0) return 1;
  std::uint64_t sum = 0;
  for (int k = 1; k <= n; ++k) sum += binom(n + 1, k - 1) * binom(n + 1, k) * binom(n + 1, k + 1);
  return sum / (binom(n + 1, 1) * binom(n + 1, 2));
}

}  // namespace rectiflip
