#include "generators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bitrev.hpp"
#include "errors.hpp"
#include "ops.hpp"

namespace rectiflip {

namespace {

void require_positive(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "generator size must be positive");
}

}  // namespace

PointSet gen_diagonal(int n) {
  require_positive(n);
  std::vector<Point> pts;
  for (int i = 1; i <= n; ++i) pts.push_back({i, i});
  return PointSet::create(std::move(pts), Rect{0, 0, n + 1, n + 1});
}

PointSet gen_random_permutation(int n, std::uint64_t seed) {
  require_positive(n);
  std::vector<std::int64_t> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  Rng rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Point> pts;
  for (int i = 1; i <= n; ++i) pts.push_back({i, perm[i - 1]});
  return PointSet::create(std::move(pts), Rect{0, 0, n + 1, n + 1});
}

std::vector<Point> gen_collinear(int n) {
  require_positive(n);
  std::vector<Point> pts;
  for (int i = 1; i <= n; ++i) pts.push_back({i, 0});
  return pts;
}

Rectangulation random_walk(Rectangulation r, const PointSet& P, std::size_t steps, Rng& rng) {
  for (std::size_t s = 0; s < steps; ++s) {
    auto moves = legal_moves(r, P);
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    apply_move(r, P, moves[pick(rng)]);
  }
  return r;
}

GenSpec parse_gen_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  if (parts.size() < 2) throw Error(ErrorCode::Parse, "generator spec needs family:size, got '" + spec + "'");
  GenSpec g;
  g.family = parts[0];
  auto number = [&](const std::string& s) -> std::int64_t {
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad number '" + s + "' in generator spec '" + spec + "'");
    }
  };
  g.size = number(parts[1]);
  for (std::size_t t = 2; t < parts.size(); ++t) {
    const std::string& p = parts[t];
    if (p.rfind("pad=", 0) == 0) g.pad = number(p.substr(4));
    else if (p.rfind("seed=", 0) == 0) g.seed = static_cast<std::uint64_t>(number(p.substr(5)));
    else g.seed = static_cast<std::uint64_t>(number(p));
  }
  static const char* known[] = {"diagonal", "random-permutation", "bitreversal", "collinear"};
  if (std::find(std::begin(known), std::end(known), g.family) == std::end(known)) {
    throw Error(ErrorCode::Parse, "unknown generator family '" + g.family + "'");
  }
  if (g.size < (g.family == "bitreversal" ? 0 : 1)) {
    throw Error(ErrorCode::InvalidArgument, "generator size out of range in '" + spec + "'");
  }
  return g;
}

PointSet generate(const GenSpec& spec) {
  if (spec.family == "diagonal") return gen_diagonal(static_cast<int>(spec.size));
  if (spec.family == "random-permutation") return gen_random_permutation(static_cast<int>(spec.size), spec.seed);
  if (spec.family == "bitreversal") return gen_bit_reversal(static_cast<int>(spec.size), spec.pad);
  throw Error(ErrorCode::InvalidArgument, "family '" + spec.family + "' has no rectangulation instance");
}

}  // namespace rectiflip
