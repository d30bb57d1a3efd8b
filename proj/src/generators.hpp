#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "point_set.hpp"
#include "rectangulation.hpp"

namespace rectiflip {

using Rng = std::mt19937_64;

/// (i, i) for i = 1..n in [0, n+1]^2.
PointSet gen_diagonal(int n);
/// (i, pi(i)) for a seeded uniform permutation pi of 1..n, in [0, n+1]^2.
PointSet gen_random_permutation(int n, std::uint64_t seed);
/// (i, 0) for i = 1..n. Corectilinear, so only usable with convex subdivisions.
std::vector<Point> gen_collinear(int n);

/// `steps` uniformly chosen legal moves starting from r.
Rectangulation random_walk(Rectangulation r, const PointSet& P, std::size_t steps, Rng& rng);

/// Parsed generator spec such as "diagonal:100", "random-permutation:50:7",
/// "bitreversal:3:pad=10" or "collinear:20".
struct GenSpec {
  std::string family;
  std::int64_t size = 0;  // n, or k for bitreversal
  std::uint64_t seed = 0;
  std::int64_t pad = 0;
};

GenSpec parse_gen_spec(const std::string& spec);
/// Rectilinear families only; collinear is rejected with InvalidArgument.
PointSet generate(const GenSpec& spec);

}  // namespace rectiflip
