#pragma once

#include <string>
#include <vector>

#include "convex.hpp"
#include "moves.hpp"
#include "point_set.hpp"
#include "rectangulation.hpp"

namespace rectiflip {

struct SvgOptions {
  /// When > 0, overlays the boxes of the bit-reversal set P_k shaded by saturation.
  int boxes_k = 0;
  double size = 600;  // longer side of the drawing in pixels
};

std::string render_svg(const PointSet& P, const Rectangulation& r, const SvgOptions& opts = {});
/// Infinite ends are clipped to a frame around the points and finite vertices.
std::string render_svg(const PlanarPointSet& P, const ConvexSubdivision& r, const SvgOptions& opts = {});
/// One frame for the start state and one after each operation.
std::vector<std::string> render_trace(const PointSet& P, const Rectangulation& start, const OpTrace& trace,
                                      const SvgOptions& opts = {});

}  // namespace rectiflip
