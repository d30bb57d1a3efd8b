#include "render_svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bitrev.hpp"
#include "errors.hpp"
#include "ops.hpp"

namespace rectiflip {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(double x0, double y0, double x1, double y1, double size) : x0_(x0), y1_(y1) {
    const double span = std::max({x1 - x0, y1 - y0, 1e-9});
    scale_ = size / span;
    w_ = (x1 - x0) * scale_ + 2 * kPad;
    h_ = (y1 - y0) * scale_ + 2 * kPad;
    body_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w_) + "\" height=\"" + num(h_) +
            "\" viewBox=\"0 0 " + num(w_) + " " + num(h_) + "\">\n";
  }

  double X(double x) const { return kPad + (x - x0_) * scale_; }
  double Y(double y) const { return kPad + (y1_ - y) * scale_; }

  void rect(double x0, double y0, double x1, double y1, const std::string& style) {
    body_ += "<rect x=\"" + num(X(x0)) + "\" y=\"" + num(Y(y1)) + "\" width=\"" + num((x1 - x0) * scale_) +
             "\" height=\"" + num((y1 - y0) * scale_) + "\" " + style + "/>\n";
  }
  void line(double x0, double y0, double x1, double y1, const std::string& style) {
    body_ += "<line x1=\"" + num(X(x0)) + "\" y1=\"" + num(Y(y0)) + "\" x2=\"" + num(X(x1)) + "\" y2=\"" +
             num(Y(y1)) + "\" " + style + "/>\n";
  }
  void dot(double x, double y) {
    body_ += "<circle cx=\"" + num(X(x)) + "\" cy=\"" + num(Y(y)) + "\" r=\"3\" fill=\"#c0392b\"/>\n";
  }
  std::string finish() { return body_ + "</svg>\n"; }

 private:
  static constexpr double kPad = 10;
  double x0_, y1_, scale_ = 1, w_ = 0, h_ = 0;
  std::string body_;
};

const char* kSegStyle = "stroke=\"#1f3a93\" stroke-width=\"2\"";

}  // namespace

std::string render_svg(const PointSet& P, const Rectangulation& r, const SvgOptions& opts) {
  const Rect& R = P.rect();
  Canvas c(static_cast<double>(R.x0), static_cast<double>(R.y0), static_cast<double>(R.x1),
           static_cast<double>(R.y1), opts.size);
  c.rect(R.x0, R.y0, R.x1, R.y1, "fill=\"white\" stroke=\"black\" stroke-width=\"2\"");
  if (opts.boxes_k > 0) {
    for (const Box& b : boxes(opts.boxes_k)) {
      const double sat = saturation(r, P, b).get_d();
      c.rect(b.x0, b.y0, b.x1, b.y1,
             "fill=\"#27ae60\" fill-opacity=\"" + num(0.05 + 0.4 * sat) + "\" stroke=\"#27ae60\" stroke-width=\"0.5\"");
    }
  }
  for (const SegmentGeometry& g : realize(r, P)) {
    const double f = static_cast<double>(g.fixed), lo = static_cast<double>(g.lo), hi = static_cast<double>(g.hi);
    if (g.orient == Orientation::Vertical) c.line(f, lo, f, hi, kSegStyle);
    else c.line(lo, f, hi, f, kSegStyle);
  }
  for (const Point& p : P.points()) c.dot(static_cast<double>(p.x), static_cast<double>(p.y));
  return c.finish();
}

std::string render_svg(const PlanarPointSet& P, const ConvexSubdivision& r, const SvgOptions& opts) {
  const auto segs = draw_geometry(r, P);
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool first = true;
  auto grow = [&](double x, double y) {
    if (first) x0 = x1 = x, y0 = y1 = y, first = false;
    x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
  };
  for (const Point& p : P.points()) grow(static_cast<double>(p.x), static_cast<double>(p.y));
  for (const auto& s : segs) {
    if (!s.inf_lo) grow(s.x0, s.y0);
    if (!s.inf_hi) grow(s.x1, s.y1);
  }
  const double m = 0.1 * std::max(x1 - x0, y1 - y0) + 1;
  x0 -= m, y0 -= m, x1 += m, y1 += m;
  Canvas c(x0, y0, x1, y1, opts.size);
  c.rect(x0, y0, x1, y1, "fill=\"white\" stroke=\"#999\" stroke-dasharray=\"4 4\"");
  // Walk from (x, y) along (dx, dy) to the frame.
  auto to_frame = [&](double x, double y, double dx, double dy) {
    double t = 1e300;
    if (dx > 0) t = std::min(t, (x1 - x) / dx);
    if (dx < 0) t = std::min(t, (x0 - x) / dx);
    if (dy > 0) t = std::min(t, (y1 - y) / dy);
    if (dy < 0) t = std::min(t, (y0 - y) / dy);
    return std::pair{x + t * dx, y + t * dy};
  };
  for (std::size_t i = 0; i < segs.size(); ++i) {
    auto s = segs[i];
    const double dx = static_cast<double>(r.dir[i].dx), dy = static_cast<double>(r.dir[i].dy);
    if (s.inf_lo) std::tie(s.x0, s.y0) = to_frame(static_cast<double>(P[i].x), static_cast<double>(P[i].y), -dx, -dy);
    if (s.inf_hi) std::tie(s.x1, s.y1) = to_frame(static_cast<double>(P[i].x), static_cast<double>(P[i].y), dx, dy);
    c.line(s.x0, s.y0, s.x1, s.y1, kSegStyle);
  }
  for (const Point& p : P.points()) c.dot(static_cast<double>(p.x), static_cast<double>(p.y));
  return c.finish();
}

std::vector<std::string> render_trace(const PointSet& P, const Rectangulation& start, const OpTrace& trace,
                                      const SvgOptions& opts) {
  std::vector<std::string> frames{render_svg(P, start, opts)};
  Rectangulation r = start;
  for (const TraceEntry& e : trace.entries) {
    apply_move(r, P, e.move);
    frames.push_back(render_svg(P, r, opts));
  }
  return frames;
}

}  // namespace rectiflip
