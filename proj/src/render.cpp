#include <cmath>
#include <cstdio>

#include "obl/io.hpp"

namespace obl {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

struct Frame {
  double size, cx, cy, r;
  double px(double x) const { return cx + r * x; }
  double py(double y) const { return cy - r * y; }
  std::string at(double x, double y) const { return num(px(x)) + " " + num(py(y)); }
};

double angle_of(const Drawing::BoundaryPoint& p) {
  const double a = std::atan2(p.y, p.x);
  return a < 0 ? a + 2 * kPi : a;
}

// Counterclockwise circle arc from angle a to angle b.
std::string circle_arc(const Frame& f, double a, double b) {
  double span = b - a;
  while (span <= 0) span += 2 * kPi;
  if (span >= 2 * kPi - 1e-9) {
    const double m = a + kPi;
    return circle_arc(f, a, m) + " " + circle_arc(f, m, a + 2 * kPi - 1e-6);
  }
  return "M " + f.at(std::cos(a), std::sin(a)) + " A " + num(f.r) + " " + num(f.r) + " 0 " +
         (span > kPi ? "1" : "0") + " 0 " + f.at(std::cos(b), std::sin(b));
}

}  // namespace

std::string render_svg(const AugmentedOpenBook& book, const RenderOptions& opt) {
  std::vector<Strand> extra;
  for (const Arc& a : book.l_system.arcs) extra.push_back(strand_of(a, 2));
  for (const ClosedCurve& c : book.l_system.closed) extra.push_back(strand_of(c, 2));
  const RegionContext ctx(book, opt.system ? extra : std::vector<Strand>{});
  const Drawing& d = ctx.drawing();
  const int n = ctx.gamma_count();
  const Frame f{static_cast<double>(opt.size), opt.size / 2.0, opt.size / 2.0, opt.size * 0.38};
  const auto& pts = d.points();

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.size) + "\" height=\"" +
         std::to_string(opt.size) + "\" viewBox=\"0 0 " + std::to_string(opt.size) + " " +
         std::to_string(opt.size) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Feet are sides of the polygon carrying the band identifications; the
  // stretches between them are the boundary of the surface.
  std::vector<int> starts, ends;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    if (pts[i].kind == Drawing::BoundaryPoint::Kind::FootStart) starts.push_back(i);
    if (pts[i].kind == Drawing::BoundaryPoint::Kind::FootEnd) ends.push_back(i);
  }
  std::string boundary, feet, labels;
  const double half_step = kPi / std::max<std::size_t>(pts.size(), 1);
  if (starts.empty()) {
    boundary = circle_arc(f, 0, 2 * kPi);
  } else {
    const auto& ring = book.surface.ring();
    for (std::size_t k = 0; k < starts.size(); ++k) {
      const double a = angle_of(pts[starts[k]]) - half_step;
      const double b = angle_of(pts[ends[k]]) + half_step;
      feet += circle_arc(f, a, b) + " ";
      const RingItem& it = ring[pts[starts[k]].ring_pos];
      const double m = a + std::remainder(b - a, 2 * kPi) / 2;
      labels += "<text x=\"" + num(f.px(1.12 * std::cos(m))) + "\" y=\"" + num(f.py(1.12 * std::sin(m))) +
                "\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">h" + std::to_string(it.id) +
                (it.sign > 0 ? "+" : "-") + "</text>\n";
      const double next = angle_of(pts[starts[(k + 1) % starts.size()]]) - half_step;
      boundary += circle_arc(f, b, next) + " ";
    }
  }
  out += "<path d=\"" + boundary + "\" fill=\"none\" stroke=\"black\" stroke-width=\"5\"/>\n";
  if (!feet.empty())
    out += "<path d=\"" + feet + "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"3 3\"/>\n";

  // Γ as straight chords, φ(Γ) bowed, L dashed.
  std::string gamma, images, system;
  for (const Drawing::Chord& c : d.chords()) {
    const auto& p = pts[c.from];
    const auto& q = pts[c.to];
    if (c.strand < n) {
      gamma += "M " + f.at(p.x, p.y) + " L " + f.at(q.x, q.y) + " ";
    } else {
      const double bow = c.strand < 2 * n ? 0.08 : 0.0;
      const double mx = (p.x + q.x) / 2 - bow * (q.y - p.y);
      const double my = (p.y + q.y) / 2 + bow * (q.x - p.x);
      (c.strand < 2 * n ? images : system) += "M " + f.at(p.x, p.y) + " Q " + f.at(mx, my) + " " + f.at(q.x, q.y) + " ";
    }
  }
  if (!system.empty())
    out += "<path d=\"" + system + "\" fill=\"none\" stroke=\"#2a8a2a\" stroke-width=\"1\" stroke-dasharray=\"6 3\"/>\n";
  if (opt.images && !images.empty())
    out += "<path d=\"" + images + "\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"1\"/>\n";
  if (!gamma.empty()) out += "<path d=\"" + gamma + "\" fill=\"none\" stroke=\"#2040c0\" stroke-width=\"2.5\"/>\n";

  if (opt.labels && opt.images) {
    for (int k = 0; k < static_cast<int>(d.crossings().size()); ++k) {
      const auto& x = d.crossings()[k];
      const int a = d.strand_of_crossing_side(k, 0);
      const int b = d.strand_of_crossing_side(k, 1);
      if (std::min(a, b) >= n || std::max(a, b) < n || std::max(a, b) >= 2 * n) continue;
      const auto& ch = d.chords()[x.chord_a];
      const auto& p = pts[ch.from];
      const auto& q = pts[ch.to];
      const double px = p.x + x.ta * (q.x - p.x), py = p.y + x.ta * (q.y - p.y);
      const int sign = ctx.interior_point(k).sign;
      labels += "<text x=\"" + num(f.px(px) + 6) + "\" y=\"" + num(f.py(py) - 6) +
                "\" font-size=\"12\" fill=\"#202020\">" + (sign > 0 ? "+" : "&#8722;") + "</text>\n";
    }
    for (int i = 0; i < n; ++i)
      for (int mark : {book.gamma[i].start, book.gamma[i].end}) {
        const SignedPoint s = ctx.boundary_point(mark);
        for (const auto& p : pts)
          if (p.kind == Drawing::BoundaryPoint::Kind::End && p.strand == i &&
              (p.side == 0 ? book.gamma[i].start : book.gamma[i].end) == mark)
            labels += "<text x=\"" + num(f.px(1.07 * p.x)) + "\" y=\"" + num(f.py(1.07 * p.y)) +
                      "\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">" +
                      (s.sign > 0 ? "+" : "&#8722;") + "</text>\n";
      }
  }
  for (const auto& p : pts)
    if (p.kind == Drawing::BoundaryPoint::Kind::End)
      out += "<circle cx=\"" + num(f.px(p.x)) + "\" cy=\"" + num(f.py(p.y)) + "\" r=\"2.5\" fill=\"black\"/>\n";
  out += labels + "</svg>\n";
  return out;
}

}  // namespace obl
