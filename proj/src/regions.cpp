#include "obl/regions.hpp"

#include <algorithm>
#include <map>

namespace obl {

namespace {

std::vector<Strand> region_strands(const AugmentedOpenBook& book, const std::vector<Arc>& images,
                                   std::vector<Strand> extra, Placement placement) {
  std::vector<Strand> out;
  for (const Arc& g : book.gamma) out.push_back(strand_of(g, 0));
  for (std::size_t i = 0; i < images.size(); ++i) {
    Strand s = strand_of(images[i], 1);
    if (placement == Placement::Positive) s.pin_start = s.pin_end = static_cast<int>(i);
    out.push_back(std::move(s));
  }
  for (Strand& s : extra) out.push_back(std::move(s));
  return out;
}

std::vector<Strand> curve_system_strands(const CurveSystem& L) {
  std::vector<Strand> out;
  for (const Arc& a : L.arcs) out.push_back(strand_of(a, 2));
  for (const ClosedCurve& c : L.closed) out.push_back(strand_of(c, 2));
  return out;
}

}  // namespace

std::string point_text(const SignedPoint& p) {
  std::string s = p.kind == SignedPoint::Kind::Interior
                      ? "x" + std::to_string(p.gamma) + "." + std::to_string(p.image) + "." + std::to_string(p.ordinal)
                      : "b" + std::to_string(p.gamma) + (p.ordinal == 0 ? "-" : "+");
  return s + (p.sign > 0 ? "(+)" : "(-)");
}

std::vector<SignedPoint> Region::interior_corners() const {
  std::vector<SignedPoint> out;
  for (const SignedPoint& p : corners)
    if (p.kind == SignedPoint::Kind::Interior) out.push_back(p);
  return out;
}

std::vector<SignedPoint> Region::boundary_corners() const {
  std::vector<SignedPoint> out;
  for (const SignedPoint& p : corners)
    if (p.kind == SignedPoint::Kind::Boundary) out.push_back(p);
  return out;
}

std::vector<SignedPoint> Region::canonical_corners() const {
  if (corners.empty()) return corners;
  std::vector<std::string> text;
  for (const SignedPoint& p : corners) text.push_back(point_text(p));
  std::size_t best = 0;
  const std::size_t n = corners.size();
  auto rot = [&](std::size_t r) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(text[(r + i) % n]);
    return v;
  };
  for (std::size_t r = 1; r < n; ++r)
    if (rot(r) < rot(best)) best = r;
  std::vector<SignedPoint> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(corners[(best + i) % n]);
  return out;
}

RegionContext::RegionContext(const AugmentedOpenBook& book, std::vector<Strand> extra, Placement placement)
    : book_(book),
      placement_(placement),
      images_(monodromy_images(book)),
      drawing_(book.surface, region_strands(book, images_, std::move(extra), placement)) {}

RegionContext::RegionContext(const AugmentedOpenBook& book, std::vector<Arc> images, std::vector<Strand> extra,
                             Placement placement)
    : book_(book),
      placement_(placement),
      images_(std::move(images)),
      drawing_(book.surface, region_strands(book, images_, std::move(extra), placement)) {
  if (images_.size() != book.gamma.size()) throw Error("one image per arc of Γ is required");
}

SignedPoint RegionContext::interior_point(int crossing) const {
  const int n = gamma_count();
  int a = drawing_.strand_of_crossing_side(crossing, 0);
  int b = drawing_.strand_of_crossing_side(crossing, 1);
  if (a >= n) std::swap(a, b);
  if (!(a < n && b >= n && b < 2 * n))
    throw Error("crossing of strands " + std::to_string(a) + " and " + std::to_string(b) + " is not a point of Γ ∩ φ(Γ)");
  SignedPoint p;
  p.kind = SignedPoint::Kind::Interior;
  p.gamma = a;
  p.image = b - n;
  p.sign = drawing_.sign_for(crossing, a);
  for (int k : drawing_.crossings_along(a)) {
    if (k == crossing) break;
    const int o = drawing_.strand_of_crossing_side(k, 0) == a ? drawing_.strand_of_crossing_side(k, 1)
                                                                : drawing_.strand_of_crossing_side(k, 0);
    if (o == b) ++p.ordinal;
  }
  return p;
}

SignedPoint RegionContext::boundary_point(int mark) const {
  const int n = gamma_count();
  for (int i = 0; i < n; ++i) {
    const Arc& g = book_.gamma[i];
    if (g.start != mark && g.end != mark) continue;
    SignedPoint p;
    p.kind = SignedPoint::Kind::Boundary;
    p.gamma = i;
    p.image = i;
    p.ordinal = g.start == mark ? 0 : 1;
    const auto ends = drawing_.ends_at(mark);
    // Ends of γ_i and φ(γ_i) only; a fixed image is a parallel push-off.
    int gi = -1, hi = -1;
    for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
      if (ends[e].first == i) gi = e;
      if (ends[e].first == n + i) hi = e;
    }
    p.sign = hi > gi ? 1 : -1;
    return p;
  }
  throw Error("mark is not an endpoint of Γ");
}

std::vector<SignedPoint> RegionContext::interior_points() const {
  std::vector<SignedPoint> out;
  const int n = gamma_count();
  for (int k = 0; k < static_cast<int>(drawing_.crossings().size()); ++k) {
    const int a = drawing_.strand_of_crossing_side(k, 0), b = drawing_.strand_of_crossing_side(k, 1);
    if (std::min(a, b) < n && std::max(a, b) >= n && std::max(a, b) < 2 * n) out.push_back(interior_point(k));
  }
  return out;
}

std::vector<SignedPoint> RegionContext::boundary_points() const {
  std::vector<SignedPoint> out;
  for (const Arc& g : book_.gamma) {
    out.push_back(boundary_point(g.start));
    out.push_back(boundary_point(g.end));
  }
  return out;
}

std::vector<int> RegionContext::fixed_arcs() const {
  std::vector<int> out;
  for (int i = 0; i < gamma_count(); ++i)
    if (isotopic(images_[i].reversed(), book_.gamma[i])) out.push_back(i);
  return out;
}

std::vector<Region> RegionContext::faces() const {
  const int n = gamma_count();
  std::vector<Region> out;
  const auto faces = drawing_.faces();
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    const Face& face = faces[f];
    Region r;
    r.face = f;
    r.disc = face.is_disc();
    for (const FaceCycle& c : face.cycles) r.touches_boundary = r.touches_boundary || c.touches_boundary;
    if (!face.cycles.empty()) {
      for (const FaceCorner& c : face.cycles.front().corners) {
        if (c.kind == FaceCorner::Kind::Interior) {
          const int a = drawing_.strand_of_crossing_side(c.crossing, 0), b = drawing_.strand_of_crossing_side(c.crossing, 1);
          if (std::max(a, b) >= 2 * n) continue;  // crossing with an extra strand
          r.corners.push_back(interior_point(c.crossing));
        } else {
          r.corners.push_back(boundary_point(c.mark));
        }
        r.edges.push_back(c.strand_out);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Region> complement_faces(const AugmentedOpenBook& book) { return RegionContext(book).faces(); }

bool boundary_based(const Region& r) {
  const int m = r.sides();
  if (!r.disc || r.touches_boundary || m < 2 || m % 2 != 0) return false;
  for (int i = 0; i < m; ++i) {
    const SignedPoint& a = r.corners[i];
    const SignedPoint& b = r.corners[(i + 1) % m];
    if ((a.kind == SignedPoint::Kind::Boundary) == (b.kind == SignedPoint::Kind::Boundary)) return false;
    if (a.kind == SignedPoint::Kind::Boundary && a.sign < 0) return false;
  }
  return true;
}

bool isolated(const Region& r, const std::vector<SignedPoint>& interior_points) {
  return std::all_of(interior_points.begin(), interior_points.end(), [&](const SignedPoint& p) {
    return std::find(r.corners.begin(), r.corners.end(), p) != r.corners.end();
  });
}

bool isolated(const Region& r, const AugmentedOpenBook& book) { return isolated(r, RegionContext(book).interior_points()); }

bool boundary_points_positive(const AugmentedOpenBook& book) {
  const RegionContext ctx(book, {}, Placement::Minimal);
  const auto pts = ctx.boundary_points();
  return std::all_of(pts.begin(), pts.end(), [](const SignedPoint& p) { return p.sign > 0; });
}

namespace {

RegionVerdict evaluate(const RegionContext& ctx, bool throw_on_negative) {
  const Placement placement = ctx.placement();
  RegionVerdict v;
  const auto fixed = placement == Placement::Minimal ? ctx.fixed_arcs() : std::vector<int>{};
  for (const SignedPoint& p : ctx.boundary_points()) {
    if (p.sign > 0) continue;
    if (std::find(fixed.begin(), fixed.end(), p.gamma) != fixed.end()) continue;
    if (throw_on_negative) throw Error("point " + point_text(p) + " of ∂Γ is negative");
    return v;
  }
  if (!fixed.empty()) {
    v.fixed_arc = true;
    return v;
  }
  const auto interior = ctx.interior_points();
  std::vector<Region> candidates, qualifying;
  for (Region& r : ctx.faces()) {
    if (!boundary_based(r)) continue;
    const auto corners = r.interior_corners();
    if (!std::all_of(corners.begin(), corners.end(), [](const SignedPoint& p) { return p.sign < 0; })) continue;
    candidates.push_back(r);
    if (isolated(r, interior)) qualifying.push_back(r);
  }
  v.boundary_based = !candidates.empty();
  v.isolated = !qualifying.empty();
  v.unique = qualifying.size() == 1;
  if (!candidates.empty() && qualifying.empty()) {
    for (const SignedPoint& p : interior)
      if (std::find(candidates.front().corners.begin(), candidates.front().corners.end(), p) ==
          candidates.front().corners.end()) {
        v.stray_point = p;
        break;
      }
  }
  if (qualifying.size() > 1) v.second = qualifying[1];
  if (v.unique) {
    v.found = true;
    v.region = qualifying.front();
  } else if (!qualifying.empty()) {
    v.region = qualifying.front();
  }
  return v;
}

}  // namespace

RegionVerdict find_overtwisted_region(const AugmentedOpenBook& book, Placement placement) {
  if (book.gamma.empty()) return {};
  return evaluate(RegionContext(book, {}, placement), true);
}
RegionVerdict find_overtwisted_region_nothrow(const AugmentedOpenBook& book, Placement placement) {
  if (book.gamma.empty()) return {};
  return evaluate(RegionContext(book, {}, placement), false);
}
RegionVerdict find_overtwisted_region(const RegionContext& ctx) {
  if (ctx.gamma_count() == 0) return {};
  return evaluate(ctx, true);
}

RegionVerdict find_overtwisted_region(const AugmentedOpenBook& book, const std::vector<Arc>& images,
                                      Placement placement) {
  if (book.gamma.empty()) return {};
  return evaluate(RegionContext(book, images, {}, placement), true);
}

std::optional<int> proper_corner(const Region& r, const AugmentedOpenBook& book, const CurveSystem& L) {
  return proper_corner(r, book, monodromy_images(book), L);
}

std::optional<int> proper_corner(const Region& r, const AugmentedOpenBook& book, const std::vector<Arc>& images,
                                 const CurveSystem& L) {
  const auto all = proper_corners(r, book, images, L);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<int> proper_corners(const Region& r, const AugmentedOpenBook& book, const std::vector<Arc>& images,
                                const CurveSystem& L) {
  const auto neg = r.interior_corners();
  if (neg.empty()) throw Error("region has no interior corners");
  std::vector<int> out;
  if (L.empty()) {
    for (int i = 0; i < r.sides(); ++i)
      if (r.corners[i].kind == SignedPoint::Kind::Interior && r.corners[i].sign < 0) out.push_back(i);
    return out;
  }
  const RegionContext ctx(book, images, curve_system_strands(L));
  const Drawing& d = ctx.drawing();
  const int n = ctx.gamma_count();
  const int g_strands = 2 * n;

  // G-vertices along each strand of Γ ∪ φ(Γ), in order.
  std::vector<std::vector<int>> vertices(g_strands);
  std::map<std::vector<int>, int> crossing_of;  // (gamma, image, ordinal) -> crossing
  for (int t = 0; t < g_strands; ++t)
    for (int k : d.crossings_along(t)) {
      const int a = d.strand_of_crossing_side(k, 0), b = d.strand_of_crossing_side(k, 1);
      if (std::max(a, b) < g_strands) vertices[t].push_back(k);
    }
  for (int k = 0; k < static_cast<int>(d.crossings().size()); ++k) {
    const int a = d.strand_of_crossing_side(k, 0), b = d.strand_of_crossing_side(k, 1);
    if (std::max(a, b) < g_strands) {
      const SignedPoint p = ctx.interior_point(k);
      crossing_of[{p.gamma, p.image, p.ordinal}] = k;
    }
  }

  // Crossings of L with G: (G strand, edge index along it).
  std::vector<std::pair<int, int>> hits;
  for (int t = 0; t < g_strands; ++t) {
    int edge = 0;
    for (int k : d.crossings_along(t)) {
      const int a = d.strand_of_crossing_side(k, 0), b = d.strand_of_crossing_side(k, 1);
      if (std::max(a, b) < g_strands)
        ++edge;
      else
        hits.push_back({t, edge});
    }
  }

  for (int i = 0; i < r.sides(); ++i) {
    const SignedPoint& y = r.corners[i];
    if (y.kind != SignedPoint::Kind::Interior || y.sign > 0) continue;
    const auto it = crossing_of.find({y.gamma, y.image, y.ordinal});
    if (it == crossing_of.end()) continue;
    const int k = it->second;
    const int g = y.gamma, h = n + y.image;
    auto index_on = [&](int t) {
      return static_cast<int>(std::find(vertices[t].begin(), vertices[t].end(), k) - vertices[t].begin());
    };
    const int pg = index_on(g), ph = index_on(h);
    const bool ok = std::all_of(hits.begin(), hits.end(), [&](const std::pair<int, int>& hit) {
      if (hit.first == g) return hit.second == pg || hit.second == pg + 1;
      if (hit.first == h) return hit.second == ph || hit.second == ph + 1;
      return false;
    });
    if (ok) out.push_back(i);
  }
  return out;
}

bool is_proper(const Region& r, const AugmentedOpenBook& book, const CurveSystem& L) {
  return proper_corner(r, book, L).has_value();
}

std::vector<SignedPoint> signed_interior_intersections(const CombSurface& s, const std::vector<Arc>& first,
                                                       const std::vector<Arc>& second) {
  std::vector<Strand> strands;
  for (const Arc& a : first) strands.push_back(strand_of(canonicalize(a), 0));
  for (const Arc& a : second) strands.push_back(strand_of(canonicalize(a), 1));
  const Drawing d(s, strands);
  const int n = static_cast<int>(first.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d.crossing_count(i, j) != 0) throw Error("first collection is not disjoint");
  std::vector<SignedPoint> out;
  for (int k = 0; k < static_cast<int>(d.crossings().size()); ++k) {
    int a = d.strand_of_crossing_side(k, 0), b = d.strand_of_crossing_side(k, 1);
    if (a >= n) std::swap(a, b);
    if (a >= n || b < n) continue;
    SignedPoint p;
    p.gamma = a;
    p.image = b - n;
    p.sign = d.sign_for(k, a);
    for (int c : d.crossings_along(a)) {
      if (c == k) break;
      const int o = d.strand_of_crossing_side(c, 0) == a ? d.strand_of_crossing_side(c, 1) : d.strand_of_crossing_side(c, 0);
      if (o == b) ++p.ordinal;
    }
    out.push_back(p);
  }
  return out;
}

int boundary_point_sign(const CombSurface& s, const Arc& gamma, const Arc& delta, int mark) {
  if (gamma.start != mark && gamma.end != mark) throw Error("mark is not an endpoint of γ");
  const int other = (delta.start == mark || delta.end == mark) ? mark : -1;
  if (other == mark) {
    const Drawing d(s, {strand_of(canonicalize(gamma)), strand_of(canonicalize(delta), 1)});
    const auto ends = d.ends_at(mark);
    int gi = -1, di = -1;
    for (int e = 0; e < static_cast<int>(ends.size()); ++e) (ends[e].first == 0 ? gi : di) = e;
    return di > gi ? 1 : -1;
  }
  // δ ends at a neighbouring mark.
  const int n = static_cast<int>(s.ring().size());
  const int p = s.mark_position(mark);
  for (int e : {delta.start, delta.end}) {
    const int q = s.mark_position(e);
    if (q == (p + 1) % n) return 1;
    if (q == (p + n - 1) % n) return -1;
  }
  throw Error("endpoints are not adjacent");
}

int geometric_intersection(const CombSurface& s, const Arc& a, const Arc& b) {
  return Drawing(s, {strand_of(canonicalize(a)), strand_of(canonicalize(b), 1)}).crossing_count(0, 1);
}

int geometric_intersection(const CombSurface& s, const Arc& a, const ClosedCurve& b) {
  if (canonicalize(b).word.empty()) return 0;
  return Drawing(s, {strand_of(canonicalize(a)), strand_of(canonicalize(b), 1)}).crossing_count(0, 1);
}

int geometric_intersection(const CombSurface& s, const ClosedCurve& a, const ClosedCurve& b) {
  if (canonicalize(a).word.empty() || canonicalize(b).word.empty()) return 0;
  return Drawing(s, {strand_of(canonicalize(a)), strand_of(canonicalize(b), 1)}).crossing_count(0, 1);
}

}  // namespace obl
