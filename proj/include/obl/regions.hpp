#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obl/drawing.hpp"
#include "obl/openbook.hpp"

namespace obl {

/// Point of Γ ∩ φ(Γ): an interior crossing of γ_gamma with φ(γ_image), or
/// an endpoint of γ_gamma on ∂Σ (then image == gamma).
struct SignedPoint {
  enum class Kind { Interior, Boundary };
  Kind kind = Kind::Interior;
  int gamma = -1;
  int image = -1;
  int ordinal = 0;  // interior: index among crossings of the pair along γ; boundary: 0 start, 1 end
  int sign = 0;
  friend bool operator==(const SignedPoint&, const SignedPoint&) = default;
};

std::string point_text(const SignedPoint& p);

/// Face of Σ cut along Γ ∪ φ(Γ), with the corners met walking its boundary
/// with the face on the left.
struct Region {
  int face = -1;
  bool disc = false;
  bool touches_boundary = false;
  std::vector<SignedPoint> corners;
  /// Strand of the edge leaving each corner: i < n for γ_i, n + i for φ(γ_i).
  std::vector<int> edges;

  int sides() const { return static_cast<int>(corners.size()); }
  std::vector<SignedPoint> interior_corners() const;
  std::vector<SignedPoint> boundary_corners() const;
  /// Corner cycle rotated to start at its least corner text.
  std::vector<SignedPoint> canonical_corners() const;
};

struct RegionVerdict {
  bool found = false;
  std::optional<Region> region;
  bool boundary_based = false;  // some disc face has corners alternating on ∂Σ and inside, all ∂Σ ones positive
  bool isolated = false;        // that face has every interior point of Γ ∩ φ(Γ) as a corner
  bool unique = false;          // exactly one face qualifies
  bool fixed_arc = false;       // some arc of Γ is fixed, the verdict is negative
  std::optional<SignedPoint> stray_point;  // interior point off the candidate
  std::optional<Region> second;            // a second qualifying disc
};

/// How the ends of φ(Γ) sit against the ends of Γ. Positive puts each end of
/// φ(γ) just after the matching end of γ in the boundary orientation, so
/// every point of ∂Γ is positive, and keeps everything else in minimal
/// position. Minimal uses minimal position throughout.
enum class Placement { Positive, Minimal };

/// Drawing of Γ (strands 0..n-1) and φ(Γ) (strands n..2n-1), optionally with
/// extra strands appended after them.
class RegionContext {
public:
  explicit RegionContext(const AugmentedOpenBook& book, std::vector<Strand> extra = {},
                         Placement placement = Placement::Positive);
  /// Same, with φ(Γ) supplied (oriented as monodromy_images returns them).
  RegionContext(const AugmentedOpenBook& book, std::vector<Arc> images, std::vector<Strand> extra,
                Placement placement = Placement::Positive);

  const AugmentedOpenBook& book() const { return book_; }
  const Drawing& drawing() const { return drawing_; }
  const std::vector<Arc>& images() const { return images_; }
  int gamma_count() const { return static_cast<int>(book_.gamma.size()); }
  Placement placement() const { return placement_; }

  std::vector<Region> faces() const;
  /// Every point of Γ ∩ φ(Γ) in the interior, signed.
  std::vector<SignedPoint> interior_points() const;
  std::vector<SignedPoint> boundary_points() const;
  SignedPoint interior_point(int crossing) const;
  SignedPoint boundary_point(int mark) const;
  /// Arcs of Γ whose image is isotopic to themselves.
  std::vector<int> fixed_arcs() const;

private:
  AugmentedOpenBook book_;
  Placement placement_;
  std::vector<Arc> images_;
  Drawing drawing_;
};

std::vector<Region> complement_faces(const AugmentedOpenBook& book);

bool boundary_based(const Region& r);
bool isolated(const Region& r, const std::vector<SignedPoint>& interior_points);
bool isolated(const Region& r, const AugmentedOpenBook& book);

/// Throws if some point of ∂Γ is negative on an arc that is not fixed (only
/// possible with minimal placement).
RegionVerdict find_overtwisted_region(const AugmentedOpenBook& book, Placement placement = Placement::Positive);
/// Same, but a negative point of ∂Γ yields a negative verdict.
RegionVerdict find_overtwisted_region_nothrow(const AugmentedOpenBook& book,
                                              Placement placement = Placement::Positive);

/// Verdict for a book whose images φ(Γ) are already known.
RegionVerdict find_overtwisted_region(const AugmentedOpenBook& book, const std::vector<Arc>& images,
                                      Placement placement = Placement::Positive);

/// Verdict on an existing drawing.
RegionVerdict find_overtwisted_region(const RegionContext& ctx);

/// True if every point of ∂Γ is positive in minimal position.
bool boundary_points_positive(const AugmentedOpenBook& book);

/// Properness of an overtwisted region with respect to a curve system: some
/// negative corner y is such that every crossing of the system with
/// Γ ∪ φ(Γ) lies on an edge of Γ ∪ φ(Γ) ending at y. Returns the index of
/// the chosen corner among the region corners, or nothing.
std::optional<int> proper_corner(const Region& r, const AugmentedOpenBook& book, const CurveSystem& L);
bool is_proper(const Region& r, const AugmentedOpenBook& book, const CurveSystem& L);
std::optional<int> proper_corner(const Region& r, const AugmentedOpenBook& book, const std::vector<Arc>& images,
                                 const CurveSystem& L);
/// Every corner index that works for proper_corner.
std::vector<int> proper_corners(const Region& r, const AugmentedOpenBook& book, const std::vector<Arc>& images,
                                const CurveSystem& L);

/// Signed interior intersections of two oriented arc lists drawn together.
std::vector<SignedPoint> signed_interior_intersections(const CombSurface& s, const std::vector<Arc>& first,
                                                       const std::vector<Arc>& second);
/// Sign at a mark where an end of γ and an end of δ sit next to each other:
/// positive if δ's end follows γ's in the boundary orientation.
int boundary_point_sign(const CombSurface& s, const Arc& gamma, const Arc& delta, int mark);

/// Minimal number of interior crossings of two arcs or closed curves.
int geometric_intersection(const CombSurface& s, const Arc& a, const Arc& b);
int geometric_intersection(const CombSurface& s, const Arc& a, const ClosedCurve& b);
int geometric_intersection(const CombSurface& s, const ClosedCurve& a, const ClosedCurve& b);

}  // namespace obl
