#pragma once

#include <optional>
#include <vector>

#include "obl/curves.hpp"
#include "obl/mcg.hpp"
#include "obl/surface.hpp"

namespace obl {

/// Stabilization of an open book along `sigma`: a band is attached at the
/// endpoints of sigma and the monodromy is composed (on the left) with the
/// twist about s_curve = sigma ∪ core, positively for sign = +1.
struct StabilizationMove {
  Arc sigma;
  HandleAttachment handle;
  ClosedCurve s_curve;
  int sign = 1;
  friend bool operator==(const StabilizationMove&, const StabilizationMove&) = default;
};

/// Open book (Σ, φ) with an oriented arc collection Γ, an optional curve
/// system L, and the list of stabilizations that created bands.
struct AugmentedOpenBook {
  CombSurface surface;
  MappingClass monodromy;
  std::vector<Arc> gamma;
  CurveSystem l_system;
  std::vector<StabilizationMove> history;

  AugmentedOpenBook() = default;
  AugmentedOpenBook(CombSurface s, MappingClass phi, std::vector<Arc> g = {}, CurveSystem l = {});

  /// Checks Γ (distinct marks, disjoint simple arcs) and L against the surface.
  void validate() const;

  friend bool operator==(const AugmentedOpenBook&, const AugmentedOpenBook&) = default;
};

/// φ(γ) with the opposite orientation: it runs from γ's end back to its start.
Arc monodromy_image(const AugmentedOpenBook& book, const Arc& gamma);
/// Images of all of Γ, oriented as above.
std::vector<Arc> monodromy_images(const AugmentedOpenBook& book);

/// Marks used by arcs of Γ or L.
std::vector<int> occupied_marks(const AugmentedOpenBook& book);

/// Stabilizes along sigma (sign = -1 gives a negative stabilization).
std::pair<AugmentedOpenBook, StabilizationMove> stabilize(const AugmentedOpenBook& book, const Arc& sigma,
                                                          int sign = 1);

/// Removes the band whose co-core is gamma; gamma must be isotopic to the
/// co-core of a band created by a recorded stabilization whose twist can
/// be moved to the far left of the monodromy word.
AugmentedOpenBook destabilize(const AugmentedOpenBook& book, const Arc& gamma);

/// Index of the recorded stabilization whose band has gamma as co-core, if
/// gamma is such a co-core.
std::optional<std::size_t> cocore_move(const AugmentedOpenBook& book, const Arc& gamma);

/// True if gamma runs once across the band, parallel to one of its feet.
bool is_cocore(const CombSurface& s, const Arc& gamma, int band);

/// Composes the monodromy with the positive twist about the single closed
/// curve of L.
AugmentedOpenBook legendrian_surgery(const AugmentedOpenBook& book);

/// Records reading of a monodromy word as a stabilization: if the leftmost
/// twist is about a curve crossing some band exactly once while every other
/// curve of the word, of Γ and of L avoids that band, returns the move.
std::optional<StabilizationMove> recognize_stabilization(const AugmentedOpenBook& book);

/// Books built by stabilizing the disc once along a boundary-parallel arc.
AugmentedOpenBook hopf_annulus(int sign);

}  // namespace obl
