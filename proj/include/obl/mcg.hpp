#pragma once

#include <vector>

#include "obl/curves.hpp"
#include "obl/surface.hpp"

namespace obl {

/// Dehn twist about `curve` raised to `power`; positive powers twist to the
/// right.
struct TwistGenerator {
  ClosedCurve curve;
  int power = 1;
  friend bool operator==(const TwistGenerator&, const TwistGenerator&) = default;
};

/// Image of x under the twist about c, power times; canonical result.
Arc twist(const CombSurface& s, const ClosedCurve& c, int power, const Arc& x);
ClosedCurve twist(const CombSurface& s, const ClosedCurve& c, int power, const ClosedCurve& x);

/// Mapping class as a word of twist generators; the rightmost generator acts
/// first. Equality of mapping classes is extensional (see acts_equal).
class MappingClass {
public:
  MappingClass() = default;
  explicit MappingClass(CombSurface surface, std::vector<TwistGenerator> word = {});

  static MappingClass identity(const CombSurface& s) { return MappingClass(s); }
  static MappingClass twist(const CombSurface& s, const ClosedCurve& c, int power = 1);

  const CombSurface& surface() const { return surface_; }
  const std::vector<TwistGenerator>& word() const { return word_; }
  bool is_identity_word() const { return word_.empty(); }

  Arc apply(const Arc& x) const;
  ClosedCurve apply(const ClosedCurve& x) const;

  /// Same word read on another surface (the inclusion after attaching a
  /// handle, or the restriction after removing one).
  MappingClass on(const CombSurface& s) const;

  /// Returns the class τ_c^power ∘ this.
  MappingClass after(const ClosedCurve& c, int power) const;

  friend bool operator==(const MappingClass&, const MappingClass&) = default;

private:
  CombSurface surface_;
  std::vector<TwistGenerator> word_;
};

/// φ ∘ ψ.
MappingClass compose(const MappingClass& phi, const MappingClass& psi);
MappingClass invert(const MappingClass& phi);

/// τ_{ψ(L)}, which equals ψ τ_L ψ⁻¹.
MappingClass conjugate_twist(const MappingClass& psi, const ClosedCurve& L);

/// Surface carrying a mark just before and just after foot (b,-1) of every
/// band, with the co-core arcs between them. Cutting along the arcs leaves
/// one disc.
struct Basis {
  CombSurface surface;
  std::vector<Arc> arcs;
};
Basis standard_basis(const CombSurface& s);

/// True if both classes send every arc of the basis to the same arc.
bool acts_equal(const MappingClass& a, const MappingClass& b, const std::vector<Arc>& basis);
/// Convenience: compares on the standard basis of the common surface.
bool acts_equal(const MappingClass& a, const MappingClass& b);

/// Witness that τ_L⁻¹ τ_s φ = τ_{s'} τ_L⁻¹ φ with s' = τ_L⁻¹(s) crossing the
/// handle once again.
struct RefactorWitness {
  ClosedCurve shifted;
  int handle_crossings = 0;
  MappingClass direct;      // τ_L⁻¹ τ_s φ
  MappingClass refactored;  // τ_{s'} τ_L⁻¹ φ
};
RefactorWitness refactor_stabilization(const MappingClass& phi, const ClosedCurve& s, const ClosedCurve& L,
                                       int handle_band);

/// Number of letters of the word crossing the given band.
int band_crossings(const Word& w, int band);

}  // namespace obl
