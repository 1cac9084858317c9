#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obl/surface.hpp"

namespace obl {

/// One signed crossing of a cut arc: band `band` traversed in direction `dir`.
struct Letter {
  int band = 0;
  int dir = 1;
  Letter inverse() const { return {band, -dir}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word inverse(const Word& w);
/// Free reduction (removes immediate backtracking).
Word reduce(Word w);
/// Free reduction followed by cyclic reduction.
Word cyclic_reduce(Word w);
bool is_reduced(const Word& w);
/// Lexicographically least rotation.
Word least_rotation(const Word& w);

/// Oriented properly embedded arc from mark `start` to mark `end`.
struct Arc {
  int start = -1;
  int end = -1;
  Word word;

  Arc reversed() const;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Oriented closed curve, stored as a cyclically reduced word.
struct ClosedCurve {
  Word word;
  friend bool operator==(const ClosedCurve&, const ClosedCurve&) = default;
};

/// Disjoint arcs and closed curves, with minimal position as an invariant
/// of the encoding (reduced words, distinct marks).
struct CurveSystem {
  std::vector<Arc> arcs;
  std::vector<ClosedCurve> closed;
  bool empty() const { return arcs.empty() && closed.empty(); }
  friend bool operator==(const CurveSystem&, const CurveSystem&) = default;
};

enum class Sign : int { Negative = -1, Positive = 1 };

Arc canonicalize(Arc a);
ClosedCurve canonicalize(ClosedCurve c);

/// Equality of isotopy classes: arcs rel endpoints (same orientation), closed
/// curves as unoriented free homotopy classes.
bool isotopic(const Arc& a, const Arc& b);
bool isotopic(const ClosedCurve& a, const ClosedCurve& b);
/// Equality as oriented closed curves.
bool isotopic_oriented(const ClosedCurve& a, const ClosedCurve& b);

/// Non-null-homotopic. Boundary-parallel curves count as essential twist
/// curves (their twists are nontrivial rel boundary).
bool is_essential(const ClosedCurve& c);

/// True if the curve's word is a proper power (never simple).
bool is_proper_power(const Word& w);

/// Checks that every band and mark referenced exists on the surface.
void validate_on(const CombSurface& s, const Arc& a);
void validate_on(const CombSurface& s, const ClosedCurve& c);

std::string word_text(const Word& w);
Word parse_word(const std::string& text);

}  // namespace obl
