#include "obl/mcg.hpp"

#include <algorithm>
#include <cstdlib>

#include "obl/drawing.hpp"

namespace obl {

namespace {

// Loop of the twist curve starting on chord q, either along its orientation
// or against it.
Word loop_from(const Word& c, int q, bool forward) {
  const int n = static_cast<int>(c.size());
  Word out;
  out.reserve(n);
  if (forward) {
    for (int i = 0; i < n; ++i) out.push_back(c[(q + i) % n]);
  } else {
    for (int i = 1; i <= n; ++i) out.push_back(c[((q - i) % n + n) % n].inverse());
  }
  return out;
}

// One twist (power +1 or -1) applied to strand 0 of a drawing with the twist
// curve as strand 1.
Word surgered(const Drawing& d, int sign) {
  const Strand& x = d.strands()[0];
  const Word& c = d.strands()[1].word;
  Word out;
  const int first = d.first_chord(0);
  const int n = static_cast<int>(x.word.size());
  for (int j = 0; j < d.chord_count(0); ++j) {
    // chord j follows letter j-1 (cyclically for closed strands)
    if (x.closed)
      out.push_back(x.word[(j + n - 1) % n]);
    else if (j > 0)
      out.push_back(x.word[j - 1]);
    for (int k : d.chords()[first + j].crossings) {
      const auto& cr = d.crossings()[k];
      const int other = cr.chord_a == first + j ? cr.chord_b : cr.chord_a;
      const int q = d.chords()[other].index;
      // Right-handed twists turn right onto the curve.
      const bool forward = d.sign_for(k, 0) * sign < 0;
      const Word loop = loop_from(c, q, forward);
      out.insert(out.end(), loop.begin(), loop.end());
    }
  }
  return out;
}

void check_twist_curve(const CombSurface& s, const ClosedCurve& c) {
  validate_on(s, c);
  if (!is_essential(c)) throw Error("twist curve must be essential");
}

}  // namespace

Arc twist(const CombSurface& s, const ClosedCurve& c, int power, const Arc& x) {
  check_twist_curve(s, c);
  validate_on(s, x);
  const ClosedCurve cc = canonicalize(c);
  Arc cur = canonicalize(x);
  for (int i = 0; i < std::abs(power); ++i) {
    Drawing d(s, {strand_of(cur), strand_of(cc, 1)});
    cur.word = reduce(surgered(d, power > 0 ? 1 : -1));
  }
  return cur;
}

ClosedCurve twist(const CombSurface& s, const ClosedCurve& c, int power, const ClosedCurve& x) {
  check_twist_curve(s, c);
  validate_on(s, x);
  const ClosedCurve cc = canonicalize(c);
  ClosedCurve cur = canonicalize(x);
  if (cur.word.empty()) return cur;
  for (int i = 0; i < std::abs(power); ++i) {
    Drawing d(s, {strand_of(cur), strand_of(cc, 1)});
    cur.word = cyclic_reduce(surgered(d, power > 0 ? 1 : -1));
  }
  return cur;
}

MappingClass::MappingClass(CombSurface surface, std::vector<TwistGenerator> word)
    : surface_(std::move(surface)), word_(std::move(word)) {
  for (TwistGenerator& g : word_) {
    if (g.power == 0) throw Error("twist power must be nonzero");
    check_twist_curve(surface_, g.curve);
    g.curve = canonicalize(g.curve);
  }
}

MappingClass MappingClass::twist(const CombSurface& s, const ClosedCurve& c, int power) {
  return MappingClass(s, {TwistGenerator{c, power}});
}

Arc MappingClass::apply(const Arc& x) const {
  validate_on(surface_, x);
  Arc cur = canonicalize(x);
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) cur = obl::twist(surface_, it->curve, it->power, cur);
  return cur;
}

ClosedCurve MappingClass::apply(const ClosedCurve& x) const {
  validate_on(surface_, x);
  ClosedCurve cur = canonicalize(x);
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) cur = obl::twist(surface_, it->curve, it->power, cur);
  return cur;
}

MappingClass MappingClass::on(const CombSurface& s) const { return MappingClass(s, word_); }

MappingClass MappingClass::after(const ClosedCurve& c, int power) const {
  std::vector<TwistGenerator> w;
  w.push_back({c, power});
  w.insert(w.end(), word_.begin(), word_.end());
  return MappingClass(surface_, std::move(w));
}

MappingClass compose(const MappingClass& phi, const MappingClass& psi) {
  if (phi.surface().band_count() != psi.surface().band_count()) throw Error("mapping classes live on different surfaces");
  std::vector<TwistGenerator> w = phi.word();
  w.insert(w.end(), psi.word().begin(), psi.word().end());
  return MappingClass(phi.surface(), std::move(w));
}

MappingClass invert(const MappingClass& phi) {
  std::vector<TwistGenerator> w;
  for (auto it = phi.word().rbegin(); it != phi.word().rend(); ++it) w.push_back({it->curve, -it->power});
  return MappingClass(phi.surface(), std::move(w));
}

MappingClass conjugate_twist(const MappingClass& psi, const ClosedCurve& L) {
  check_twist_curve(psi.surface(), L);
  return MappingClass::twist(psi.surface(), psi.apply(L), 1);
}

Basis standard_basis(const CombSurface& s) {
  Basis out{s, {}};
  for (int b = 0; b < s.band_count(); ++b) {
    int before = -1, after = -1;
    const int pos = out.surface.foot_position(b, -1);
    out.surface = out.surface.with_mark_after(pos - 1, &before);
    out.surface = out.surface.with_mark_after(pos + 1, &after);
    out.arcs.push_back(Arc{before, after, {}});
  }
  return out;
}

bool acts_equal(const MappingClass& a, const MappingClass& b, const std::vector<Arc>& basis) {
  return std::all_of(basis.begin(), basis.end(), [&](const Arc& x) { return a.apply(x) == b.apply(x); });
}

bool acts_equal(const MappingClass& a, const MappingClass& b) {
  const Basis basis = standard_basis(a.surface());
  return acts_equal(a.on(basis.surface), b.on(basis.surface), basis.arcs);
}

int band_crossings(const Word& w, int band) {
  return static_cast<int>(std::count_if(w.begin(), w.end(), [&](const Letter& l) { return l.band == band; }));
}

RefactorWitness refactor_stabilization(const MappingClass& phi, const ClosedCurve& s, const ClosedCurve& L,
                                       int handle_band) {
  if (band_crossings(cyclic_reduce(L.word), handle_band) != 0) throw Error("L crosses the stabilization handle");
  if (band_crossings(cyclic_reduce(s.word), handle_band) != 1) throw Error("s must cross the handle exactly once");
  const CombSurface& surf = phi.surface();
  RefactorWitness w;
  w.shifted = obl::twist(surf, L, -1, s);
  w.handle_crossings = band_crossings(w.shifted.word, handle_band);
  w.direct = phi.after(s, 1).after(L, -1);
  w.refactored = phi.after(L, -1).after(w.shifted, 1);
  return w;
}

}  // namespace obl
