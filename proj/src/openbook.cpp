#include "obl/openbook.hpp"

#include <algorithm>
#include <set>

#include "obl/drawing.hpp"

namespace obl {

namespace {

Word renumber_without(const Word& w, int band) {
  Word out;
  for (Letter l : w) {
    if (l.band == band) throw Error("word crosses the band being removed");
    if (l.band > band) --l.band;
    out.push_back(l);
  }
  return out;
}

bool disjoint(const CombSurface& s, const ClosedCurve& a, const ClosedCurve& b) {
  Drawing d(s, {strand_of(canonicalize(a)), strand_of(canonicalize(b), 1)});
  return d.crossing_count(0, 1) == 0;
}

}  // namespace

AugmentedOpenBook::AugmentedOpenBook(CombSurface s, MappingClass phi, std::vector<Arc> g, CurveSystem l)
    : surface(std::move(s)), monodromy(std::move(phi)), gamma(std::move(g)), l_system(std::move(l)) {
  monodromy = monodromy.on(surface);
  for (Arc& a : gamma) a = canonicalize(a);
  for (Arc& a : l_system.arcs) a = canonicalize(a);
  for (ClosedCurve& c : l_system.closed) c = canonicalize(c);
  validate();
}

void AugmentedOpenBook::validate() const {
  std::set<int> used;
  for (const Arc& a : gamma) {
    validate_on(surface, a);
    if (!used.insert(a.start).second || !used.insert(a.end).second) throw Error("arcs of Γ must have distinct endpoints");
  }
  for (const Arc& a : l_system.arcs) {
    validate_on(surface, a);
    if (!used.insert(a.start).second || !used.insert(a.end).second)
      throw Error("arcs of L must have endpoints distinct from each other and from Γ");
  }
  for (const ClosedCurve& c : l_system.closed) validate_on(surface, c);
  if (!gamma.empty()) {
    std::vector<Strand> strands;
    for (const Arc& a : gamma) strands.push_back(strand_of(a));
    Drawing d(surface, strands);
    if (!d.crossings().empty()) throw Error("arcs of Γ must be disjoint and embedded");
  }
  if (!l_system.empty()) {
    std::vector<Strand> strands;
    for (const Arc& a : l_system.arcs) strands.push_back(strand_of(a));
    for (const ClosedCurve& c : l_system.closed) {
      if (c.word.empty()) throw Error("closed curves of L must be essential");
      strands.push_back(strand_of(c));
    }
    Drawing d(surface, strands);
    if (!d.crossings().empty()) throw Error("components of L must be disjoint and embedded");
  }
}

Arc monodromy_image(const AugmentedOpenBook& book, const Arc& gamma) {
  if (std::find(book.gamma.begin(), book.gamma.end(), canonicalize(gamma)) == book.gamma.end())
    throw Error("arc is not an element of Γ");
  return book.monodromy.apply(gamma).reversed();
}

std::vector<Arc> monodromy_images(const AugmentedOpenBook& book) {
  std::vector<Arc> out;
  for (const Arc& g : book.gamma) out.push_back(book.monodromy.apply(g).reversed());
  return out;
}

std::vector<int> occupied_marks(const AugmentedOpenBook& book) {
  std::vector<int> out;
  for (const Arc& a : book.gamma) out.insert(out.end(), {a.start, a.end});
  for (const Arc& a : book.l_system.arcs) out.insert(out.end(), {a.start, a.end});
  return out;
}

std::pair<AugmentedOpenBook, StabilizationMove> stabilize(const AugmentedOpenBook& book, const Arc& sigma, int sign) {
  if (sign != 1 && sign != -1) throw Error("stabilization sign must be +1 or -1");
  validate_on(book.surface, sigma);
  const auto used = occupied_marks(book);
  if (std::find(used.begin(), used.end(), sigma.start) != used.end() ||
      std::find(used.begin(), used.end(), sigma.end) != used.end())
    throw Error("stabilizing arc ends on an endpoint of Γ or L");
  const Arc sig = canonicalize(sigma);
  if (sig.start == sig.end) throw Error("stabilizing arc needs two distinct endpoints");
  if (!sig.word.empty() && Drawing(book.surface, {strand_of(sig)}).self_crossings(0) != 0)
    throw Error("stabilizing arc is not embedded");
  auto [surface, handle] = attach_handle(book.surface, sig.start, sig.end);
  Word s = sig.word;
  s.push_back({handle.core, 1});
  StabilizationMove move{sig, handle, ClosedCurve{cyclic_reduce(s)}, sign};

  AugmentedOpenBook out = book;
  out.surface = surface;
  out.monodromy = book.monodromy.on(surface).after(move.s_curve, sign);
  out.history.push_back(move);
  return {out, move};
}

bool is_cocore(const CombSurface& s, const Arc& gamma, int band) {
  if (!reduce(gamma.word).empty()) return false;
  const auto& ring = s.ring();
  const int n = static_cast<int>(ring.size());
  const int ps = s.mark_position(gamma.start), pe = s.mark_position(gamma.end);
  for (int sign : {-1, 1}) {
    const int f = s.foot_position(band, sign);
    const int before = (f + n - 1) % n, after = (f + 1) % n;
    if ((ps == before && pe == after) || (ps == after && pe == before)) return true;
  }
  return false;
}

std::optional<std::size_t> cocore_move(const AugmentedOpenBook& book, const Arc& gamma) {
  for (std::size_t j = 0; j < book.history.size(); ++j)
    if (is_cocore(book.surface, gamma, book.history[j].handle.core)) return j;
  return std::nullopt;
}

AugmentedOpenBook destabilize(const AugmentedOpenBook& book, const Arc& gamma) {
  const Arc g = canonicalize(gamma);
  const auto j = cocore_move(book, g);
  if (!j) throw Error("arc is not the co-core of a recorded stabilization handle");
  const StabilizationMove& move = book.history[*j];
  const int h = move.handle.core;

  // Locate the twist of this move in the word and check that it can be
  // commuted to the far left.
  const auto& word = book.monodromy.word();
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (band_crossings(word[i].curve.word, h) == 0) continue;
    if (at || band_crossings(word[i].curve.word, h) != 1 || word[i].power != move.sign ||
        !isotopic(word[i].curve, move.s_curve))
      throw Error("monodromy does not factor through the stabilization twist");
    at = i;
  }
  if (!at) throw Error("monodromy does not contain the stabilization twist");
  for (std::size_t i = 0; i < *at; ++i)
    if (!disjoint(book.surface, word[i].curve, move.s_curve))
      throw Error("stabilization twist does not commute to the left of the monodromy");

  for (const Arc& a : book.gamma)
    if (!(a == g) && band_crossings(a.word, h) != 0) throw Error("Γ crosses the handle");
  for (const Arc& a : book.l_system.arcs)
    if (band_crossings(a.word, h) != 0) throw Error("L crosses the handle");
  for (const ClosedCurve& c : book.l_system.closed)
    if (band_crossings(c.word, h) != 0) throw Error("L crosses the handle");

  CombSurface surface = book.surface.without_band(h).without_mark(g.start).without_mark(g.end);
  std::vector<TwistGenerator> w;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (i != *at) w.push_back({ClosedCurve{renumber_without(word[i].curve.word, h)}, word[i].power});

  AugmentedOpenBook out;
  out.surface = surface;
  out.monodromy = MappingClass(surface, std::move(w));
  for (const Arc& a : book.gamma)
    if (!(a == g)) out.gamma.push_back(Arc{a.start, a.end, renumber_without(a.word, h)});
  for (const Arc& a : book.l_system.arcs) out.l_system.arcs.push_back(Arc{a.start, a.end, renumber_without(a.word, h)});
  for (const ClosedCurve& c : book.l_system.closed) out.l_system.closed.push_back({renumber_without(c.word, h)});
  for (std::size_t i = 0; i < book.history.size(); ++i) {
    if (i == *j) continue;
    StabilizationMove m = book.history[i];
    if (m.handle.core == h) continue;
    if (band_crossings(m.s_curve.word, h) != 0 || band_crossings(m.sigma.word, h) != 0) continue;
    m.s_curve.word = renumber_without(m.s_curve.word, h);
    m.sigma.word = renumber_without(m.sigma.word, h);
    if (m.handle.core > h) --m.handle.core;
    out.history.push_back(m);
  }
  out.validate();
  return out;
}

AugmentedOpenBook legendrian_surgery(const AugmentedOpenBook& book) {
  if (book.l_system.closed.size() != 1 || !book.l_system.arcs.empty())
    throw Error("surgery needs L to be a single closed curve");
  const ClosedCurve& L = book.l_system.closed.front();
  if (!is_essential(L)) throw Error("surgery curve must be essential");
  AugmentedOpenBook out = book;
  out.monodromy = book.monodromy.after(L, 1);
  return out;
}

std::optional<StabilizationMove> recognize_stabilization(const AugmentedOpenBook& book) {
  const auto& word = book.monodromy.word();
  if (word.empty()) return std::nullopt;
  const Word s = cyclic_reduce(word.front().curve.word);
  if (std::abs(word.front().power) != 1) return std::nullopt;
  for (int h = 0; h < book.surface.band_count(); ++h) {
    if (band_crossings(s, h) != 1) continue;
    bool clear = true;
    for (std::size_t i = 1; i < word.size() && clear; ++i) clear = band_crossings(word[i].curve.word, h) == 0;
    for (const Arc& a : book.l_system.arcs) clear = clear && band_crossings(a.word, h) == 0;
    for (const ClosedCurve& c : book.l_system.closed) clear = clear && band_crossings(c.word, h) == 0;
    if (!clear) continue;
    // Rotate s so that it ends with the band letter, oriented +1 across it.
    Word r = s;
    const auto it = std::find_if(r.begin(), r.end(), [&](const Letter& l) { return l.band == h; });
    if (it->dir < 0) {
      r = inverse(r);
    }
    const auto jt = std::find_if(r.begin(), r.end(), [&](const Letter& l) { return l.band == h; });
    std::rotate(r.begin(), jt + 1, r.end());
    StabilizationMove m;
    m.handle.core = h;
    m.sigma.word = Word(r.begin(), r.end() - 1);
    m.s_curve.word = r;
    m.sign = word.front().power;
    return m;
  }
  return std::nullopt;
}

AugmentedOpenBook hopf_annulus(int sign) {
  CombSurface disc = CombSurface::build(0, 1);
  int a = -1, b = -1;
  disc = disc.with_mark_after(-1, &a);
  disc = disc.with_mark_after(0, &b);
  AugmentedOpenBook base(disc, MappingClass::identity(disc));
  return stabilize(base, Arc{a, b, {}}, sign).first;
}

}  // namespace obl
