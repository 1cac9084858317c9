#include <array>
#include <algorithm>
#include <set>

#include "obl/consistency.hpp"
#include "obl/drawing.hpp"

namespace obl {

namespace {

std::vector<Strand> strands_of(const std::vector<Arc>& arcs) {
  std::vector<Strand> out;
  for (const Arc& a : arcs) out.push_back(strand_of(a));
  return out;
}

bool disjoint_simple(const Drawing& d) {
  const int n = static_cast<int>(d.strands().size());
  for (int i = 0; i < n; ++i) {
    if (d.self_crossings(i) != 0) return false;
    for (int j = i + 1; j < n; ++j)
      if (d.crossing_count(i, j) != 0) return false;
  }
  return true;
}

int index_of(const std::vector<Arc>& arcs, const Arc& a) {
  const auto it = std::find(arcs.begin(), arcs.end(), a);
  return it == arcs.end() ? -1 : static_cast<int>(it - arcs.begin());
}

// Fresh mark on the side `after` (or before) of an existing mark.
CombSurface add_mark_beside(const CombSurface& s, int mark, bool after, int* created) {
  const int n = static_cast<int>(s.ring().size());
  const int p = s.mark_position(mark);
  return s.with_mark_after(after ? p : (p + n - 1) % n, created);
}

}  // namespace

bool is_basis(const CombSurface& s, const std::vector<Arc>& arcs) {
  for (const Arc& a : arcs) validate_on(s, a);
  const Drawing d(s, strands_of(arcs));
  if (!disjoint_simple(d)) return false;
  const auto faces = d.faces();
  return faces.size() == 1 && faces.front().is_disc();
}

bool is_arc_slide_domain(const CombSurface& s, const std::vector<Arc>& arcs, const ArcSlideMove& move) {
  std::vector<Arc> all = arcs;
  if (index_of(all, move.added) < 0) all.push_back(move.added);
  const int i = index_of(all, move.slid), j = index_of(all, move.along), k = index_of(all, move.added);
  if (i < 0 || j < 0 || i == j || k == i || k == j) return false;
  for (const Arc& a : all) validate_on(s, a);
  const Drawing d(s, strands_of(all));
  if (!disjoint_simple(d)) return false;
  const std::set<int> want{i, j, k};
  for (const Face& f : d.faces()) {
    if (!f.is_disc()) continue;
    const auto& runs = f.cycles.front().strands;
    if (runs.size() == 3 && std::set<int>(runs.begin(), runs.end()) == want) return true;
  }
  return false;
}

std::vector<Arc> arc_slide(const CombSurface& s, const std::vector<Arc>& basis, const ArcSlideMove& move) {
  if (!is_basis(s, basis)) throw Error("arc slide needs a basis");
  const int i = index_of(basis, move.slid);
  if (i < 0 || index_of(basis, move.along) < 0) throw Error("slide arcs are not in the basis");
  if (!is_arc_slide_domain(s, basis, move)) throw Error("not an arc-slide domain");
  std::vector<Arc> out = basis;
  out[i] = move.added;
  if (!is_basis(s, out)) throw Error("slide result is not a basis");
  return out;
}

std::vector<std::pair<CombSurface, ArcSlideMove>> arc_slide_moves(const CombSurface& s, const std::vector<Arc>& arcs,
                                                                   int slid) {
  if (slid < 0 || slid >= static_cast<int>(arcs.size())) throw Error("slid arc index out of range");
  std::vector<Word> middles{{}};
  for (int b = 0; b < s.band_count(); ++b) {
    middles.push_back({Letter{b, 1}});
    middles.push_back({Letter{b, -1}});
  }
  std::vector<std::pair<CombSurface, ArcSlideMove>> out;
  std::set<std::pair<std::string, std::vector<int>>> seen;
  for (int j = 0; j < static_cast<int>(arcs.size()); ++j) {
    if (j == slid) continue;
    for (bool flip1 : {false, true})
      for (bool flipa : {false, true}) {
        const Arc g1 = flip1 ? arcs[slid].reversed() : arcs[slid];
        const Arc ga = flipa ? arcs[j].reversed() : arcs[j];
        for (const Word& mid : middles) {
          Word w = g1.word;
          w.insert(w.end(), mid.begin(), mid.end());
          w.insert(w.end(), ga.word.begin(), ga.word.end());
          w = reduce(w);
          for (bool after_start : {false, true})
            for (bool after_end : {false, true}) {
              int a = -1, b = -1;
              CombSurface t = add_mark_beside(s, g1.start, after_start, &a);
              t = add_mark_beside(t, ga.end, after_end, &b);
              const ArcSlideMove move{arcs[slid], arcs[j], Arc{a, b, w}};
              try {
                if (!is_arc_slide_domain(t, arcs, move)) continue;
              } catch (const Error&) {
                continue;
              }
              // One representative per resulting arc position.
              auto key = std::make_pair(word_text(w) + t.ring_text(), std::vector<int>{j, t.mark_position(a),
                                                                                        t.mark_position(b)});
              if (!seen.insert(key).second) continue;
              out.emplace_back(t, move);
            }
        }
      }
  }
  return out;
}

std::vector<StabStep> rebase_steps(const AugmentedOpenBook& old_start, const AugmentedOpenBook& new_start,
                                   const std::vector<StabStep>& steps, bool past_new) {
  AugmentedOpenBook a = old_start, b = new_start;
  const int base = old_start.surface.band_count();
  const int shift = new_start.surface.band_count() - base;
  auto map_band = [&](int band) { return band >= base ? band + shift : band; };
  std::vector<StabStep> out;
  for (const StabStep& step : steps) {
    auto map_gap = [&](int gap) {
      RingItem item = a.surface.ring().at(gap);
      if (item.is_foot()) item.id = map_band(item.id);
      const auto& ring = b.surface.ring();
      const int n = static_cast<int>(ring.size());
      int pos = static_cast<int>(std::find(ring.begin(), ring.end(), item) - ring.begin());
      if (pos == n && item.is_mark())
        for (std::size_t h = old_start.history.size(); h < new_start.history.size(); ++h) {
          const HandleAttachment& att = new_start.history[h].handle;
          if (att.foot_a != item.id && att.foot_b != item.id) continue;
          pos = b.surface.foot_position(att.core, att.foot_a == item.id ? 1 : -1);
        }
      if (pos == n) throw Error("rebased surface lost a ring item");
      while (past_new) {
        const RingItem& next = ring[(pos + 1) % n];
        if (!next.is_mark() || a.surface.has_mark(next.id)) break;
        pos = (pos + 1) % n;
      }
      return pos;
    };
    Word word = step.word;
    for (Letter& l : word) l.band = map_band(l.band);
    StabStep moved{map_gap(step.gap_a), map_gap(step.gap_b), word, step.sign};
    a = apply_step(a, step).first;
    b = apply_step(b, moved).first;
    out.push_back(std::move(moved));
  }
  return out;
}

Certificate rebase_certificate(const Certificate& cert, const CombSurface& wider) {
  Certificate out = cert;
  out.start.surface = wider;
  out.start.monodromy = cert.start.monodromy.on(wider);
  if (!compatible_start(cert.start, out.start)) throw Error("surface is not the start surface with extra marks");
  out.steps = rebase_steps(cert.start, out.start, cert.steps, true);
  return out;
}

namespace {

std::vector<int> gaps_near(const CombSurface& s, int mark, int depth) {
  std::vector<int> out;
  for (int d = 1; d <= depth; ++d) {
    out.push_back(gap_before(s, mark, d));
    out.push_back(gap_after(s, mark, d));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Stabilizing arcs along `word` with ends near the ends of `anchor`, crossing
// each of `cross` exactly once.
std::vector<StabStep> crossing_steps(const AugmentedOpenBook& book, const Arc& anchor, const Word& word,
                                     const std::vector<Arc>& cross, int depth) {
  std::vector<StabStep> out;
  for (int ga : gaps_near(book.surface, anchor.start, depth))
    for (int gb : gaps_near(book.surface, anchor.end, depth)) {
      const StabStep step{ga, gb, word, 1};
      try {
        const auto [t, marks] = insert_step_marks(book.surface, step);
        const Arc sigma{marks.first, marks.second, word};
        if (!word.empty() && Drawing(t, {strand_of(sigma)}).self_crossings(0) != 0) continue;
        const bool ok = std::all_of(cross.begin(), cross.end(),
                                    [&](const Arc& c) { return geometric_intersection(t, sigma, c) == 1; });
        if (ok) out.push_back(step);
      } catch (const Error&) {
      }
    }
  return out;
}

}  // namespace

Certificate transport_certificate_across_slide(const Certificate& cert, const ArcSlideMove& move,
                                               const AugmentedOpenBook& book, int depth) {
  if (const VerifyResult ok = verify(book, cert); !ok) throw Error("certificate does not verify: " + ok.reason);
  const AugmentedOpenBook& start = cert.start;
  const int slid = index_of(start.gamma, move.slid);
  if (slid < 0) throw Error("slid arc is not in the certificate's collection");
  std::vector<Arc> with_along = start.gamma;
  if (index_of(with_along, move.along) < 0) with_along.push_back(move.along);
  if (!is_arc_slide_domain(start.surface, with_along, move)) throw Error("slide is not an arc-slide domain of Γ");

  const std::array<int, 4> anchors{move.along.start, move.along.end, move.added.start, move.added.end};
  for (int sides = 0; sides < 16; ++sides)
    for (int flips = 0; flips < 4; ++flips) {
      CombSurface s = start.surface;
      std::array<int, 4> m{};
      for (int k = 0; k < 4; ++k) s = add_mark_beside(s, anchors[k], (sides >> k) & 1, &m[k]);
      Arc ga{m[0], m[1], move.along.word}, gb{m[2], m[3], move.added.word};
      if (flips & 1) ga = ga.reversed();
      if (flips & 2) gb = gb.reversed();
      std::vector<Arc> gamma = start.gamma;
      gamma.erase(gamma.begin() + slid);
      gamma.push_back(ga);
      gamma.push_back(gb);
      AugmentedOpenBook fresh;
      try {
        fresh = AugmentedOpenBook(s, start.monodromy.on(s), gamma, start.l_system);
      } catch (const Error&) {
        continue;
      }
      fresh.history = start.history;
      for (bool past_new : {true, false}) {
        Certificate out;
        out.start = fresh;
        AugmentedOpenBook cur;
        try {
          out.steps = rebase_steps(start, fresh, cert.steps, past_new);
          cur = replay(out).book;
        } catch (const Error&) {
          continue;
        }
        for (const StabStep& s1 : crossing_steps(cur, gb, gb.word, {ga, gb}, depth)) {
          const AugmentedOpenBook after1 = apply_step(cur, s1).first;
          const Arc ia = after1.monodromy.apply(ga), ib = after1.monodromy.apply(gb);
          for (const StabStep& s2 : crossing_steps(after1, ga, ia.word, {ia, ib}, depth)) {
            Certificate c = out;
            c.steps.push_back(s1);
            c.steps.push_back(s2);
            const Replay r = replay(c);
            RegionVerdict v;
            try {
              v = find_overtwisted_region_nothrow(r.book);
            } catch (const Error&) {
              continue;
            }
            if (!v.found) continue;
            c.region = v.region->canonical_corners();
            c.mask = cert.mask;
            c.mask.resize(c.steps.size(), false);
            if (cert.proper_for) {
              c.proper_for = cert.proper_for;
              const CurveSystem moved = transport_curve_system(*c.proper_for, r.moves, c.mask, r.book.surface);
              if (!is_proper(*v.region, r.book, moved)) {
                const auto mask = proper_mask(*v.region, r.book, r.moves, *c.proper_for);
                if (!mask) continue;
                c.mask = *mask;
              }
            }
            if (verify(book, c)) return c;
          }
        }
      }
    }
  throw Error("no transported certificate found for this slide");
}

}  // namespace obl

namespace obl {

std::vector<StabStep> stabilizations_avoiding(const Certificate& cert, int max_length) {
  const AugmentedOpenBook& start = cert.start;
  const auto start_images = monodromy_images(start);
  std::vector<Word> words{{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : words)
      if (static_cast<int>(w.size()) == len - 1)
        for (int band = 0; band < start.surface.band_count(); ++band)
          for (int dir : {1, -1}) {
            Word v = w;
            v.push_back({band, dir});
            if (is_reduced(v)) next.push_back(v);
          }
    words.insert(words.end(), next.begin(), next.end());
  }
  std::vector<Arc> avoid = start.gamma;
  avoid.insert(avoid.end(), start_images.begin(), start_images.end());
  avoid.insert(avoid.end(), start.l_system.arcs.begin(), start.l_system.arcs.end());

  std::vector<StabStep> out;
  const int n = static_cast<int>(start.surface.ring().size());
  for (int ga = 0; ga < n; ++ga)
    for (int gb = ga; gb < n; ++gb)
      for (const Word& w : words) {
        const auto [s, marks] = insert_step_marks(start.surface, {ga, gb, w, 1});
        const Arc sigma{marks.first, marks.second, w};
        if (!w.empty() && Drawing(s, {strand_of(sigma)}).self_crossings(0) != 0) continue;
        const bool clear = std::all_of(avoid.begin(), avoid.end(),
                                       [&](const Arc& x) { return geometric_intersection(s, sigma, x) == 0; }) &&
                           std::all_of(start.l_system.closed.begin(), start.l_system.closed.end(),
                                       [&](const ClosedCurve& c) { return geometric_intersection(s, sigma, c) == 0; });
        if (!clear) continue;
        out.push_back({ga, gb, w, 1});
      }
  return out;
}

}  // namespace obl

namespace obl {

StabilizedCertificate transport_certificate_across_stabilization(const Certificate& cert, const StabStep& sigma,
                                                                 int extra) {
  if (sigma.sign != 1) throw Error("only positive stabilizations are transported");
  StabilizedCertificate out;
  out.cert = cert;
  out.cert.start = apply_step(cert.start, sigma).first;
  out.book = out.cert.start;
  out.book.gamma.clear();
  out.book.l_system = {};
  for (bool past_new : {true, false}) {
    try {
      out.cert.steps = rebase_steps(cert.start, out.cert.start, cert.steps, past_new);
    } catch (const Error&) {
      continue;
    }
    if (verify(out.book, out.cert)) return out;
  }
  // Extend the re-indexed sequence by up to `extra` further stabilizations.
  out.cert.steps = rebase_steps(cert.start, out.cert.start, cert.steps, true);
  struct Partial {
    Certificate cert;
    AugmentedOpenBook book;
  };
  std::vector<Partial> frontier{{out.cert, replay(out.cert).book}};
  const auto base_images = monodromy_images(out.cert.start);
  for (int round = 0; round < extra; ++round) {
    std::vector<Partial> next;
    for (const Partial& p : frontier)
      for (const StabStep& step : candidate_steps(p.book, monodromy_images(p.book), base_images, 1)) {
        Partial q{p.cert, {}};
        try {
          q.book = apply_step(p.book, step).first;
        } catch (const Error&) {
          continue;
        }
        q.cert.steps.push_back(step);
        const RegionVerdict v = [&] {
          try {
            return find_overtwisted_region_nothrow(q.book);
          } catch (const Error&) {
            return RegionVerdict{};
          }
        }();
        if (v.found) {
          q.cert.region = v.region->canonical_corners();
          q.cert.mask.resize(q.cert.steps.size(), false);
          if (q.cert.proper_for) {
            const Replay r = replay(q.cert);
            const auto mask = proper_mask(*v.region, r.book, r.moves, *q.cert.proper_for);
            if (mask) q.cert.mask = *mask;
          }
          if (verify(out.book, q.cert)) {
            out.cert = q.cert;
            return out;
          }
        }
        q.cert.mask.resize(q.cert.steps.size(), false);
        next.push_back(std::move(q));
      }
    frontier = std::move(next);
  }
  throw Error("no certificate for the stabilized book within the extra stabilizations");
}

}  // namespace obl
