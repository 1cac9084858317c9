#include <sstream>

#include "obl/consistency.hpp"

namespace obl {

namespace {

int region_arc(const Region& r) {
  for (const SignedPoint& p : r.corners)
    if (p.kind == SignedPoint::Kind::Interior) return p.gamma;
  throw Error("region has no interior corner");
}

bool misses(const AugmentedOpenBook& book, const CurveSystem& L) {
  const auto images = monodromy_images(book);
  for (const ClosedCurve& c : L.closed) {
    for (const Arc& g : book.gamma)
      if (geometric_intersection(book.surface, g, c) != 0) return false;
    for (const Arc& g : images)
      if (geometric_intersection(book.surface, g, c) != 0) return false;
  }
  return true;
}

std::vector<FactorStep> factor(const AugmentedOpenBook& post, const Certificate& cert, const ClosedCurve& L) {
  std::vector<FactorStep> out;
  MappingClass pre_side = post.monodromy.after(L, -1);
  ClosedCurve moved = L;
  AugmentedOpenBook book = cert.start;
  for (std::size_t j = 0; j < cert.steps.size(); ++j) {
    auto [next, move] = apply_step(book, cert.steps[j]);
    const CombSurface& s = next.surface;
    FactorStep f;
    f.move = static_cast<int>(j);
    f.masked = cert.mask[j];
    const ClosedCurve after = f.masked ? twist(s, move.s_curve, move.sign, moved) : moved;
    f.curve = f.masked ? move.s_curve : twist(s, moved, -1, move.s_curve);
    f.handle_crossings = band_crossings(f.curve.word, move.handle.core);
    const MappingClass lhs = next.monodromy.after(after, -1);
    const MappingClass rhs = pre_side.on(s).after(f.curve, move.sign);
    f.acts_equal = acts_equal(lhs, rhs);
    out.push_back(f);
    pre_side = rhs;
    moved = after;
    book = std::move(next);
  }
  return out;
}

}  // namespace

SurgeryReport surgery_tightness_check(const AugmentedOpenBook& pre, const std::vector<Arc>& basis,
                                      const SearchBudget& budget) {
  if (pre.l_system.closed.size() != 1 || !pre.l_system.arcs.empty())
    throw Error("surgery check needs L to be a single closed curve");
  SurgeryReport rep;
  rep.pre = pre;
  rep.post = legendrian_surgery(pre);
  rep.search = search(rep.post, basis, budget);
  if (!rep.search.certificate) {
    rep.conclusion = "no contradiction found: " + rep.search.report(budget);
    return rep;
  }
  const Certificate& cert = *rep.search.certificate;
  const ClosedCurve& L = pre.l_system.closed.front();

  // Shrink the region to a bigon.
  const Replay r = replay(cert);
  AugmentedOpenBook bigon = r.book;
  bigon.l_system = transport_curve_system(pre.l_system, r.moves, cert.mask, r.book.surface);
  Certificate cur = cert;
  AugmentedOpenBook against = rep.post;
  while (find_overtwisted_region(bigon).region->sides() > 2) {
    const RegionStep step = destabilize_region(cur, against);
    rep.destabilizations.push_back(step.book);
    bigon = step.book;
    cur = step.cert;
    against = step.book;
  }
  rep.degenerate = std::none_of(cert.mask.begin(), cert.mask.end(), [](bool b) { return b; }) &&
                   misses(bigon, bigon.l_system);

  // Destabilize the other arcs of Γ where they are co-cores, keep γ.
  const Region A = *find_overtwisted_region(bigon).region;
  Arc gamma = bigon.gamma[region_arc(A)];
  for (bool progress = true; progress;) {
    progress = false;
    for (const Arc& g : bigon.gamma) {
      if (g == gamma || !cocore_move(bigon, g)) continue;
      try {
        AugmentedOpenBook next = destabilize(bigon, g);
        const RegionVerdict v = find_overtwisted_region(next);
        if (!v.found || v.region->sides() != 2) continue;
        bigon = std::move(next);
        rep.destabilizations.push_back(bigon);
        progress = true;
        break;
      } catch (const Error&) {
      }
    }
  }

  AugmentedOpenBook left = bigon;
  left.gamma = {gamma};
  for (const ClosedCurve& c : bigon.l_system.closed) left.monodromy = left.monodromy.after(c, -1);
  rep.left_arc = gamma;
  rep.left_verdict = right_veering_at(left, gamma);
  rep.left_book = left;

  rep.factorization = factor(rep.post, cert, L);
  const bool factored = std::all_of(rep.factorization.begin(), rep.factorization.end(), [](const FactorStep& f) {
    return f.acts_equal && f.handle_crossings == 1;
  });
  rep.chain_complete = rep.left_verdict == Veering::Left && factored;
  if (rep.chain_complete)
    rep.conclusion =
        "witness chain complete: the pre-surgery book is overtwisted; were it tight, this chain would be a "
        "contradiction";
  else if (rep.left_verdict != Veering::Left)
    rep.conclusion = "witness chain incomplete: the bigon's arc is not mapped to the left";
  else
    rep.conclusion = "witness chain incomplete: a stabilization does not refactor";
  return rep;
}

std::string SurgeryReport::text() const {
  std::ostringstream os;
  os << "post-surgery search: " << (search.certificate ? "certificate found" : "no certificate") << '\n';
  if (search.certificate) {
    os << "stabilizations: " << search.certificate->steps.size() << '\n';
    os << "destabilizations: " << destabilizations.size() << '\n';
    if (left_arc)
      os << "arc " << left_arc->start << "->" << left_arc->end << " [" << word_text(left_arc->word)
         << "] veers " << veering_text(left_verdict) << " after undoing the twist about S'(L)\n";
    os << "factorization:";
    for (const FactorStep& f : factorization)
      os << ' ' << (f.masked ? "conj" : "refactor") << '(' << f.handle_crossings << (f.acts_equal ? ",ok" : ",FAIL")
         << ')';
    os << '\n';
    if (degenerate) os << "L misses the certificate: the plain negative-region path applies\n";
  }
  os << conclusion << '\n';
  return os.str();
}

}  // namespace obl
