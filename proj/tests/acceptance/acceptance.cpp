// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "../unit/oracle.hpp"
#include "obl/catalog.hpp"
#include "obl/io.hpp"

using namespace obl;

namespace {

constexpr double kDetectionSeconds = 5;
constexpr double kControlsSeconds = 60;
constexpr double kSurgerySeconds = 30;
constexpr int kRandomInstances = 100;
constexpr int kStabilizationsPerBook = 10;
constexpr int kPinchedSystems = 10;
constexpr int kSlideSteps = 6;
constexpr int kOraclePairs = 1000;
constexpr int kOracleWordLength = 6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

SearchBudget budget(int depth, int m) {
  SearchBudget b;
  b.max_stabilizations = depth;
  b.max_multiplicity = m;
  b.time_cap = std::chrono::milliseconds(120000);
  return b;
}

SearchInput entry(const std::string& name) { return search_input(parse_book(catalog_entry(name).stanza)); }

// Negative Hopf band with the co-core γ between marks m1, m2, and marks for
// L arcs beside them: ring h0+ p2 m1 h0- m2 q1 q2 p1.
struct NegativeBand {
  AugmentedOpenBook book;
  Arc gamma;
  int p1 = -1, p2 = -1, q1 = -1, q2 = -1;
};

NegativeBand negative_band() {
  const AugmentedOpenBook h = hopf_annulus(-1);
  NegativeBand nb;
  CombSurface s = h.surface;
  int m1 = -1, m2 = -1;
  s = s.with_mark_after(0, &m1);
  s = s.with_mark_after(2, &m2);
  s = s.with_mark_after(static_cast<int>(s.ring().size()) - 1, &nb.p1);
  s = s.with_mark_after(s.mark_position(m1) - 1, &nb.p2);
  s = s.with_mark_after(s.mark_position(m2), &nb.q1);
  s = s.with_mark_after(s.mark_position(nb.q1), &nb.q2);
  nb.book = AugmentedOpenBook(s, h.monodromy.on(s));
  nb.book.history = h.history;
  nb.gamma = Arc{m1, m2, {}};
  return nb;
}

std::vector<CurveSystem> test_systems(const NegativeBand& nb) {
  const ClosedCurve core{{{0, 1}}};
  return {
      CurveSystem{},
      CurveSystem{{}, {core}},
      CurveSystem{{Arc{nb.p2, nb.p1, {}}}, {}},
      CurveSystem{{Arc{nb.p2, nb.p1, {{0, 1}}}}, {}},
      CurveSystem{{Arc{nb.q1, nb.q2, {}}}, {core}},
  };
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const NegativeBand nb = negative_band();
  int good = 0;
  std::string why;
  int index = 0;
  for (const CurveSystem& L : test_systems(nb)) {
    ++index;
    try {
      const Certificate c = negative_stab_bigon(nb.book, nb.gamma, L);
      const Replay r = replay(c);
      const RegionVerdict v = find_overtwisted_region(r.book);
      const CurveSystem moved = transport_curve_system(L, r.moves, c.mask, r.book.surface);
      std::string failed;
      if (c.steps.size() != 3) failed = "step count";
      else if (!v.found || v.region->sides() != 2) failed = "no bigon";
      else if (L.empty() ? c.proper_for.has_value() : c.proper_for != L) failed = "curve system not recorded";
      else if (!is_proper(*v.region, r.book, moved)) failed = "bigon not proper";
      else if (const VerifyResult vr = verify(nb.book, c); !vr.ok) failed = "verify: " + vr.reason;
      good += failed.empty();
      if (!failed.empty() && why.empty()) why = "system " + std::to_string(index) + ": " + failed;
    } catch (const Error& e) {
      if (why.empty()) why = "system " + std::to_string(index) + ": " + e.what();
    }
  }
  const double t = seconds_since(t0);
  return {good == 5 && t < kDetectionSeconds,
          std::to_string(good) + "/5 curve systems: 3 stabilizations, proper bigon, verified; " + secs(t) +
              (why.empty() ? "" : "; " + why)};
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  int clean = 0;
  std::string why;
  for (const std::string name : {"disc-id", "annulus-tau-plus", "torus-a", "torus-a-b", "torus-a-b-a"}) {
    const SearchInput in = entry(name);
    const SearchResult r = search(in.book, in.basis, budget(4, 2));
    const bool ok = !r.certificate && !r.timed_out && r.depth_completed == 4;
    clean += ok;
    if (!ok && why.empty()) why = name + (r.certificate ? ": certificate found" : ": budget not exhausted");
  }
  const double t = seconds_since(t0);
  return {clean == 5 && t < kControlsSeconds,
          std::to_string(clean) + "/5 tight books without certificate at depth 4, multiplicity 2; " + secs(t) +
              (why.empty() ? "" : "; " + why)};
}

Outcome criterion3() {
  const NegativeBand nb = negative_band();
  const AugmentedOpenBook bigon = replay(negative_stab_bigon(nb.book, nb.gamma)).book;
  std::vector<AugmentedOpenBook> ladder{bigon};
  std::string detail;
  bool pass = true;
  for (int n = 2; n <= 4; ++n) {
    const auto up = inverse_destabilization(ladder.back());
    if (!up) return {false, "no inverse destabilization to a " + std::to_string(2 * n) + "-gon"};
    ladder.push_back(up->book);
    AugmentedOpenBook cur = up->book;
    Certificate cert = certificate_of(cur);
    int sides = find_overtwisted_region(cur).region->sides();
    bool rung = sides == 2 * n;
    int steps = 0;
    while (rung && sides > 2) {
      const RegionStep step = destabilize_region(cert, cur);
      const int next = find_overtwisted_region(step.book).region->sides();
      rung = next == sides - 2;
      sides = next;
      cur = step.book;
      cert = step.cert;
      ++steps;
    }
    rung = rung && steps == n - 1 && verify(cur, cert).ok && is_proper(*find_overtwisted_region(cur).region, cur, cur.l_system);
    pass = pass && rung;
    detail += (detail.empty() ? "" : ", ") + std::to_string(2 * n) + "-gon in " + std::to_string(steps) +
              (rung ? " steps" : " steps (FAILED)");
  }
  return {pass, detail + " to a verified proper bigon"};
}

// Random closed curve: a band core moved by twists about other cores,
// avoiding `avoid` (-1 for none).
ClosedCurve random_curve(std::mt19937& rng, const CombSurface& s, int avoid) {
  std::vector<int> bands;
  for (int b = 0; b < s.band_count(); ++b)
    if (b != avoid) bands.push_back(b);
  ClosedCurve c{{{bands[rng() % bands.size()], 1}}};
  for (int k = static_cast<int>(rng() % 3); k > 0; --k)
    c = twist(s, ClosedCurve{{{bands[rng() % bands.size()], 1}}}, rng() % 2 ? 1 : -1, c);
  return c;
}

MappingClass random_class(std::mt19937& rng, const CombSurface& s) {
  std::vector<TwistGenerator> w;
  for (int k = 1 + static_cast<int>(rng() % 4); k > 0; --k)
    w.push_back({ClosedCurve{{{static_cast<int>(rng() % s.band_count()), 1}}}, rng() % 2 ? 1 : -1});
  return MappingClass(s, w);
}

CombSurface random_surface(std::mt19937& rng) {
  static const std::vector<std::pair<int, int>> shapes{{0, 2}, {0, 3}, {1, 1}, {1, 2}, {0, 4}, {2, 1}, {1, 3}, {0, 5}, {2, 2}, {1, 4}, {0, 6}};
  const auto [g, b] = shapes[rng() % shapes.size()];
  return CombSurface::build(g, b);
}

Outcome criterion4() {
  std::mt19937 rng(2024);
  int conj_fail = 0, refactor_fail = 0;
  for (int i = 0; i < kRandomInstances; ++i) {
    const CombSurface s = random_surface(rng);
    const MappingClass psi = random_class(rng, s);
    const ClosedCurve L = random_curve(rng, s, -1);
    const MappingClass lhs = compose(compose(psi, MappingClass::twist(s, L)), invert(psi));
    const MappingClass rhs = MappingClass::twist(s, psi.apply(L));
    conj_fail += !acts_equal(lhs, rhs);
    if (!acts_equal(conjugate_twist(psi, L), rhs)) ++conj_fail;
  }
  for (int i = 0; i < kRandomInstances; ++i) {
    CombSurface s = random_surface(rng);
    if (s.band_count() < 2) s = CombSurface::build(0, 3);
    const int h = static_cast<int>(rng() % s.band_count());
    const MappingClass phi = random_class(rng, s);
    const ClosedCurve L = random_curve(rng, s, h);
    ClosedCurve sc{{{h, 1}}};
    for (int k = static_cast<int>(rng() % 3); k > 0; --k) sc = twist(s, random_curve(rng, s, h), rng() % 2 ? 1 : -1, sc);
    const RefactorWitness w = refactor_stabilization(phi, sc, L, h);
    const MappingClass direct = phi.after(sc, 1).after(L, -1);
    const MappingClass refactored = phi.after(L, -1).after(twist(s, L, -1, sc), 1);
    const bool ok = w.handle_crossings == 1 && band_crossings(w.shifted.word, h) == 1 &&
                    acts_equal(w.direct, w.refactored) && acts_equal(direct, w.direct) &&
                    acts_equal(refactored, w.refactored) && acts_equal(direct, refactored);
    refactor_fail += !ok;
  }
  return {conj_fail == 0 && refactor_fail == 0,
          std::to_string(kRandomInstances) + " conjugation instances, " + std::to_string(conj_fail) + " failures; " +
              std::to_string(kRandomInstances) + " refactorings, " + std::to_string(refactor_fail) + " failures"};
}

}  // namespace

namespace {

Outcome criterion5() {
  std::mt19937 rng(35);
  struct Source {
    std::string name;
    bool surgered;
  };
  int total = 0, good = 0;
  std::string why;
  for (const Source src : {Source{"annulus-tau-inverse", false}, Source{"annulus-neg-stabilized-3x", false},
                           Source{"surgery-annulus-tau-inverse-squared", true},
                           Source{"surgery-pants-disjoint", true}}) {
    const CatalogEntry& e = catalog_entry(src.name);
    SearchInput in = entry(src.name);
    if (src.surgered) {
      in.book = legendrian_surgery(in.book);
      in.book.l_system = {};
    }
    const SearchResult r = search(in.book, in.basis, e.budget);
    if (!r.certificate) {
      why = src.name + ": no certificate to transport";
      continue;
    }
    const auto candidates = stabilizations_avoiding(*r.certificate, 1);
    for (int k = 0; k < kStabilizationsPerBook; ++k) {
      ++total;
      if (candidates.empty()) continue;
      const StabStep sigma = candidates[rng() % candidates.size()];
      try {
        const StabilizedCertificate t = transport_certificate_across_stabilization(*r.certificate, sigma);
        const bool ok = static_cast<int>(t.cert.steps.size()) <= e.budget.max_stabilizations + 2 &&
                        t.book.surface.band_count() == r.certificate->start.surface.band_count() + 1 &&
                        verify(t.book, t.cert).ok;
        good += ok;
      } catch (const Error& ex) {
        if (why.empty()) why = src.name + ": " + ex.what();
      }
    }
  }
  // Certificates proper for random curve systems keep properness.
  const NegativeBand nb = negative_band();
  const ClosedCurve core{{{0, 1}}}, back{{{0, -1}}};
  const std::vector<CurveSystem> pool{
      {{}, {core}},
      {{}, {back}},
      {{Arc{nb.p2, nb.p1, {}}}, {}},
      {{Arc{nb.p1, nb.p2, {}}}, {}},
      {{Arc{nb.p2, nb.p1, {{0, 1}}}}, {}},
      {{Arc{nb.q1, nb.q2, {}}}, {core}},
      {{Arc{nb.q2, nb.q1, {}}}, {back}},
      {{Arc{nb.q1, nb.q2, {}}, Arc{nb.p2, nb.p1, {}}}, {}},
  };
  int pinched = 0;
  for (int k = 0; k < kPinchedSystems; ++k) {
    const CurveSystem L = pool[rng() % pool.size()];
    try {
      const Certificate c = negative_stab_bigon(nb.book, nb.gamma, L);
      const auto candidates = stabilizations_avoiding(c, 1);
      if (candidates.empty()) continue;
      const StabilizedCertificate t =
          transport_certificate_across_stabilization(c, candidates[rng() % candidates.size()]);
      pinched += t.cert.proper_for && t.cert.proper_for->arcs.size() == L.arcs.size() &&
                 t.cert.proper_for->closed.size() == L.closed.size() && verify(t.book, t.cert).ok;
    } catch (const Error& ex) {
      if (why.empty()) why = std::string("pinching: ") + ex.what();
    }
  }
  return {good == total && total == 4 * kStabilizationsPerBook && pinched == kPinchedSystems,
          std::to_string(good) + "/" + std::to_string(total) + " stabilized certificates verified within budget+2; " +
              std::to_string(pinched) + "/" + std::to_string(kPinchedSystems) + " curve systems stay proper" +
              (why.empty() ? "" : "; " + why)};
}

Outcome criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const CombSurface annulus = CombSurface::build(0, 2);
  int m1 = -1, m2 = -1;
  CombSurface s = annulus.with_mark_after(0, &m1);
  s = s.with_mark_after(static_cast<int>(s.ring().size()) - 1, &m2);
  const AugmentedOpenBook stab = stabilize(AugmentedOpenBook(s, MappingClass(s, {})), Arc{m1, m2, {}}, -1).first;
  int p = -1, q = -1, u = -1, v = -1;
  CombSurface t = stab.surface;
  t = t.with_mark_after(t.foot_position(1, 1), &q);
  t = t.with_mark_after(t.foot_position(1, 1) - 1, &p);
  t = t.with_mark_after(t.foot_position(0, 1), &v);
  t = t.with_mark_after(t.foot_position(0, 1) - 1, &u);
  AugmentedOpenBook book(t, stab.monodromy.on(t));
  book.history = stab.history;
  const Arc g{p, q, {}}, c0{u, v, {}};
  if (t.genus() != 1 || t.boundary_components() != 1 || !is_basis(t, {g, c0}))
    return {false, "planted basis on the punctured torus is not a basis"};
  Certificate cert = negative_stab_bigon(book, g);
  if (!verify(book, cert).ok) return {false, "planted certificate does not verify"};
  std::vector<Arc> extra{c0};
  int done = 0;
  for (int step = 1; step <= kSlideSteps; ++step) {
    bool moved = false;
    std::vector<Arc> coll = cert.start.gamma;
    coll.insert(coll.end(), extra.begin(), extra.end());
    for (int i = 0; i < static_cast<int>(cert.start.gamma.size()) && !moved; ++i) {
      for (const auto& [surface, move] : arc_slide_moves(cert.start.surface, coll, i)) {
        if (!is_arc_slide_domain(surface, coll, move)) continue;
        try {
          const Certificate next = transport_certificate_across_slide(rebase_certificate(cert, surface), move, book);
          if (!verify(book, next).ok) continue;
          cert = next;
          extra.clear();
          moved = true;
          break;
        } catch (const Error&) {
        }
      }
    }
    if (!moved) break;
    ++done;
  }
  return {done == kSlideSteps, std::to_string(done) + "/" + std::to_string(kSlideSteps) +
                                   " arc slides transported with verifying certificates; " + secs(seconds_since(t0))};
}

Outcome criterion7() {
  std::mt19937 rng(77);
  int checked = 0, mismatches = 0, not_idempotent = 0;
  for (auto [g, b] : std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 1}, {1, 2}, {0, 4}, {2, 1}}) {
    CombSurface s = CombSurface::build(g, b);
    for (int c = 0; c < b; ++c) s = s.with_marks_on_component(c, 2, nullptr);
    const auto marks = s.marks();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(marks.size()) - 1), len(0, kOracleWordLength);
    for (int trial = 0; trial < 2500; ++trial) {
      const Arc a{marks[pick(rng)], marks[pick(rng)], oracle::random_word(rng, s.band_count(), len(rng))};
      const Arc c{marks[pick(rng)], marks[pick(rng)], oracle::random_word(rng, s.band_count(), len(rng))};
      if (a.start == a.end || c.start == c.end) continue;
      if (oracle::min_self_crossings(s, oracle::path(a)) != 0 || oracle::min_self_crossings(s, oracle::path(c)) != 0)
        continue;
      const int want = oracle::min_crossings(s, oracle::path(a), oracle::path(c));
      if (want < 0) continue;
      ++checked;
      mismatches += geometric_intersection(s, a, c) != want;
      not_idempotent += canonicalize(canonicalize(a)) != canonicalize(a) || canonicalize(canonicalize(c)) != canonicalize(c);
    }
  }
  return {checked >= kOraclePairs && mismatches == 0 && not_idempotent == 0,
          std::to_string(checked) + " arc pairs (words up to length " + std::to_string(kOracleWordLength) +
              ", chi >= -3): " + std::to_string(mismatches) + " mismatches, " + std::to_string(not_idempotent) +
              " non-idempotent canonical forms"};
}

Outcome criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  const SearchBudget b = budget(4, 2);
  const SearchInput id = entry("surgery-annulus-id");
  const SurgeryReport a = surgery_tightness_check(id.book, id.basis, b);
  const bool one = !a.search.certificate && a.conclusion.rfind("no contradiction found", 0) == 0;

  const SearchInput ot = entry("surgery-annulus-tau-inverse-squared");
  const SurgeryReport r = surgery_tightness_check(ot.book, ot.basis, b);
  bool factored = !r.factorization.empty();
  for (const FactorStep& f : r.factorization) factored = factored && f.acts_equal && f.handle_crossings == 1;
  const bool two = r.search.certificate && r.left_arc && r.left_verdict == Veering::Left && factored &&
                   r.chain_complete && r.conclusion.rfind("witness chain complete", 0) == 0;

  const SearchInput pants = entry("surgery-pants-disjoint");
  const SurgeryReport c = surgery_tightness_check(pants.book, pants.basis, b);
  const bool empty_mask = c.search.certificate &&
                          std::none_of(c.search.certificate->mask.begin(), c.search.certificate->mask.end(),
                                       [](bool x) { return x; });
  const bool three = c.degenerate && empty_mask;
  const double t = seconds_since(t0);
  return {one && two && three && t < kSurgerySeconds,
          std::string("id: ") + (one ? "no contradiction" : "WRONG") + "; tau^-2: " +
              (two ? "complete witness chain" : "INCOMPLETE") + "; disjoint L: " +
              (three ? "degenerate, empty mask" : "WRONG") + "; " + secs(t)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"negative-stabilization detection", criterion1},
      {"tight negative controls", criterion2},
      {"region ladder", criterion3},
      {"conjugation and refactoring identities", criterion4},
      {"stabilization invariance", criterion5},
      {"basis independence", criterion6},
      {"oracle equivalence", criterion7},
      {"surgery pipeline", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
