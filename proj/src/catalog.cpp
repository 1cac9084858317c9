#include "obl/catalog.hpp"

#include "obl/io.hpp"

namespace obl {

std::string expected_text(Expected e) {
  return e == Expected::CertificateFound ? "certificate-found" : "no-certificate-at-budget";
}

namespace {

SearchBudget budget(int depth, int multiplicity) {
  SearchBudget b;
  b.max_stabilizations = depth;
  b.max_multiplicity = multiplicity;
  return b;
}

AugmentedOpenBook on_basis(const AugmentedOpenBook& book) {
  const Basis B = standard_basis(book.surface);
  AugmentedOpenBook out(B.surface, book.monodromy.on(B.surface), {}, book.l_system);
  out.history = book.history;
  return out;
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  auto add = [&](std::string name, const AugmentedOpenBook& book, Expected e, SearchBudget b, std::string note,
                 bool surgery = false) {
    out.push_back({std::move(name), format_book(book), e, b, std::move(note), surgery});
  };

  CombSurface disc = CombSurface::build(0, 1);
  int a = -1, c = -1;
  disc = disc.with_mark_after(-1, &a);
  disc = disc.with_mark_after(0, &c);
  add("disc-id", AugmentedOpenBook(disc, MappingClass::identity(disc), {Arc{a, c, {}}}), Expected::NoCertificate,
      budget(4, 2), "disc with the identity; the arc is fixed, so no region exists");

  const AugmentedOpenBook neg = hopf_annulus(-1);
  const AugmentedOpenBook pos = hopf_annulus(1);
  add("annulus-tau-inverse", neg, Expected::CertificateFound, budget(3, 1),
      "negative Hopf band; one positive stabilization gives a bigon");
  add("annulus-tau-plus", pos, Expected::NoCertificate, budget(4, 2), "positive Hopf band, tight");

  {
    const AugmentedOpenBook b = on_basis(neg);
    const Basis B = standard_basis(neg.surface);
    const Certificate cert = negative_stab_bigon(b, B.arcs.front());
    add("annulus-neg-stabilized-3x", replay(cert).book, Expected::CertificateFound, budget(0, 1),
        "negative Hopf band after the three stabilizations, with the bigon's arc as Γ");
  }

  const CombSurface torus = CombSurface::build(1, 1);
  const ClosedCurve ta{{{0, 1}}}, tb{{{1, 1}}};
  const std::vector<std::pair<std::string, std::vector<TwistGenerator>>> products = {
      {"torus-a", {{ta, 1}}},
      {"torus-a-b", {{ta, 1}, {tb, 1}}},
      {"torus-a-b-a", {{ta, 1}, {tb, 1}, {ta, 1}}},
  };
  for (const auto& [name, word] : products)
    add(name, AugmentedOpenBook(torus, MappingClass(torus, word)), Expected::NoCertificate, budget(4, 2),
        "once-punctured torus, product of positive twists");

  const CombSurface annulus = CombSurface::build(0, 2);
  const ClosedCurve core{{{0, 1}}};
  add("surgery-annulus-id", AugmentedOpenBook(annulus, MappingClass::identity(annulus), {}, CurveSystem{{}, {core}}),
      Expected::NoCertificate, budget(4, 2), "surgery on the core of (annulus, id) gives the positive Hopf band",
      true);
  add("surgery-annulus-tau-inverse-squared",
      AugmentedOpenBook(annulus, MappingClass(annulus, {{core, -2}}), {}, CurveSystem{{}, {core}}),
      Expected::CertificateFound, budget(3, 1),
      "overtwisted before surgery; the surgered book is the negative Hopf band", true);
  const CombSurface pants = CombSurface::build(0, 3);
  const ClosedCurve c0{{{0, 1}}}, c1{{{1, 1}}};
  add("surgery-pants-disjoint", AugmentedOpenBook(pants, MappingClass(pants, {{c0, -1}}), {}, CurveSystem{{}, {c1}}),
      Expected::CertificateFound, budget(3, 1), "L misses the certificate, the mask is empty", true);
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog())
    if (e.name == name) return e;
  throw Error("no catalog entry named '" + name + "'");
}

SearchInput search_input(const AugmentedOpenBook& book) {
  if (!book.gamma.empty()) return {book, book.gamma};
  const Basis B = standard_basis(book.surface);
  AugmentedOpenBook out(B.surface, book.monodromy.on(B.surface), {}, book.l_system);
  out.history = book.history;
  return {out, B.arcs};
}

}  // namespace obl
