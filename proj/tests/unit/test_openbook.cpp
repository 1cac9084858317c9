#include <doctest.h>

#include <random>

#include "obl/openbook.hpp"

using namespace obl;

namespace {

// Book on a surface with two marks per boundary component and a random
// word of twists about single-band curves.
AugmentedOpenBook random_book(std::mt19937& rng) {
  const int g = static_cast<int>(rng() % 2), b = 1 + static_cast<int>(rng() % 2);
  CombSurface s = CombSurface::build(g, b);
  for (int c = 0; c < b; ++c) s = s.with_marks_on_component(c, 2, nullptr);
  std::vector<TwistGenerator> word;
  for (int k = static_cast<int>(rng() % 3); k > 0 && s.band_count() > 0; --k)
    word.push_back({ClosedCurve{{{static_cast<int>(rng() % s.band_count()), 1}}}, rng() % 2 ? 1 : -1});
  return AugmentedOpenBook(s, MappingClass(s, word));
}

// Book with marks on either side of foot (band,-1) and the co-core between them.
std::pair<AugmentedOpenBook, Arc> with_cocore(const AugmentedOpenBook& book, int band) {
  CombSurface s = book.surface;
  int before = -1, after = -1;
  const int pos = s.foot_position(band, -1);
  s = s.with_mark_after(pos - 1, &before);
  s = s.with_mark_after(pos + 1, &after);
  AugmentedOpenBook out(s, book.monodromy.on(s), {}, book.l_system);
  out.history = book.history;
  return {out, Arc{before, after, {}}};
}

}  // namespace

TEST_CASE("Hopf annuli") {
  for (int sign : {-1, 1}) {
    const AugmentedOpenBook h = hopf_annulus(sign);
    CHECK(h.surface.genus() == 0);
    CHECK(h.surface.boundary_components() == 2);
    REQUIRE(h.history.size() == 1);
    CHECK(h.history[0].sign == sign);
    REQUIRE(h.monodromy.word().size() == 1);
    CHECK(h.monodromy.word()[0].power == sign);
    AugmentedOpenBook bare = h;
    bare.history.clear();
    const auto m = recognize_stabilization(bare);
    REQUIRE(m);
    CHECK(m->sign == sign);
    CHECK(m->handle.core == 0);
  }
}

TEST_CASE("stabilize then destabilize acts as the original on basis arcs") {
  std::mt19937 rng(21);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const AugmentedOpenBook book = random_book(rng);
    const auto marks = book.surface.marks();
    const int a = marks[rng() % marks.size()];
    int b = a;
    while (b == a) b = marks[rng() % marks.size()];
    const int sign = rng() % 2 ? 1 : -1;
    const auto [stab, move] = stabilize(book, Arc{a, b, {}}, sign);
    CHECK(move.sign == sign);
    CHECK(stab.surface.band_count() == book.surface.band_count() + 1);
    CHECK(band_crossings(move.s_curve.word, move.handle.core) == 1);
    CHECK(stab.monodromy.word().front() == TwistGenerator{move.s_curve, sign});
    const auto [marked, cocore] = with_cocore(stab, move.handle.core);
    CHECK(is_cocore(marked.surface, cocore, move.handle.core));
    REQUIRE(cocore_move(marked, cocore));
    const AugmentedOpenBook back = destabilize(marked, cocore);
    CHECK(back.surface.band_count() == book.surface.band_count());
    CHECK(back.surface.euler_characteristic() == book.surface.euler_characteristic());
    const Basis basis = standard_basis(book.surface);
    const Basis basis_back = standard_basis(back.surface);
    // Both surfaces are the original with marks added; compare on the
    // original's standard basis carried to each.
    REQUIRE(basis.arcs.size() == basis_back.arcs.size());
    for (std::size_t i = 0; i < basis.arcs.size(); ++i) {
      const Arc x = book.monodromy.on(basis.surface).apply(basis.arcs[i]);
      const Arc y = back.monodromy.on(basis_back.surface).apply(basis_back.arcs[i]);
      CHECK(x.word == y.word);
    }
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("images of Γ run backwards") {
  const AugmentedOpenBook h = hopf_annulus(1);
  const auto [book, cocore] = with_cocore(h, 0);
  AugmentedOpenBook withg = book;
  withg.gamma = {cocore};
  const Arc img = monodromy_image(withg, cocore);
  CHECK(img.start == cocore.end);
  CHECK(img.end == cocore.start);
  CHECK(monodromy_images(withg).size() == 1);
  const auto occ = occupied_marks(withg);
  CHECK(occ.size() == 2);
}

TEST_CASE("surgery composes a positive twist that an inverse twist undoes") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    AugmentedOpenBook book = random_book(rng);
    if (book.surface.band_count() == 0) continue;
    const ClosedCurve L{{{static_cast<int>(rng() % book.surface.band_count()), 1}}};
    book.l_system.closed = {L};
    const AugmentedOpenBook post = legendrian_surgery(book);
    CHECK(post.monodromy.word().front() == TwistGenerator{L, 1});
    CHECK(acts_equal(post.monodromy.after(L, -1), book.monodromy));
  }
  AugmentedOpenBook bad = hopf_annulus(1);
  CHECK_THROWS_AS(legendrian_surgery(bad), Error);
  bad.l_system.closed = {ClosedCurve{}};
  CHECK_THROWS_AS(legendrian_surgery(bad), Error);
}

TEST_CASE("destabilization needs a recorded co-core") {
  const AugmentedOpenBook h = hopf_annulus(-1);
  auto [book, cocore] = with_cocore(h, 0);
  book.history.clear();
  CHECK_THROWS_AS(destabilize(book, cocore), Error);
  const auto [marked, c2] = with_cocore(h, 0);
  CHECK_THROWS_AS(destabilize(marked, Arc{c2.start, c2.end, {{0, 1}}}), Error);
}

TEST_CASE("stabilizing arcs must be embedded with distinct ends") {
  std::vector<int> ms;
  const CombSurface s = CombSurface::build(0, 1).with_marks_on_component(0, 2, &ms);
  const AugmentedOpenBook book(s, MappingClass::identity(s));
  CHECK_THROWS_AS(stabilize(book, Arc{ms[0], ms[0], {}}), Error);
}

TEST_CASE("Γ is validated") {
  std::vector<int> ms;
  const CombSurface s = CombSurface::build(0, 2).with_marks_on_component(0, 2, &ms);
  AugmentedOpenBook book(s, MappingClass::identity(s));
  book.gamma = {Arc{ms[0], ms[1], {}}, Arc{ms[0], ms[1], {}}};
  CHECK_THROWS_AS(book.validate(), Error);
}
